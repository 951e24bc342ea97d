"""Locating poles of dressed responses from a real pole condition."""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = ["find_poles", "merge_poles"]

N_SCAN = 2048
DEDUPE = 1e-8
ROOT_COLLAPSE = 1e-6


def _evaluate(condition: Callable, args: np.ndarray) -> np.ndarray:
    """Real part of ``condition`` on an array, falling back to a loop."""
    try:
        with np.errstate(all="ignore"):
            vals = np.asarray(condition(args), dtype=complex)
        if vals.shape == args.shape:
            return vals.real.astype(float)
    except (TypeError, ValueError):
        pass
    out = np.empty(args.shape, dtype=float)
    for i, a in enumerate(args):
        with np.errstate(all="ignore"):
            out[i] = complex(condition(a)).real
    return out


def _bisect(g: Callable[[float], float], a: float, b: float, ga: float, gb: float):
    """Shrink a sign-change bracket to adjacent floats.

    Returns the final bracket and the values at its ends.  Non-finite
    midpoints are nudged toward the left end.
    """
    for _ in range(400):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        gm = g(mid)
        if not math.isfinite(gm):
            for frac in (0.25, 0.125, 0.375, 0.0625):
                mid = a + frac * (b - a)
                if mid <= a:
                    break
                gm = g(mid)
                if math.isfinite(gm):
                    break
            if not math.isfinite(gm):
                return a, b, ga, gb
        if gm == 0:
            return mid, mid, 0.0, 0.0
        if (gm < 0) == (ga < 0):
            a, ga = mid, gm
        else:
            b, gb = mid, gm
    return a, b, ga, gb


def _bisect_many(gvec: Callable, g: Callable, a, b, ga, gb):
    """:func:`_bisect` on many brackets at once, one array evaluation per step.

    Brackets meeting a non-finite midpoint finish through the scalar path.
    """
    a, b, ga, gb = (np.array(x, dtype=float) for x in (a, b, ga, gb))
    active = np.ones(a.shape, dtype=bool)
    for _ in range(400):
        mid = 0.5 * (a + b)
        active &= (mid > a) & (mid < b)
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        gm = gvec(mid[idx])
        bad = ~np.isfinite(gm)
        for j in idx[bad]:
            a[j], b[j], ga[j], gb[j] = _bisect(g, a[j], b[j], ga[j], gb[j])
            active[j] = False
        idx, gm, m = idx[~bad], gm[~bad], mid[idx][~bad]
        zero = gm == 0
        z = idx[zero]
        a[z] = b[z] = m[zero]
        ga[z] = gb[z] = 0.0
        active[z] = False
        left = ~zero & ((gm < 0) == (ga[idx] < 0))
        right = ~zero & ~left
        a[idx[left]], ga[idx[left]] = m[left], gm[left]
        b[idx[right]], gb[idx[right]] = m[right], gm[right]
    return a, b, ga, gb


def _refined_grid(u_lo: float, u_hi: float, n: int, singular: Sequence[float]) -> np.ndarray:
    """Uniform grid plus points approaching each singularity geometrically.

    A root lying closer to a singularity than the uniform spacing would
    otherwise share a scan interval with it, and the two sign changes cancel.
    """
    grid = [np.linspace(u_lo, u_hi, n)]
    scale = max(abs(u_lo), abs(u_hi))
    offsets = scale * np.logspace(-1, -15, 57)
    for s in singular:
        if u_lo < s < u_hi:
            pts = np.concatenate([s - offsets, s + offsets])
            grid.append(pts[(pts > u_lo) & (pts < u_hi)])
    return np.unique(np.concatenate(grid))


def _scan(
    condition: Callable, lo: float, hi: float, n: int, squared: bool, singular: Sequence[float] = ()
) -> list[float]:
    if squared:
        u_lo = lo * lo if lo > 0 else -1e-12 * hi * hi
        u_hi = hi * hi
        to_arg = lambda u: np.sqrt(np.asarray(u, dtype=complex))  # noqa: E731
        to_freq = lambda u: math.sqrt(max(u, 0.0))  # noqa: E731
    else:
        u_lo, u_hi = lo, hi
        to_arg = lambda u: np.asarray(u, dtype=float)  # noqa: E731
        to_freq = float
    singular = [x * x if squared else x for x in singular]

    def g(u: float) -> float:
        with np.errstate(all="ignore"):
            v = complex(condition(to_arg(u)[()])).real
        return v

    grid = _refined_grid(u_lo, u_hi, n, singular)
    vals = _evaluate(condition, to_arg(grid))
    ok = np.isfinite(vals)
    pts, vals = grid[ok], vals[ok]
    roots = [to_freq(p) for p, v in zip(pts, vals) if v == 0]
    fa, fb = vals[:-1], vals[1:]
    k = np.flatnonzero((fa != 0) & (fb != 0) & ((fa < 0) != (fb < 0)))
    gvec = lambda u: _evaluate(condition, to_arg(u))  # noqa: E731
    brackets = _bisect_many(gvec, g, pts[k], pts[k + 1], fa[k], fb[k])
    for a, b, ga, gb, ya, yb in zip(*brackets, vals[k], vals[k + 1]):
        # a genuine root makes |f| collapse to rounding level; a crossing through a
        # singularity makes it grow, or at best stall where precision runs out
        if min(abs(ga), abs(gb)) >= ROOT_COLLAPSE * min(abs(ya), abs(yb)):
            continue
        if ga == 0 and gb == 0:
            u = a
        else:
            u = a if abs(ga) <= abs(gb) else b
        roots.append(to_freq(u))
    return roots


def merge_poles(pole_lists: Iterable[Sequence[float]], tol: float = DEDUPE) -> list[float]:
    """Sorted union of pole lists with near-duplicates merged.

    Two poles merge when they differ by at most ``tol`` in frequency or in
    squared frequency; the latter catches soft modes, where roots located
    in ``w**2`` to machine precision spread out to ~1e-8 in ``w``.
    """
    out: list[float] = []
    for p in sorted(float(x) for lst in pole_lists for x in lst):
        if out and (p - out[-1] <= tol or p * p - out[-1] ** 2 <= tol * tol):
            continue
        out.append(p)
    return out


def find_poles(
    condition: Callable,
    omega_bracket: tuple[float, float],
    count_hint: int | None = None,
    *,
    n_scan: int = N_SCAN,
    squared: bool = False,
    dedupe: float = DEDUPE,
    singularities: Sequence[float] = (),
) -> list[float]:
    """Real frequencies where a pole condition changes sign.

    Parameters
    ----------
    condition : callable
        Evaluated at zero broadening; its real part is the pole condition
        (a response denominator or an inverse response).  It may be called
        with an array of frequencies.
    omega_bracket : (float, float)
        Frequency interval to search.
    count_hint : int, optional
        Expected number of poles.  If fewer are found the scan is repeated
        on finer grids (up to 16 times denser).
    squared : bool
        Scan in ``w**2`` instead of ``w``.  Only valid for conditions that
        depend on ``w**2``; the lower end is extended slightly below zero
        so that a soft mode at ``w = 0`` is bracketed as a simple root.
    dedupe : float
        Poles closer than this are merged.
    singularities : sequence of float
        Frequencies where ``condition`` itself diverges, if known.  The scan
        grid is refined geometrically toward each, so roots hugging a
        singularity are still bracketed.

    Returns
    -------
    list of float
        Sorted pole frequencies.  Empty if no sign change is found.

    Notes
    -----
    Each sign change between scan points is bisected down to adjacent
    floating-point numbers.  Sign changes through a singularity of the
    condition are discarded because the condition grows, rather than
    vanishes, under refinement.  Non-finite scan values are skipped.
    """
    lo, hi = map(float, omega_bracket)
    if not hi > lo:
        raise ValueError("empty frequency bracket")
    n = int(n_scan)
    poles = merge_poles([_scan(condition, lo, hi, n, squared, singularities)], dedupe)
    while count_hint is not None and len(poles) < count_hint and n < 16 * n_scan:
        n *= 4
        poles = merge_poles([_scan(condition, lo, hi, n, squared, singularities)], dedupe)
    return [p for p in poles if lo - dedupe <= p <= hi + dedupe]
