"""Model-independent dressing of cavity and matter responses.

Everything here is evaluated directly at real frequency, ``w = omega + i delta``.
Functions accept either a :class:`ComplexFrequency` or a complex scalar/array
holding ``w`` itself, and broadcast over array inputs.  Evaluating exactly on
a pole (``delta = 0``) yields a non-finite value; for scalar calls that value
is a :class:`~cavity_response.errors.SingularValue`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .errors import SingularValue

__all__ = [
    "ComplexFrequency",
    "InteractionChannel",
    "BareSusceptibility",
    "DressedResponse",
    "as_wplus",
    "induced_interaction",
    "static_interaction",
    "free_photon_propagator",
    "symmetrized_free_propagator",
    "dress_photon",
    "dress_matter_single_channel",
    "dress_matter_multichannel",
    "photon_propagators_eom",
    "verify_pi_eom_equivalence",
    "dressed_response",
]

DEFAULT_DELTA = 1e-3


@dataclass(frozen=True)
class ComplexFrequency:
    """Probe frequency with broadening, evaluated as ``omega + 1j * delta``.

    Parameters
    ----------
    omega : float or array_like
        Real frequency, in units of the cavity frequency unless stated.
    delta : float
        Non-negative broadening.
    """

    omega: Union[float, np.ndarray]
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if not np.all(np.asarray(self.delta) >= 0):
            raise ValueError(f"broadening must be non-negative, got {self.delta!r}")

    @property
    def value(self):
        omega = np.asarray(self.omega, dtype=float)
        out = omega + 1j * np.asarray(self.delta, dtype=float)
        return complex(out) if out.ndim == 0 else out


Frequency = Union[ComplexFrequency, complex, float, np.ndarray]


def as_wplus(w: Frequency) -> np.ndarray:
    """Return ``w`` as a complex ndarray (0-d for scalars)."""
    if isinstance(w, ComplexFrequency):
        return np.asarray(w.value, dtype=complex)
    return np.asarray(w, dtype=complex)


def _finish(x: np.ndarray, reason: str = "on-resonance singularity"):
    """Unwrap 0-d arrays, tagging non-finite scalars."""
    if np.ndim(x) == 0:
        x = complex(x)
        if not np.isfinite(x):
            return SingularValue(reason)
        return x
    return x


def _divide(num, den):
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.asarray(num, dtype=complex) / np.asarray(den, dtype=complex)
    return np.where(np.asarray(den) == 0, complex(np.inf, np.nan), out)


@dataclass(frozen=True)
class InteractionChannel:
    """One cavity-mediated (or static) interaction channel.

    Parameters
    ----------
    coupling : float
        Collective coupling lambda (``g = lambda / sqrt(N)``).
    cavity_freq : float
        Cavity frequency Omega.
    zeta : float
        Weight of the diamagnetic ``C_x**2`` term; any real value.
    static_shift : float
        Frequency-independent addition to the interaction, e.g. ``-2 J``.
    """

    coupling: float
    cavity_freq: float = 1.0
    zeta: float = 0.0
    static_shift: float = 0.0

    def __post_init__(self):
        if not self.cavity_freq > 0:
            raise ValueError(f"cavity_freq must be positive, got {self.cavity_freq!r}")
        if not self.coupling >= 0:
            raise ValueError(f"coupling must be non-negative, got {self.coupling!r}")
        for name in ("coupling", "cavity_freq", "zeta", "static_shift"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class BareSusceptibility:
    """Closed-form bare matter response ``w -> chi0[..., r, s]``.

    Parameters
    ----------
    labels : tuple of str
        Operator labels indexing the matrix, e.g. ``("x", "z")``.
    func : callable
        Maps a complex ndarray of ``w`` values to an array of shape
        ``w.shape + (n, n)``.
    """

    labels: tuple
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate susceptibility labels")

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"label {label!r} not among {self.labels}") from None

    def eval(self, w: Frequency) -> np.ndarray:
        wp = as_wplus(w)
        out = np.asarray(self.func(wp), dtype=complex)
        n = len(self.labels)
        if out.shape != wp.shape + (n, n):
            raise ValueError(f"susceptibility returned shape {out.shape}, expected {wp.shape + (n, n)}")
        return out

    __call__ = eval


@dataclass(frozen=True)
class DressedResponse:
    """Photon propagators and dressed matter responses at one frequency set."""

    photon: np.ndarray
    photon_anomalous: np.ndarray
    matter: np.ndarray
    labels: tuple = ()

    def chi(self, r: str, s: str):
        i, j = self.labels.index(r), self.labels.index(s)
        return self.matter[..., i, j]


def induced_interaction(channel: InteractionChannel, w: Frequency):
    """Cavity-induced matter-matter interaction at real frequency.

    ``V = 2 lam^2 (Omega^2 (zeta - 1) - zeta w^2) / (Omega (Omega^2 - w^2)) + shift``.
    """
    wp = as_wplus(w)
    lam, om, zeta = channel.coupling, channel.cavity_freq, channel.zeta
    if lam == 0:
        out = np.zeros_like(wp) + channel.static_shift
        return _finish(out)
    w2 = wp * wp
    num = 2 * lam**2 * (om**2 * (zeta - 1) - zeta * w2)
    out = _divide(num, om * (om**2 - w2)) + channel.static_shift
    return _finish(out)


def static_interaction(channel: InteractionChannel) -> float:
    """Zero-frequency value of :func:`induced_interaction` (never singular)."""
    return -2 * channel.coupling**2 * (1 - channel.zeta) / channel.cavity_freq + channel.static_shift


def free_photon_propagator(cavity_freq: float, w: Frequency):
    """``D0 = 1 / (w - Omega)``."""
    if not cavity_freq > 0:
        raise ValueError("cavity_freq must be positive")
    wp = as_wplus(w)
    return _finish(_divide(1.0, wp - cavity_freq))


def symmetrized_free_propagator(cavity_freq: float, w: Frequency):
    """``1/(w - Omega) - 1/(w + Omega)``, evaluated as ``2 Omega / (w^2 - Omega^2)``."""
    if not cavity_freq > 0:
        raise ValueError("cavity_freq must be positive")
    wp = as_wplus(w)
    return _finish(_divide(2 * cavity_freq, (wp - cavity_freq) * (wp + cavity_freq)))


def dress_photon(channel: InteractionChannel, chi_xx, w: Frequency):
    """Photon propagator ``D = D0 - lam^2 D0 chi_xx D0`` from the dressed ``chi_xx``."""
    d0 = np.asarray(free_photon_propagator(channel.cavity_freq, w), dtype=complex)
    if channel.coupling == 0:
        return _finish(d0)
    with np.errstate(invalid="ignore", over="ignore"):
        out = d0 - channel.coupling**2 * d0 * np.asarray(chi_xx, dtype=complex) * d0
    return _finish(out)


def dress_matter_single_channel(
    bare: BareSusceptibility,
    channel: InteractionChannel,
    coupling_label: str,
    w: Frequency,
) -> np.ndarray:
    """Dress a bare response matrix with one induced-interaction channel.

    Returns
    -------
    ndarray
        ``w.shape + (n, n)`` complex array.  The coupled row and column are
        ``chi0[x, r] / (1 + V chi0[x, x])``; other entries are
        ``chi0[r, s] - chi0[r, x] V chi0[x, s] / (1 + V chi0[x, x])``.
    """
    i = bare.index(coupling_label)
    chi0 = bare.eval(w)
    v = np.asarray(induced_interaction(channel, w), dtype=complex)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        den = 1 + v * chi0[..., i, i]
        vv = v[..., None, None]
        dd = den[..., None, None]
        chi = chi0 - chi0[..., :, i, None] * vv * chi0[..., None, i, :] / dd
        chi[..., i, :] = chi0[..., i, :] / den[..., None]
        chi[..., :, i] = chi0[..., :, i] / den[..., None]
    chi[np.broadcast_to(den[..., None, None] == 0, chi.shape)] = complex(np.inf, np.nan)
    return chi


def dress_matter_multichannel(
    bare: BareSusceptibility,
    channels: Sequence[tuple],
    w: Frequency,
) -> np.ndarray:
    """Dress a bare response with several channels at once.

    Uses the multiplied-through system ``K' = I + chi0_cc V`` (with ``V``
    the diagonal of channel interactions), so no interaction is ever
    inverted and vanishing channels are harmless:

    ``chi = chi0 - chi0[:, c] V K'^{-1} chi0[c, :]``.

    Parameters
    ----------
    channels : sequence of (InteractionChannel, str)
        Channel and the label of the operator it couples to.
    """
    if len(channels) == 0:
        return bare.eval(w)
    idx = [bare.index(label) for _, label in channels]
    chi0 = bare.eval(w)
    wp = as_wplus(w)
    m = len(idx)
    v = np.stack(
        [np.broadcast_to(np.asarray(induced_interaction(ch, w), dtype=complex), wp.shape) for ch, _ in channels],
        axis=-1,
    )
    rows = chi0[..., idx, :]  # (..., m, n)
    cols = chi0[..., :, idx]  # (..., n, m)
    chi_cc = rows[..., :, idx]  # (..., m, m)
    eye = np.eye(m)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        k_right = eye + chi_cc * v[..., None, :]  # I + chi_cc V
        k_left = eye + v[..., :, None] * chi_cc  # I + V chi_cc
        if m == 1:
            den = k_right[..., 0, 0]
            y = rows / den[..., None, None]
            z = cols / den[..., None, None]
            singular = den == 0
        else:
            det = np.linalg.det(k_right)
            singular = (det == 0) | ~np.isfinite(det)
            safe_r = np.where(singular[..., None, None], eye, k_right)
            safe_l = np.where(singular[..., None, None], eye, k_left)
            y = np.linalg.solve(safe_r, rows)
            z = np.swapaxes(np.linalg.solve(np.swapaxes(safe_l, -1, -2), np.swapaxes(cols, -1, -2)), -1, -2)
        chi = chi0 - cols @ (v[..., :, None] * y)
        chi[..., idx, :] = y
        chi[..., :, idx] = z
    chi[np.broadcast_to(np.asarray(singular)[..., None, None], chi.shape)] = complex(np.inf, np.nan)
    return chi


def photon_propagators_eom(channel: InteractionChannel, chi_xx0_tilde, w: Frequency):
    """Normal and anomalous photon propagators from the equations of motion.

    ``D  = (w + Omega + lam^2 (2 zeta (w + Omega) - Omega) chi / Omega) / den``
    ``D+ = lam^2 chi / den``, with
    ``den = w^2 - Omega^2 + 2 lam^2 (zeta (w^2 - Omega^2) + Omega^2) chi / Omega``.

    ``chi_xx0_tilde`` is the bare mean-field response.  A non-zero
    ``static_shift`` on the channel is folded into it first as
    ``chi / (1 + shift chi)``, which makes the result equal to the
    path-integral route for any channel.

    Returns
    -------
    (D, D_plus)
    """
    wp = as_wplus(w)
    chi = np.asarray(chi_xx0_tilde, dtype=complex)
    lam, om, zeta = channel.coupling, channel.cavity_freq, channel.zeta
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        if channel.static_shift != 0:
            chi = chi / (1 + channel.static_shift * chi)
        lam2 = lam**2
        num = wp + om + lam2 * (2 * zeta * (wp + om) - om) / om * chi
        den = wp * wp - om**2 + 2 * lam2 * (zeta * (wp * wp - om**2) + om**2) / om * chi
        d = _divide(num, den)
        dp = _divide(lam2 * chi, den)
        if lam == 0:
            dp = np.zeros_like(d)
    return _finish(d), _finish(dp)


def verify_pi_eom_equivalence(
    channel: InteractionChannel,
    bare_xx,
    grid: Sequence,
    *,
    relative: bool = False,
) -> float:
    """Compare the path-integral and equation-of-motion photon propagators.

    Parameters
    ----------
    bare_xx : BareSusceptibility or callable
        Bare ``chi_xx``; a susceptibility object uses its ``"x"`` entry.
    grid : sequence of ComplexFrequency or complex
        Evaluation points; broadening should be positive.
    relative : bool
        If True, scale each deviation by ``max(1, |D|)``.

    Returns
    -------
    float
        Maximum deviation over the grid.
    """
    if isinstance(bare_xx, BareSusceptibility):
        bare = bare_xx
        label = "x" if "x" in bare.labels else bare.labels[0]
        i = bare.index(label)
        chi0_fn = lambda wp: bare.eval(wp)[..., i, i]  # noqa: E731
    else:
        chi0_fn = lambda wp: np.asarray(bare_xx(wp), dtype=complex)  # noqa: E731
        bare = BareSusceptibility(("x",), lambda wp: np.asarray(bare_xx(wp), dtype=complex)[..., None, None])
        label = "x"
    wp = np.array([complex(as_wplus(g)) for g in grid]) if not isinstance(grid, np.ndarray) else as_wplus(grid)
    chi_xx = dress_matter_single_channel(bare, channel, label, wp)[..., bare.index(label), bare.index(label)]
    d_pi = np.asarray(dress_photon(channel, chi_xx, wp))
    d_eom, _ = photon_propagators_eom(channel, chi0_fn(wp), wp)
    dev = np.abs(d_pi - np.asarray(d_eom))
    if relative:
        dev = dev / np.maximum(1.0, np.abs(d_eom))
    return float(np.max(dev)) if dev.size else 0.0


def dressed_response(
    bare: BareSusceptibility,
    channels: Sequence[tuple],
    w: Frequency,
    cavity: int = 0,
) -> DressedResponse:
    """Full dressed response: matter matrix plus photon propagators.

    Parameters
    ----------
    channels : sequence of (InteractionChannel, str)
        All interaction channels; ``channels[cavity]`` is the photon mode
        whose propagators are reported.

    Notes
    -----
    The anomalous propagator comes from the equation-of-motion form, with
    every non-cavity channel (and the cavity channel's static shift)
    folded into the bare response of the coupled operator first.
    """
    channels = list(channels)
    matter = dress_matter_multichannel(bare, channels, w)
    ch, label = channels[cavity]
    i = bare.index(label)
    photon = dress_photon(ch, matter[..., i, i], w)
    others = [c for k, c in enumerate(channels) if k != cavity]
    chi_eff = dress_matter_multichannel(bare, others, w)[..., i, i]
    _, anomalous = photon_propagators_eom(ch, chi_eff, w)
    return DressedResponse(np.asarray(photon), np.asarray(anomalous), matter, bare.labels)
