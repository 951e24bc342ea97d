"""Built-in validation suite: closed forms, oracles and invariants.

Each check returns a :class:`CheckResult`; :func:`run_all` runs them in
order.  Random samples use fixed seeds, so results are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bosonization import TwoModeQuadratic, bosonization_polaritons, symplectic_frequencies, two_mode_polaritons
from .config import parse_config
from .core import (
    BareSusceptibility,
    InteractionChannel,
    dress_matter_multichannel,
    dress_matter_single_channel,
    dressed_response,
    free_photon_propagator,
    verify_pi_eom_equivalence,
)
from .export import export
from .meanfield import ModelSpec, SpinFields, free_spin_susceptibility, model_channels, solve_mean_field
from .models import (
    dicke_polaritons,
    lmg_longitudinal_polaritons,
    spin_model_bare_susceptibility,
    spin_model_poles,
)
from .poles import merge_poles
from .qhe import (
    QheSpec,
    _closed_all,
    _dressed_all,
    free_gas_sigma_xx,
    landau_polaritons,
    qhe_conductivity,
    qhe_dc_conductivity,
    qhe_dressed_current_response,
    qhe_poles,
    qhe_bare_current_response,
)
from .spectral import spectral_susceptibility
from .sweep import run_sweep

__all__ = ["CheckResult", "CHECKS", "run_check", "run_all", "format_result"]


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    time_limit: float

    @property
    def within_time(self) -> bool:
        return self.seconds < self.time_limit


def _compare_sets(found, expected) -> float:
    """Max deviation between two sorted pole lists, inf on a count mismatch."""
    if len(found) != len(expected):
        return math.inf
    if not found:
        return 0.0
    return float(np.max(np.abs(np.asarray(found) - np.asarray(expected))))


def _dicke_sweep(zeta: float) -> tuple[float, list]:
    worst, lower = 0.0, []
    for lam in np.round(np.arange(61) * 0.02, 12):
        spec = ModelSpec("dicke", 1.0, channel=InteractionChannel(float(lam), 1.0, zeta))
        found = spin_model_poles(spec)
        expected = merge_poles([dicke_polaritons(1.0, 1.0, float(lam), zeta)])
        worst = max(worst, _compare_sets(found, expected))
        lower.append((float(lam), found[0] if found else math.nan))
    return worst, lower


def check_dicke() -> tuple[bool, str]:
    worst, lower = _dicke_sweep(0.0)
    soft = dict(lower)[0.5]
    ok = worst < 1e-8 and soft < 1e-6
    return ok, f"max |dw| = {worst:.2e}, Omega_-(0.5) = {soft:.2e}"


def check_dicke_p2() -> tuple[bool, str]:
    worst, lower = _dicke_sweep(1.0)
    low = min(w for _, w in lower)
    ok = worst < 1e-8 and low > 0.3
    return ok, f"max |dw| = {worst:.2e}, min Omega_- = {low:.6f}"


def _lmg_onset(J: float) -> float:
    """Coupling where the longitudinal model orders, by bisection on m_x > 0."""
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        st = solve_mean_field(ModelSpec("lmg_longitudinal", 1.0, J=J, channel=InteractionChannel(mid, 1.0)))
        if st.m_x > 0:
            hi = mid
        else:
            lo = mid
    return hi


def check_lmg_longitudinal() -> tuple[bool, str]:
    worst = 0.0
    for J in (0.1, 0.35):
        for lam in np.round(np.arange(61) * 0.02, 12):
            spec = ModelSpec("lmg_longitudinal", 1.0, J=J, channel=InteractionChannel(float(lam), 1.0))
            expected = merge_poles([lmg_longitudinal_polaritons(1.0, 1.0, float(lam), J)])
            worst = max(worst, _compare_sets(spin_model_poles(spec), expected))
    lam_c = _lmg_onset(0.1)
    spec_c = ModelSpec("lmg_longitudinal", 1.0, J=0.1, channel=InteractionChannel(lam_c, 1.0))
    soft = spin_model_poles(spec_c)[0]
    ordered = solve_mean_field(ModelSpec("lmg_longitudinal", 1.0, J=0.35, channel=InteractionChannel(0.0, 1.0))).m_x
    err_c = abs(lam_c - math.sqrt(0.15))
    ok = worst < 1e-8 and err_c < 1e-6 and soft < 1e-6 and ordered > 0
    return ok, (
        f"max |dw| = {worst:.2e}, |lam_c - sqrt(0.15)| = {err_c:.1e}, "
        f"Omega_-(lam_c) = {soft:.1e}, m_x(J=0.35, lam=0) = {ordered:.4f}"
    )


def _transverse(lam: float, omega_x: float, omega_z: float) -> ModelSpec:
    return ModelSpec("lmg_transverse", omega_z, omega_x, 0.25, InteractionChannel(float(lam), 1.0))


def _max_jump(omega_x: float, omega_z: float, n: int) -> tuple[float, float, np.ndarray]:
    lams = np.linspace(0.0, 1.0, n)
    m = np.array([[s.m_x, s.m_z] for s in (solve_mean_field(_transverse(l, omega_x, omega_z)) for l in lams)])
    jumps = np.linalg.norm(np.diff(m, axis=0), axis=1)
    k = int(np.argmax(jumps))
    return float(jumps[k]), float(0.5 * (lams[k] + lams[k + 1])), m


def check_lmg_transverse() -> tuple[bool, str]:
    notes = []
    # zero fields, 4 J = Omega: first-order jump at lam = 0.5
    jump, where, _ = _max_jump(0.0, 0.0, 101)
    jump_fine, _, _ = _max_jump(0.0, 0.0, 401)
    first_order = jump > 1.0 and jump_fine > 1.0 and abs(where - 0.5) <= 0.01
    notes.append(f"zero fields: jump {jump:.3f} at lam {where:.3f}")
    # one field on: the jump shrinks with the grid step and the order parameter vanishes
    continuous = True
    for wx, wz, comp in ((0.5, 0.0, 1), (0.0, 0.5, 0)):
        coarse, _, _ = _max_jump(wx, wz, 51)
        fine, _, m = _max_jump(wx, wz, 401)
        reaches_zero = bool(np.any(np.abs(m[:, comp]) < 1e-9))
        ok = fine < 0.6 * coarse and fine < 0.5 and reaches_zero
        continuous &= ok
        notes.append(f"w_x={wx}, w_z={wz}: max jump {coarse:.3f} -> {fine:.3f}")
    # poles of D and chi_zz against the bosonization oracle
    worst = 0.0
    lams = np.linspace(0.03, 1.2, 20)
    for wx, wz in ((0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (0.3, 0.4)):
        for lam in lams:
            spec = _transverse(lam, wx, wz)
            found = spin_model_poles(spec, ("photon", "z"))
            expected = merge_poles([bosonization_polaritons(spec)])
            worst = max(worst, _compare_sets(found, expected))
    notes.append(f"oracle max |dw| = {worst:.2e}")
    return first_order and continuous and worst < 1e-6, "; ".join(notes)


def _rel(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
    return np.where(a == b, 0.0, np.abs(a - b) / scale)


def check_qhe() -> tuple[bool, str]:
    rng = np.random.default_rng(5)
    n = 10_000
    om = rng.uniform(0.2, 3.0, n)
    wp = rng.uniform(0.0, 3.0, n)
    wc = rng.uniform(0.0, 3.0, n)
    delta = 10 ** rng.uniform(-4, -0.3, n)
    w = rng.uniform(-4.0, 4.0, n)
    worst = 0.0
    for k in range(n):
        spec = QheSpec(om[k], wp[k], wc[k], delta[k])
        z = np.asarray(complex(w[k], delta[k]))
        # all four components per route in one call each
        implicit, explicit = _dressed_all(spec, z), _closed_all(spec, z)
        worst = max(worst, max(float(_rel(a, b)) for a, b in zip(implicit, explicit)))
    pole_worst = 0.0
    specs = [QheSpec(1.0, 0.5, 1.0)] + [QheSpec(*rng.uniform(0.2, 2.0, 3)) for _ in range(40)]
    for spec in specs:
        pole_worst = max(pole_worst, _compare_sets(qhe_poles(spec), merge_poles([landau_polaritons(spec)])))
    ok = worst < 1e-10 and pole_worst < 1e-8
    return ok, f"max rel dev = {worst:.2e} over {n} samples, pole max |dw| = {pole_worst:.2e}"


def check_hall() -> tuple[bool, str]:
    rng = np.random.default_rng(6)
    worst_xy = worst_dc = 0.0
    for _ in range(100):
        om, wp, wc = rng.uniform(0.2, 3.0, 3)
        spec = QheSpec(om, wp, wc, 1e-6)
        sig = qhe_conductivity(spec, 0.0)
        worst_xy = max(worst_xy, abs(sig.sigma_xy - 1))
        worst_dc = max(worst_dc, abs(sig.sigma_xy - qhe_dc_conductivity(spec).sigma_xy))
    worst_free = 0.0
    for _ in range(100):
        om, wp = rng.uniform(0.2, 3.0, 2)
        spec = QheSpec(om, wp, 0.0, float(10 ** rng.uniform(-4, -1)))
        w = rng.uniform(-4.0, 4.0)
        worst_free = max(worst_free, float(_rel(qhe_conductivity(spec, w).sigma_xx, free_gas_sigma_xx(spec, w))))
    ok = worst_xy < 1e-6 and worst_free < 1e-10
    return ok, f"max |sigma_xy - 1| = {worst_xy:.2e} (dc form {worst_dc:.1e}), free-gas rel dev = {worst_free:.2e}"


def check_pi_eom() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    worst = 0.0
    grid = np.linspace(-4.0, 4.0, 41) + 1e-3j
    for k in range(1000):
        zeta = (0.0, 1.0, float(rng.uniform(-1, 2)))[k % 3]
        channel = InteractionChannel(float(rng.uniform(0, 2)), float(rng.uniform(0.2, 3)), zeta, float(rng.uniform(-1, 1)) * (k % 2))
        fields = SpinFields(*rng.uniform(-2, 2, 2))
        bare = BareSusceptibility(("x", "z"), lambda wp, f=fields: free_spin_susceptibility(f, wp))
        worst = max(worst, verify_pi_eom_equivalence(channel, bare, grid, relative=True))
    return worst < 1e-10, f"max relative |D_PI - D_EOM| = {worst:.2e}"


def _random_stable_quadratic(rng) -> TwoModeQuadratic:
    om = rng.uniform(0.2, 3.0)
    wa = rng.uniform(0.1, 3.0)
    wb = rng.uniform(-0.24 * wa, 2.0)
    w2 = wa * wa + 4 * wa * wb
    wc = rng.uniform(-1, 1) * math.sqrt(0.95 * w2 * om / (4 * wa))
    return TwoModeQuadratic(wa, wb, wc, om)


def check_oracles() -> tuple[bool, str]:
    rng = np.random.default_rng(8)
    spin = 0.0
    for _ in range(200):
        wx, wz = rng.uniform(-2, 2, 2)
        z = complex(rng.uniform(-3, 3), rng.uniform(1e-3, 0.5))
        closed = free_spin_susceptibility(SpinFields(wx, wz), z)
        brute = spectral_susceptibility(wx, wz, z)
        spin = max(spin, float(np.max(np.abs(closed - brute) / np.maximum(1.0, np.abs(brute)))))
    modes = 0.0
    for _ in range(500):
        q = _random_stable_quadratic(rng)
        closed = np.array(two_mode_polaritons(q, check=False))
        modes = max(modes, float(np.max(np.abs(closed - np.array(symplectic_frequencies(q))))))
    chan = InteractionChannel(0.8, 1.3, 0.37, -0.2)
    fields = SpinFields(0.4, 0.9)
    bare = BareSusceptibility(("x", "z"), lambda wp: free_spin_susceptibility(fields, wp))
    w = np.linspace(-3, 3, 500) + 1e-3j
    reduction = float(
        np.max(np.abs(dress_matter_multichannel(bare, [(chan, "x")], w) - dress_matter_single_channel(bare, chan, "x", w)))
    )
    ok = spin < 1e-12 and modes < 1e-10 and reduction < 1e-14
    return ok, f"spin spectral {spin:.1e}, two-mode {modes:.1e}, M=1 reduction {reduction:.1e}"


_SWEEP = """
model = dicke
axis = coupling
axis_min = 0
axis_max = 1.2
axis_points = 7
omega_min = 0
omega_max = 3
omega_points = 31
observables = im_photon, im_chi_xx, poles
"""


def check_properties() -> tuple[bool, str]:
    rng = np.random.default_rng(9)
    failures = []
    w = np.linspace(-3, 3, 61) + 1e-3j
    # decoupling: zero coupling returns bare quantities exactly
    for kind, wx in (("dicke", 0.0), ("lmg_longitudinal", 0.0), ("lmg_transverse", 0.3), ("heisenberg", 0.0)):
        spec = ModelSpec(kind, 1.0, wx, 0.1 if kind != "lmg_longitudinal" else 0.0, InteractionChannel(0.0, 1.0), 4)
        bare = spin_model_bare_susceptibility(spec)
        channels = [(ch, lab) for ch, lab in model_channels(spec)][:1]
        resp = dressed_response(bare, channels, w)
        if not (
            np.array_equal(resp.photon, free_photon_propagator(1.0, w))
            and np.all(resp.photon_anomalous == 0)
            and np.array_equal(resp.matter, bare.eval(w))
        ):
            failures.append(f"decoupling {kind}")
    spec = QheSpec(1.3, 0.0, 0.7)
    for r, s in (("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")):
        if not np.allclose(qhe_dressed_current_response(spec, r, s, w), qhe_bare_current_response(spec, r, s, w), rtol=1e-15, atol=0):
            failures.append(f"decoupling qhe {r}{s}")
    # hermiticity of diagonal responses
    herm = 0.0
    for _ in range(30):
        wx, wz = rng.uniform(0, 1, 2)
        spec = ModelSpec("lmg_transverse", wz, wx, rng.uniform(0, 0.5), InteractionChannel(rng.uniform(0, 1.2), 1.0, rng.choice([0.0, 1.0])))
        bare = spin_model_bare_susceptibility(spec)
        grid = rng.uniform(0, 3, 20)
        pos = dressed_response(bare, model_channels(spec), grid + 1e-3j).matter
        neg = dressed_response(bare, model_channels(spec), -grid + 1e-3j).matter
        for i in range(2):
            herm = max(herm, float(np.max(np.abs(neg[:, i, i] - np.conj(pos[:, i, i])) / np.maximum(1, np.abs(pos[:, i, i])))))
    if herm > 1e-12:
        failures.append(f"hermiticity {herm:.1e}")
    # Onsager antisymmetry
    ons = 0.0
    for _ in range(200):
        spec = QheSpec(*rng.uniform(0.2, 3, 3), float(10 ** rng.uniform(-4, -1)))
        t = qhe_conductivity(spec, rng.uniform(-4, 4))
        ons = max(ons, abs(t.sigma_xy + t.sigma_yx))
    if ons != 0:
        failures.append(f"onsager {ons:.1e}")
    # deterministic export and parallel/serial equality
    config = parse_config(_SWEEP)
    serial = run_sweep(config, threads=1)
    a = export(serial, "csv") + export(serial, "structured")
    b = export(run_sweep(config, threads=1), "csv") + export(run_sweep(config, threads=1), "structured")
    if a != b:
        failures.append("export determinism")
    parallel = run_sweep(config, threads=3)
    if export(parallel, "csv") + export(parallel, "structured") != a:
        failures.append("parallel/serial")
    detail = "all properties hold" if not failures else "failed: " + ", ".join(failures)
    return not failures, detail + f" (hermiticity {herm:.1e})"


CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "Dicke polaritons", check_dicke, 5.0),
    (2, "Dicke with diamagnetic term", check_dicke_p2, 5.0),
    (3, "Longitudinal Dicke-LMG", check_lmg_longitudinal, 5.0),
    (4, "Transverse Dicke-LMG", check_lmg_transverse, 30.0),
    (5, "QHE closed-form equivalence", check_qhe, 5.0),
    (6, "Hall quantization", check_hall, 2.0),
    (7, "Path-integral/EOM equivalence", check_pi_eom, 2.0),
    (8, "Oracle stack", check_oracles, 5.0),
    (9, "Property suite", check_properties, 10.0),
]


def run_check(number: int) -> CheckResult:
    """Run one numbered check; the time limit is part of passing."""
    for num, name, fn, limit in CHECKS:
        if num == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed check, reported as such
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            return CheckResult(num, name, ok and dt < limit, detail, dt, limit)
    raise KeyError(number)


def run_all() -> list[CheckResult]:
    return [run_check(num) for num, *_ in CHECKS]


def format_result(r: CheckResult) -> str:
    status = "PASS" if r.passed else "FAIL"
    return f"[{status}] {r.number}. {r.name}: {r.detail} ({r.seconds:.2f} s, limit {r.time_limit:.0f} s)"
