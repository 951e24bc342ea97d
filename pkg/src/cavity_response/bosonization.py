"""Holstein-Primakoff bosonization of the collective spin models.

The collective spin is mapped to a boson ``b`` with ``S_z = b^+ b - N/2``.
Both the cavity and spin modes are displaced by macroscopic amounts,
``a^+ -> c^+ + sqrt(alpha)`` and ``b^+ -> d^+ - sqrt(beta)``, which are
fixed by cancelling the terms linear in ``c`` and ``d``.  The remaining
quadratic Hamiltonian

    H = omega_A d^+ d + omega_B (d + d^+)**2 + Omega c^+ c + omega_C (d + d^+)(c + c^+)

has two normal modes, the exact polaritons in the thermodynamic limit.

Displacements are stored per ``sqrt(N)``: ``a = sqrt(alpha / N)`` and
``b = sqrt(beta / N)``.  With ``u = sqrt(1 - b**2)`` the classical spin is
``s_x = -b u`` and ``s_z = b**2 - 1/2`` (per site, spin 1/2 units), so the
mean-field polarization is ``m = 2 s``.

All models are written through one energy per site,

    E / N = Omega a**2 + 4 lam a s_x + omega_z s_z + omega_x s_x
            - 4 J_x s_x**2 - 4 J_z s_z**2

with ``J_x`` collecting every static interaction on ``x`` (intrinsic
exchange, the diamagnetic term and any static shift) and ``J_z`` the
intrinsic exchange on ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InstabilityError, OracleError
from .meanfield import ModelSpec, solve_mean_field

__all__ = [
    "BosonParameters",
    "Displacements",
    "TwoModeQuadratic",
    "boson_parameters",
    "linear_term_residuals",
    "classical_energy",
    "solve_displacements",
    "build_quadratic",
    "two_mode_polaritons",
    "symplectic_frequencies",
    "bosonization_polaritons",
]

NEWTON_ITERATIONS = 200
NEWTON_RESTARTS = 16
RESIDUAL_TOL = 1e-12
AGREEMENT_TOL = 1e-10
_B_MAX = 1 - 1e-12


@dataclass(frozen=True)
class BosonParameters:
    """Coefficients of the bosonized energy (see module docstring)."""

    coupling: float
    cavity_freq: float
    omega_x: float
    omega_z: float
    J_x: float
    J_z: float

    @property
    def ordering_strength(self) -> float:
        """``lam**2 / Omega + J_x - J_z``, the effective x-ordering coupling."""
        return self.coupling**2 / self.cavity_freq + self.J_x - self.J_z


@dataclass(frozen=True)
class Displacements:
    """Macroscopic displacements per ``sqrt(N)``.

    ``sqrt_alpha`` is ``sqrt(alpha / N)`` and ``sqrt_beta`` is
    ``sqrt(beta / N)``, both non-negative.
    """

    sqrt_alpha: float
    sqrt_beta: float

    def __post_init__(self):
        if self.sqrt_alpha < 0 or not 0 <= self.sqrt_beta <= 1:
            raise ValueError("displacements out of range")

    @property
    def beta_fraction(self) -> float:
        return self.sqrt_beta**2

    @property
    def k_fraction(self) -> float:
        """``k / N = 1 - beta / N``."""
        return 1 - self.sqrt_beta**2

    @property
    def polarization(self) -> tuple[float, float]:
        """Mean-field ``(m_x, m_z)`` implied by the spin displacement (``m_x <= 0``)."""
        b = self.sqrt_beta
        return -2 * b * math.sqrt(self.k_fraction), 2 * b * b - 1


@dataclass(frozen=True)
class TwoModeQuadratic:
    """Coefficients of the displaced quadratic Hamiltonian."""

    omega_A: float
    omega_B: float
    omega_C: float
    cavity_freq: float


def boson_parameters(spec: ModelSpec) -> BosonParameters:
    """Energy coefficients of ``spec``.

    A negative ``omega_x`` is mapped to ``|omega_x|``: flipping the sign of
    ``x`` together with the cavity leaves every frequency unchanged.
    """
    ch = spec.channel
    lam, om = ch.coupling, ch.cavity_freq
    zeta = 0.0 if spec.kind == "heisenberg" else ch.zeta
    jx = zeta * -(lam**2) / om - ch.static_shift / 2
    jz = 0.0
    if spec.kind == "lmg_longitudinal":
        jx += spec.J
    elif spec.kind == "lmg_transverse":
        jz = spec.J
    return BosonParameters(lam, om, abs(spec.omega_x), spec.omega_z, jx, jz)


def _residuals(p: BosonParameters, a: float, b: float) -> np.ndarray:
    u = math.sqrt(max(1 - b * b, 0.0))
    q = 0.5 - b * b
    f1 = 2 * p.coupling * b * u - p.cavity_freq * a
    f2 = (4 * p.coupling * a + p.omega_x) * q / u - p.omega_z * b + 8 * (p.J_x - p.J_z) * b * q
    return np.array([f1, f2])


def _jacobian(p: BosonParameters, a: float, b: float) -> np.ndarray:
    u = math.sqrt(1 - b * b)
    q = 0.5 - b * b
    off = 4 * p.coupling * q / u
    d22 = (4 * p.coupling * a + p.omega_x) * b * (b * b - 1.5) / u**3 - p.omega_z + 8 * (p.J_x - p.J_z) * (0.5 - 3 * b * b)
    return np.array([[-p.cavity_freq, off], [off, d22]])


def linear_term_residuals(spec: ModelSpec, disp: Displacements) -> tuple[float, float]:
    """Coefficients of ``(c + c^+)`` and ``(d + d^+)`` per ``sqrt(N)``."""
    f1, f2 = _residuals(boson_parameters(spec), disp.sqrt_alpha, disp.sqrt_beta)
    return float(f1), float(f2)


def _energy(p: BosonParameters, a: float, b: float) -> float:
    u = math.sqrt(max(1 - b * b, 0.0))
    sx, sz = -b * u, b * b - 0.5
    return (
        p.cavity_freq * a * a
        + 4 * p.coupling * a * sx
        + p.omega_z * sz
        + p.omega_x * sx
        - 4 * p.J_x * sx * sx
        - 4 * p.J_z * sz * sz
    )


def classical_energy(spec: ModelSpec, disp: Displacements) -> float:
    """Energy per site of the displaced vacuum."""
    return _energy(boson_parameters(spec), disp.sqrt_alpha, disp.sqrt_beta)


def _closed_candidates(p: BosonParameters) -> list[tuple[float, float]]:
    cands = [(0.0, 0.0)]
    strength = p.ordering_strength
    if p.omega_z == 0:
        b2 = 0.5
    elif strength > 0 and p.omega_z / (4 * strength) < 1:
        b2 = 0.5 * (1 - p.omega_z / (4 * strength))
    else:
        return cands
    b = math.sqrt(b2)
    a = 2 * p.coupling * b * math.sqrt(1 - b2) / p.cavity_freq
    cands.append((a, b))
    return cands


def _newton(p: BosonParameters, a: float, b: float) -> tuple[float, float, float]:
    for _ in range(NEWTON_ITERATIONS):
        f = _residuals(p, a, b)
        res = float(np.max(np.abs(f)))
        if res < RESIDUAL_TOL:
            return a, b, res
        try:
            step = np.linalg.solve(_jacobian(p, a, b), -f)
        except np.linalg.LinAlgError:
            break
        t = 1.0
        while t > 1e-6:
            na, nb = a + t * step[0], b + t * step[1]
            if 0 <= nb <= _B_MAX and float(np.max(np.abs(_residuals(p, na, abs(nb))))) < res:
                break
            t *= 0.5
        else:
            break
        a, b = na, abs(nb)
    f = _residuals(p, a, b)
    return a, b, float(np.max(np.abs(f)))


def solve_displacements(spec: ModelSpec, seed: tuple[float, float] | None = None) -> Displacements:
    """Displacements that cancel the linear terms at the lowest energy.

    With ``omega_x = 0`` the solutions are closed form: the trivial one and,
    for ``mu = omega_z / (4 (lam**2 / Omega + J_x - J_z)) < 1``,
    ``b**2 = (1 - mu) / 2`` and ``a = (lam / Omega) sqrt(1 - mu**2)``.
    The lower-energy one is returned; at a tie the trivial solution wins.

    With ``omega_x != 0`` the two equations are solved by damped Newton
    iteration seeded from the mean-field state (``b**2 = (1 + m_z) / 2``),
    followed by up to 16 seeded random restarts.

    Parameters
    ----------
    spec : ModelSpec
    seed : (float, float), optional
        Starting ``(a, b)`` overriding the mean-field seed.

    Raises
    ------
    OracleError
        If no restart reaches residuals below 1e-12.
    """
    p = boson_parameters(spec)
    if p.omega_z < 0:
        raise OracleError("oracle assumes omega_z >= 0", {"omega_z": p.omega_z})
    if p.omega_x == 0:
        cands = _closed_candidates(p)
        energies = [_energy(p, a, b) for a, b in cands]
        best = 0
        for i, e in enumerate(energies):
            if e < energies[best] - 1e-12:
                best = i
        a, b = cands[best]
        return Displacements(a, b)

    if seed is None:
        state = solve_mean_field(spec)
        b0 = math.sqrt(min(max((1 + state.m_z) / 2, 0.0), _B_MAX))
        seed = (2 * p.coupling * b0 * math.sqrt(1 - b0 * b0) / p.cavity_freq, b0)
    rng = np.random.default_rng(20240917)
    tried = []
    a, b = seed
    for attempt in range(NEWTON_RESTARTS + 1):
        a, b, res = _newton(p, a, min(max(b, 0.0), _B_MAX))
        tried.append((a, b, res))
        if res < RESIDUAL_TOL:
            return Displacements(max(a, 0.0), b)
        b = float(rng.uniform(0, 1))
        a = 2 * p.coupling * b * math.sqrt(1 - b * b) / p.cavity_freq
    raise OracleError("Newton iteration did not cancel the linear terms", {"spec": spec, "attempts": tried})


def _general_quadratic(p: BosonParameters, a: float, b: float) -> TwoModeQuadratic:
    u = math.sqrt(1 - b * b)
    h = p.omega_x / 2 + 2 * p.coupling * a
    omega_a = p.omega_z + h * b / u + 4 * p.J_x * b * b + 8 * p.J_z * (0.5 - b * b)
    omega_b = h * (b / (2 * u) + b**3 / (4 * u**3)) + p.J_x * (5 * b * b - 1) - 4 * p.J_z * b * b
    omega_c = p.coupling * (1 - 2 * b * b) / u
    return TwoModeQuadratic(omega_a, omega_b, omega_c, p.cavity_freq)


def _displayed_quadratic(spec: ModelSpec, p: BosonParameters, disp: Displacements) -> TwoModeQuadratic | None:
    ch = spec.channel
    if p.omega_x != 0 or ch.static_shift != 0 or (ch.zeta != 0 and spec.kind != "heisenberg"):
        return None
    lam, om, wz = p.coupling, p.cavity_freq, p.omega_z
    J = 0.0 if spec.kind in ("dicke", "heisenberg") else spec.J
    transverse = spec.kind == "lmg_transverse"
    if disp.sqrt_beta == 0:
        if transverse:
            return TwoModeQuadratic(wz + 4 * J, 0.0, lam, om)
        return TwoModeQuadratic(wz, -J, lam, om)
    strength = p.ordering_strength
    mu = wz / (4 * strength)
    wz_over_mu = 4 * strength  # finite as omega_z -> 0
    omega_c = lam * mu * math.sqrt(2 / (1 + mu))
    if transverse:
        omega_a = (1 + mu) * (wz_over_mu / 2 + 2 * J)
        omega_b = wz_over_mu * (1 - mu) * (3 + mu) / (8 * (1 + mu)) - J * (1 - mu) * (1 + 3 * mu) / (2 * (1 + mu))
    else:
        omega_a = wz_over_mu * (1 + mu) / 2
        omega_b = wz_over_mu * (1 - mu) * (3 + mu) / (8 * (1 + mu)) - 2 * J * mu * mu / (1 + mu)
    return TwoModeQuadratic(omega_a, omega_b, omega_c, om)


def build_quadratic(spec: ModelSpec, disp: Displacements, form: str = "auto") -> TwoModeQuadratic:
    """Quadratic coefficients around the displaced vacuum.

    Parameters
    ----------
    form : {"auto", "displayed", "general"}
        ``"displayed"`` uses the closed normal/broken-phase Hamiltonians of
        the zero-``omega_x`` models (no diamagnetic term, no static shift);
        ``"general"`` expands the square root for arbitrary displacements.
        ``"auto"`` prefers the displayed form where it exists.
    """
    p = boson_parameters(spec)
    if form not in ("auto", "displayed", "general"):
        raise ValueError(f"unknown form {form!r}")
    if form != "general":
        q = _displayed_quadratic(spec, p, disp)
        if q is not None:
            return q
        if form == "displayed":
            raise ValueError("no displayed Hamiltonian for this model")
    return _general_quadratic(p, disp.sqrt_alpha, disp.sqrt_beta)


def _dynamical_matrix(q: TwoModeQuadratic) -> np.ndarray:
    a = np.array([[q.omega_A + 2 * q.omega_B, q.omega_C], [q.omega_C, q.cavity_freq]])
    b = np.array([[2 * q.omega_B, q.omega_C], [q.omega_C, 0.0]])
    m = np.block([[a, b], [b, a]])
    return np.diag([1.0, 1.0, -1.0, -1.0]) @ m


def symplectic_frequencies(q: TwoModeQuadratic) -> tuple[float, float]:
    """Normal-mode frequencies from the 4x4 Bogoliubov dynamical matrix.

    Raises
    ------
    InstabilityError
        If an eigenvalue has a significant imaginary part.
    """
    ev = np.linalg.eigvals(_dynamical_matrix(q))
    scale = max(1.0, float(np.max(np.abs(ev))))
    sq = np.sort((ev * ev).real)
    if np.max(np.abs((ev * ev).imag)) > 1e-8 * scale**2 or sq[0] < -1e-8 * scale**2:
        raise InstabilityError(f"quadratic form has an imaginary mode: eigenvalues {ev}")
    # eigenvalues come in +- pairs; average each pair in omega**2
    x = np.clip(sq, 0.0, None)
    return math.sqrt(0.5 * (x[0] + x[1])), math.sqrt(0.5 * (x[2] + x[3]))


def two_mode_polaritons(q: TwoModeQuadratic, check: bool = True) -> tuple[float, float]:
    """Closed-form normal modes of the two-mode quadratic Hamiltonian.

    ``2 W**2 = S +- sqrt((w2 - Omega**2)**2 + 16 omega_A omega_C**2 Omega)``
    with ``w2 = omega_A**2 + 4 omega_A omega_B`` and ``S = w2 + Omega**2``.
    The product of the roots, ``w2 Omega**2 - 4 omega_A omega_C**2 Omega``,
    gives the lower one without cancellation.  With ``check`` the result is
    compared with :func:`symplectic_frequencies` in ``W**2``.

    Raises
    ------
    InstabilityError
        If a mode frequency is imaginary.
    OracleError
        If the two routes disagree by more than 1e-10 (relative to the
        upper mode squared).
    """
    om = q.cavity_freq
    w2 = q.omega_A**2 + 4 * q.omega_A * q.omega_B
    s = w2 + om * om
    disc = (w2 - om * om) ** 2 + 16 * q.omega_A * q.omega_C**2 * om
    if disc < 0:
        raise InstabilityError("negative discriminant")
    x_plus = 0.5 * (s + math.sqrt(disc))
    prod = w2 * om * om - 4 * q.omega_A * q.omega_C**2 * om
    x_minus = prod / x_plus if x_plus > 0 else 0.0
    if x_minus < 0:
        if x_minus < -1e-12 * max(1.0, x_plus):
            raise InstabilityError("imaginary lower mode")
        x_minus = 0.0
    lo, hi = math.sqrt(x_minus), math.sqrt(x_plus)
    if check:
        slo, shi = symplectic_frequencies(q)
        tol = AGREEMENT_TOL * max(1.0, x_plus)
        if abs(slo * slo - x_minus) > tol or abs(shi * shi - x_plus) > tol:
            raise OracleError(
                "closed-form and symplectic polaritons disagree",
                {"closed": (lo, hi), "symplectic": (slo, shi), "quadratic": q},
            )
    return lo, hi


def bosonization_polaritons(spec: ModelSpec, form: str = "auto") -> tuple[float, float]:
    """Exact polaritons of a spin model from its bosonized Hamiltonian."""
    disp = solve_displacements(spec)
    return two_mode_polaritons(build_quadratic(spec, disp, form))
