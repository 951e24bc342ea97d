"""Zero-temperature mean-field states and free-spin responses.

A collective spin model coupled to the cavity reduces, at the saddle point,
to independent spins in self-consistent fields.  With ``m = (m_x, m_z)`` the
per-site polarization on the unit circle, ``m = (sin t, cos t)``, the
variational energy per site is

    e(t) = (omega_x m_x + omega_z m_z) / 2 + (V_x m_x**2 + V_z m_z**2) / 2

where ``V_r`` is the static (zero-frequency) interaction acting on operator
``r``.  The effective single-spin fields are ``omega_r + 2 V_r m_r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .core import Frequency, InteractionChannel, as_wplus, static_interaction
from .errors import DegenerateSpinError, SolverError

__all__ = [
    "MODEL_KINDS",
    "SpinFields",
    "SpinGap",
    "MeanFieldState",
    "ModelSpec",
    "free_spin_gap",
    "free_spin_susceptibility",
    "model_channels",
    "static_couplings",
    "variational_energy",
    "energy_gradient",
    "solve_mean_field",
    "self_consistency_residual",
    "dressed_fields",
]

MODEL_KINDS = ("dicke", "lmg_longitudinal", "lmg_transverse", "heisenberg")

N_SEEDS = 64
THETA_TOL = 1e-12
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class SpinFields:
    """Fields of ``H = (omega_x sigma_x + omega_z sigma_z) / 2``."""

    omega_x: float
    omega_z: float

    @property
    def gap(self) -> float:
        return math.hypot(self.omega_x, self.omega_z)


class SpinGap(NamedTuple):
    epsilon: float
    e0: float

    @property
    def degenerate(self) -> bool:
        return self.epsilon == 0


@dataclass(frozen=True)
class ModelSpec:
    """A collective spin model coupled to one cavity mode.

    Parameters
    ----------
    kind : str
        One of ``dicke``, ``lmg_longitudinal``, ``lmg_transverse``,
        ``heisenberg``.
    omega_x, omega_z : float
        Bare fields.  Only the transverse model uses ``omega_x``.
    J : float
        Intrinsic collective coupling (ignored by ``dicke``).
    channel : InteractionChannel
        Cavity coupling.
    z_coord : int
        Coordination number (``heisenberg`` only, enters the energy offset).
    """

    kind: str
    omega_z: float = 1.0
    omega_x: float = 0.0
    J: float = 0.0
    channel: InteractionChannel = field(default_factory=lambda: InteractionChannel(0.0))
    z_coord: int = 0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}")
        for name in ("omega_x", "omega_z", "J"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.J < 0:
            raise ValueError("J must be non-negative")

    def with_coupling(self, coupling: float) -> "ModelSpec":
        return replace(self, channel=replace(self.channel, coupling=coupling))


@dataclass(frozen=True)
class MeanFieldState:
    """Mean-field solution.

    ``gap`` is the excitation energy of the effective single spin and
    ``energy_per_site`` the variational energy at ``(m_x, m_z)``.
    ``coexistence`` marks a first-order point where two inequivalent
    minima are degenerate within 1e-12.
    """

    m_x: float
    m_z: float
    gap: float
    energy_per_site: float
    coexistence: bool = False

    @property
    def theta(self) -> float:
        return math.atan2(self.m_x, self.m_z)


def free_spin_gap(fields: SpinFields) -> SpinGap:
    """Gap and ground-state energy of a single spin in ``fields``."""
    eps = fields.gap
    return SpinGap(eps, -eps / 2)


def free_spin_susceptibility(fields: SpinFields, w: Frequency) -> np.ndarray:
    """Zero-temperature susceptibility matrix of a free spin, indices ``(x, z)``.

    With ``f = -2 eps / (w**2 - eps**2)``::

        chi_xx = (omega_z / eps)**2 f
        chi_zz = (omega_x / eps)**2 f
        chi_xz = chi_zx = -(omega_x omega_z / eps**2) f

    Raises
    ------
    DegenerateSpinError
        If both fields vanish.
    """
    eps = fields.gap
    if eps == 0:
        raise DegenerateSpinError("free spin with zero gap has no finite susceptibility")
    wp = as_wplus(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = -2 * eps / ((wp - eps) * (wp + eps))
    f = np.where((wp - eps) * (wp + eps) == 0, complex(np.inf, np.nan), f)
    cx, cz = fields.omega_x / eps, fields.omega_z / eps
    out = np.empty(wp.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = cz * cz * f
    out[..., 1, 1] = cx * cx * f
    out[..., 0, 1] = out[..., 1, 0] = -cx * cz * f
    return out


def model_channels(spec: ModelSpec) -> list[tuple[InteractionChannel, str]]:
    """Interaction channels of a model as ``(channel, label)`` pairs.

    The cavity channel always comes first.  The longitudinal model adds
    ``-2 J`` to the cavity channel's static shift (both act on ``x``); the
    transverse model carries ``-2 J`` as a separate static channel on ``z``.
    """
    ch = spec.channel
    if spec.kind == "heisenberg":
        return [(replace(ch, zeta=0.0), "x")]
    if spec.kind == "dicke":
        return [(ch, "x")]
    if spec.kind == "lmg_longitudinal":
        return [(replace(ch, static_shift=ch.static_shift - 2 * spec.J), "x")]
    static = InteractionChannel(0.0, ch.cavity_freq, 0.0, -2 * spec.J)
    return [(ch, "x"), (static, "z")]


def static_couplings(spec: ModelSpec) -> tuple[float, float]:
    """Total zero-frequency interaction ``(V_x, V_z)`` acting on each operator."""
    vx = vz = 0.0
    for ch, label in model_channels(spec):
        if label == "x":
            vx += static_interaction(ch)
        else:
            vz += static_interaction(ch)
    return vx, vz


def _energy_offset(spec: ModelSpec) -> float:
    return -spec.J * spec.z_coord if spec.kind == "heisenberg" else 0.0


def variational_energy(spec: ModelSpec, theta):
    """Energy per site at polarization ``(sin theta, cos theta)``."""
    vx, vz = static_couplings(spec)
    s, c = np.sin(theta), np.cos(theta)
    return 0.5 * (spec.omega_x * s + spec.omega_z * c) + 0.5 * (vx * s * s + vz * c * c) + _energy_offset(spec)


def _de(spec: ModelSpec, theta: float) -> float:
    vx, vz = static_couplings(spec)
    s, c = math.sin(theta), math.cos(theta)
    return 0.5 * (spec.omega_x * c - spec.omega_z * s) + (vx - vz) * s * c


def energy_gradient(spec: ModelSpec, state: MeanFieldState) -> float:
    """Derivative of the variational energy along the unit circle."""
    return _de(spec, state.theta)


def _dressed(spec: ModelSpec, m_x: float, m_z: float) -> SpinFields:
    vx, vz = static_couplings(spec)
    return SpinFields(spec.omega_x + 2 * vx * m_x, spec.omega_z + 2 * vz * m_z)


def dressed_fields(spec: ModelSpec, state: MeanFieldState) -> SpinFields:
    """Effective single-spin fields whose free-spin response is the bare response."""
    return _dressed(spec, state.m_x, state.m_z)


def self_consistency_residual(state: MeanFieldState, spec: ModelSpec) -> float:
    """Distance between ``m`` and the ground-state polarization its fields imply.

    The ground state of ``(w_x sigma_x + w_z sigma_z)/2`` has
    ``<sigma> = -(w_x, w_z) / eps``.  When the effective fields vanish any
    polarization is self-consistent and the angular energy gradient is
    returned instead.
    """
    f = dressed_fields(spec, state)
    eps = f.gap
    if eps == 0:
        return abs(energy_gradient(spec, state))
    return math.hypot(state.m_x + f.omega_x / eps, state.m_z + f.omega_z / eps)


def _make_state(spec: ModelSpec, m_x: float, m_z: float, coexistence: bool = False) -> MeanFieldState:
    vx, vz = static_couplings(spec)
    energy = 0.5 * (spec.omega_x * m_x + spec.omega_z * m_z) + 0.5 * (vx * m_x**2 + vz * m_z**2) + _energy_offset(spec)
    return MeanFieldState(float(m_x), float(m_z), _dressed(spec, m_x, m_z).gap, float(energy), coexistence)


def _polish(spec: ModelSpec, t0: float) -> float:
    """Refine a minimum located to ~sqrt(eps) by a root solve of e'(theta)."""
    g0 = _de(spec, t0)
    if g0 == 0:
        return t0
    h = 1e-7
    for _ in range(40):
        a, b = t0 - h, t0 + h
        ga, gb = _de(spec, a), _de(spec, b)
        if ga <= 0 <= gb:
            if ga == 0:
                return a
            if gb == 0:
                return b
            return optimize.brentq(lambda t: _de(spec, t), a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        h *= 2
        if h > 0.5:
            break
    return t0


def _local_minima(spec: ModelSpec) -> list[float]:
    grid = -np.pi + 2 * np.pi * np.arange(N_SEEDS) / N_SEEDS
    e = variational_energy(spec, grid)
    fun = lambda t: float(variational_energy(spec, t))  # noqa: E731
    found = []
    if np.all(e == e[0]):
        # flat to rounding: a field too small to resolve still fixes the direction
        if spec.omega_x or spec.omega_z:
            return [math.atan2(-spec.omega_x, -spec.omega_z)]
        return list(grid)
    for i in range(N_SEEDS):
        left, right = e[i - 1], e[(i + 1) % N_SEEDS]
        if e[i] <= left and e[i] <= right:
            a, b, c = grid[i] - 2 * np.pi / N_SEEDS, grid[i], grid[i] + 2 * np.pi / N_SEEDS
            if e[i] == left or e[i] == right:
                t = b
            else:
                res = optimize.minimize_scalar(fun, bracket=(a, b, c), method="golden", tol=THETA_TOL)
                t = float(res.x)
            found.append(_polish(spec, t))
    return found


def _canonical(spec: ModelSpec, m_x: float, m_z: float) -> tuple[float, float]:
    # symmetry tie-break: energy even in m_r when the bare field omega_r vanishes
    if spec.omega_x == 0:
        m_x = abs(m_x)
    if spec.omega_z == 0:
        m_z = abs(m_z)
    return m_x, m_z


def _numeric_minimum(spec: ModelSpec) -> MeanFieldState:
    thetas = _local_minima(spec)
    if not thetas:
        raise SolverError("no local minimum found on the seed grid", {"spec": spec})
    cands = []
    for t in thetas:
        m_x, m_z = _canonical(spec, math.sin(t), math.cos(t))
        if abs(m_x) < 1e-15:
            m_x = 0.0
        if abs(m_z) < 1e-15:
            m_z = 0.0
        e = float(variational_energy(spec, math.atan2(m_x, m_z)))
        if not any(abs(m_x - c[1]) < 1e-9 and abs(m_z - c[2]) < 1e-9 for c in cands):
            cands.append((e, m_x, m_z))
    e_min = min(c[0] for c in cands)
    lowest = [c for c in cands if c[0] - e_min <= DEGENERACY_TOL]
    # among degenerate minima keep the one with the smallest |m_x|: the coupling
    # enters only through -|V_x| m_x**2 / 2, so that branch is lower just below
    # the degeneracy point
    lowest.sort(key=lambda c: (c[1] ** 2, -c[2], c[0]))
    _, m_x, m_z = lowest[0]
    state = _make_state(spec, m_x, m_z, coexistence=len(lowest) > 1)
    if self_consistency_residual(state, spec) > 1e-10 and state.gap > 0:
        raise SolverError(
            "mean-field minimum is not stationary to 1e-10",
            {"spec": spec, "m_x": m_x, "m_z": m_z, "residual": self_consistency_residual(state, spec)},
        )
    return state


def _closed_form(spec: ModelSpec) -> MeanFieldState | None:
    """Piecewise solution for models with a single ordering channel on ``x``."""
    if spec.omega_x != 0 or spec.omega_z <= 0:
        return None
    vx, _ = static_couplings(spec)
    a = -vx / 2  # e = omega_z m_z / 2 - a m_x**2
    if a <= 0 or spec.omega_z >= 4 * a:
        return _make_state(spec, 0.0, -1.0)
    mu = spec.omega_z / (4 * a)
    return _make_state(spec, math.sqrt(1 - mu * mu), -mu)


def solve_mean_field(spec: ModelSpec) -> MeanFieldState:
    """Global zero-temperature minimizer of the variational energy.

    Dicke, Heisenberg and longitudinal models use the closed-form piecewise
    solution and check it against the numeric minimization; the transverse
    model is minimized numerically over the polarization angle with a
    64-seed multistart, golden-section refinement and a final root polish
    of the angular derivative.

    Raises
    ------
    SolverError
        If the numeric minimum is not stationary, or disagrees with the
        closed form.
    """
    numeric = _numeric_minimum(spec)
    if spec.kind == "lmg_transverse":
        return numeric
    closed = _closed_form(spec)
    if closed is None:
        return numeric
    if abs(closed.m_x - numeric.m_x) > 1e-6 or abs(closed.energy_per_site - numeric.energy_per_site) > 1e-10:
        raise SolverError(
            "closed-form and numeric mean-field solutions disagree",
            {"closed": closed, "numeric": numeric, "spec": spec},
        )
    return closed
