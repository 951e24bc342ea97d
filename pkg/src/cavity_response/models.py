"""Collective spin models: bare inputs, dressed responses and closed-form polaritons."""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Callable

import numpy as np

from .core import (
    BareSusceptibility,
    DressedResponse,
    Frequency,
    as_wplus,
    dress_matter_multichannel,
    dressed_response,
)
from .errors import DegenerateSpinError
from .poles import find_poles, merge_poles
from .meanfield import (
    MeanFieldState,
    ModelSpec,
    SpinFields,
    dressed_fields,
    free_spin_susceptibility,
    model_channels,
    solve_mean_field,
)

__all__ = [
    "spin_model_bare_susceptibility",
    "spin_model_response",
    "heisenberg_effective_response",
    "dicke_polaritons",
    "lmg_longitudinal_polaritons",
    "model_polaritons",
    "pole_conditions",
    "default_pole_bracket",
    "spin_model_poles",
]


def _labels(spec: ModelSpec) -> tuple:
    return ("x", "z") if spec.kind == "lmg_transverse" else ("x",)


def spin_model_bare_susceptibility(spec: ModelSpec, state: MeanFieldState | None = None) -> BareSusceptibility:
    """Free-spin response at the model's self-consistent fields.

    Labels are ``("x",)`` for the Dicke, Heisenberg and longitudinal models
    and ``("x", "z")`` for the transverse model.
    """
    if spec.kind == "heisenberg":
        spec = _as_dicke(spec)
    if state is None:
        state = solve_mean_field(spec)
    fields = dressed_fields(spec, state)
    if fields.gap == 0:
        raise DegenerateSpinError("effective fields vanish; bare response undefined")
    labels = _labels(spec)
    n = len(labels)

    def func(wp: np.ndarray, fields: SpinFields = fields) -> np.ndarray:
        return free_spin_susceptibility(fields, wp)[..., :n, :n]

    return BareSusceptibility(labels, func)


def _as_dicke(spec: ModelSpec) -> ModelSpec:
    return replace(spec, kind="dicke", J=0.0, z_coord=0, channel=replace(spec.channel, zeta=0.0))


def heisenberg_effective_response(spec: ModelSpec) -> BareSusceptibility:
    """Bare response of the ordered Heisenberg ferromagnet.

    The isotropic exchange only shifts the energy by ``-J z``, so the
    response is that of a Dicke model with ``zeta = 0``.  The magnon pole
    sits at ``omega**2 = omega_z**2 + (4 lam**2 m_x / Omega)**2``.
    """
    return spin_model_bare_susceptibility(_as_dicke(spec))


def spin_model_response(spec: ModelSpec, w: Frequency, state: MeanFieldState | None = None) -> DressedResponse:
    """Dressed photon propagators and matter responses of a spin model."""
    if spec.kind == "heisenberg":
        spec = _as_dicke(spec)
    bare = spin_model_bare_susceptibility(spec, state)
    return dressed_response(bare, model_channels(spec), w)


def _roots_from_sum_product(s: float, disc: float, prod: float) -> tuple[float, float]:
    """Roots of ``x**2 - s x + prod`` given the discriminant, as frequencies.

    The small root is taken as ``prod / x_plus`` to avoid cancellation near
    a soft mode.
    """
    x_plus = 0.5 * (s + math.sqrt(max(disc, 0.0)))
    x_minus = prod / x_plus if x_plus > 0 else 0.0
    if x_minus < 0:
        if x_minus > -1e-13 * x_plus:
            x_minus = 0.0
        else:
            raise ValueError("closed form evaluated outside its stable branch")
    # at a degeneracy prod / x_plus can round one ulp above x_plus
    x_minus = min(x_minus, x_plus)
    return math.sqrt(x_minus), math.sqrt(x_plus)


def _normal_branch(wz: float, om: float, lam: float) -> tuple[float, float]:
    # 2 W^2 = wz^2 + om^2 +- sqrt((wz^2 - om^2)^2 + 16 lam^2 wz om)
    s = wz * wz + om * om
    disc = (wz * wz - om * om) ** 2 + 16 * lam * lam * wz * om
    prod = wz * wz * om * om - 4 * lam * lam * wz * om
    return _roots_from_sum_product(s, disc, prod)


def dicke_polaritons(omega_z: float, cavity_freq: float, coupling: float, zeta: float = 0.0) -> tuple[float, float]:
    """Exact Dicke polaritons ``(Omega_minus, Omega_plus)``.

    For ``zeta = 0`` the normal branch holds for ``lam**2 < omega_z Omega / 4``
    and the superradiant branch (``mu = omega_z Omega / (4 lam**2)``) otherwise.
    For ``zeta = 1`` the normal branch is evaluated at
    ``wz_t**2 = omega_z (omega_z + 4 lam**2 / Omega)`` and
    ``lam_t = lam (1 + 4 lam**2 / (omega_z Omega))**(-1/4)``.
    """
    wz, om, lam = float(omega_z), float(cavity_freq), float(coupling)
    if zeta == 1:
        wzt = math.sqrt(wz * (wz + 4 * lam * lam / om))
        lamt = lam * (1 + 4 * lam * lam / (wz * om)) ** -0.25
        return _normal_branch(wzt, om, lamt)
    if zeta != 0:
        raise ValueError("closed-form Dicke polaritons exist for zeta in {0, 1} only")
    if lam * lam < wz * om / 4:
        return _normal_branch(wz, om, lam)
    eps2 = (4 * lam * lam / om) ** 2  # (omega_z / mu)**2
    s = eps2 + om * om
    disc = (eps2 - om * om) ** 2 + 4 * wz * wz * om * om
    prod = eps2 * om * om - wz * wz * om * om
    return _roots_from_sum_product(s, disc, prod)


def lmg_longitudinal_polaritons(omega_z: float, cavity_freq: float, coupling: float, J: float) -> tuple[float, float]:
    """Exact polaritons of the longitudinal Dicke-LMG model.

    ``J_eff = lam**2 / Omega + J``.  For ``omega_z > 4 J_eff`` the normal
    branch is the Dicke one at ``wz_t**2 = omega_z (omega_z - 4 J)`` and
    ``lam_t = lam (1 - 4 J / omega_z)**(-1/4)``.  Otherwise, with
    ``mu = omega_z / (4 J_eff)`` and ``A = omega_z**2 / mu**2 - 4 mu J omega_z``::

        2 W**2 = A + Omega**2 +- sqrt((A - Omega**2)**2 + 16 lam**2 mu omega_z Omega)
    """
    wz, om, lam, J = float(omega_z), float(cavity_freq), float(coupling), float(J)
    j_eff = lam * lam / om + J
    if wz > 4 * j_eff:
        wzt = math.sqrt(wz * (wz - 4 * J))
        lamt = lam * (1 - 4 * J / wz) ** -0.25
        return _normal_branch(wzt, om, lamt)
    mu = wz / (4 * j_eff)
    a = (4 * j_eff) ** 2 - 4 * mu * J * wz
    s = a + om * om
    disc = (a - om * om) ** 2 + 16 * lam * lam * mu * wz * om
    prod = a * om * om - 4 * lam * lam * mu * wz * om
    return _roots_from_sum_product(s, disc, prod)


def model_polaritons(spec: ModelSpec) -> tuple[float, float]:
    """Closed-form polaritons where the model has them (not the transverse model)."""
    ch = spec.channel
    if spec.kind in ("dicke", "heisenberg"):
        zeta = 0.0 if spec.kind == "heisenberg" else ch.zeta
        return dicke_polaritons(spec.omega_z, ch.cavity_freq, ch.coupling, zeta)
    if spec.kind == "lmg_longitudinal":
        if ch.zeta != 0 or ch.static_shift != 0:
            raise ValueError("closed form assumes zeta = 0 and no extra static shift")
        return lmg_longitudinal_polaritons(spec.omega_z, ch.cavity_freq, ch.coupling, spec.J)
    raise ValueError(f"no closed-form polaritons for {spec.kind!r}")


def pole_conditions(spec: ModelSpec, state: MeanFieldState | None = None) -> dict[str, Callable]:
    """Real-valued pole conditions of the dressed responses at zero broadening.

    Returns
    -------
    dict
        ``"photon"`` maps ``w`` to the denominator of the photon propagator
        (equation-of-motion form, non-cavity channels folded into the bare
        response).  ``"x"`` (and ``"z"`` for the transverse model) map ``w``
        to the inverse dressed susceptibility ``1 / chi_rr``.
        ``"photon_singular"`` is the inverse of the folded response; its
        roots are where ``"photon"`` diverges.  All are functions of
        ``w**2`` only, so they may be scanned in ``w**2``.
    """
    if spec.kind == "heisenberg":
        spec = _as_dicke(spec)
    bare = spin_model_bare_susceptibility(spec, state)
    channels = model_channels(spec)
    cavity, label = channels[0]
    i = bare.index(label)
    lam, om, zeta = cavity.coupling, cavity.cavity_freq, cavity.zeta

    def folded(wp):
        chi = dress_matter_multichannel(bare, channels[1:], wp)[..., i, i]
        if cavity.static_shift != 0:
            with np.errstate(invalid="ignore", divide="ignore"):
                chi = chi / (1 + cavity.static_shift * chi)
        return chi

    def photon(w):
        wp = as_wplus(w)
        chi = folded(wp)
        w2 = wp * wp
        with np.errstate(invalid="ignore", over="ignore"):
            coupling_term = 2 * lam**2 * (zeta * (w2 - om**2) + om**2) / om * chi if lam else 0.0
        return (w2 - om**2) + coupling_term

    def photon_singular(w):
        chi = folded(as_wplus(w))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(chi == 0, complex(np.inf, np.nan), 1 / chi)

    def inverse(r):
        j = bare.index(r)

        def f(w):
            chi = dress_matter_multichannel(bare, channels, as_wplus(w))[..., j, j]
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(chi == 0, complex(np.inf, np.nan), 1 / chi)

        return f

    out = {"photon": photon, "photon_singular": photon_singular}
    for r in bare.labels:
        out[r] = inverse(r)
    return out


def default_pole_bracket(spec: ModelSpec, state: MeanFieldState | None = None) -> tuple[float, float]:
    """A frequency interval that contains every polariton of ``spec``."""
    if spec.kind == "heisenberg":
        spec = _as_dicke(spec)
    if state is None:
        state = solve_mean_field(spec)
    eps = dressed_fields(spec, state).gap
    ch = spec.channel
    lam, om = ch.coupling, ch.cavity_freq
    scale = eps + om + 2 * lam + 4 * lam * lam / om + 4 * spec.J + abs(ch.static_shift)
    return 0.0, 1.5 * scale


def spin_model_poles(
    spec: ModelSpec,
    which: tuple = ("photon", "x"),
    bracket: tuple[float, float] | None = None,
    state: MeanFieldState | None = None,
) -> list[float]:
    """Union of the poles of the selected dressed responses at zero broadening.

    ``which`` picks among ``"photon"``, ``"x"`` and (transverse model) ``"z"``.
    """
    if state is None:
        state = solve_mean_field(_as_dicke(spec) if spec.kind == "heisenberg" else spec)
    conds = pole_conditions(spec, state)
    if bracket is None:
        bracket = default_pole_bracket(spec, state)
    found = []
    for k in which:
        if k not in conds or k == "photon_singular":
            continue
        singular = find_poles(conds["photon_singular"], bracket, squared=True) if k == "photon" else ()
        found.append(find_poles(conds[k], bracket, squared=True, singularities=singular))
    return merge_poles(found)

