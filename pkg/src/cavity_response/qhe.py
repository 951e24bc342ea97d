"""Two-dimensional electron gas in a magnetic field coupled to a cavity.

Reduced units: current responses ``G_rs`` are in units of ``N e**2 / m``.
Conductivities are reported as ``sigma_xx / sigma_D`` and
``sigma_yy / sigma_D`` with ``sigma_D = e**2 rho / (m delta)`` (the Drude
value), and ``sigma_xy / (e**2 nu / h)``, ``sigma_yx / (e**2 nu / h)``.
Since ``e**2 nu / h = e**2 rho / (m omega_c)`` the Kubo formula gives

    sigma_rs / sigma_D       = (i delta / w)   (delta_rs + G_rs)
    sigma_rs / (e^2 nu / h)  = (i omega_c / w) (delta_rs + G_rs)

where ``w = omega + i delta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_DELTA, ComplexFrequency, Frequency, as_wplus, symmetrized_free_propagator
from .poles import find_poles, merge_poles

__all__ = [
    "QheSpec",
    "ConductivityTensor",
    "qhe_bare_current_response",
    "qhe_dressed_current_response",
    "qhe_closed_form_current_response",
    "landau_polaritons",
    "qhe_conductivity",
    "qhe_dc_conductivity",
    "free_gas_sigma_xx",
    "qhe_poles",
]

_PAIRS = {("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")}


@dataclass(frozen=True)
class QheSpec:
    """Quantum-Hall cavity parameters.

    Parameters
    ----------
    cavity_freq : float
        Bare cavity frequency Omega.
    plasma_freq : float
        Plasma frequency omega_p.
    cyclotron_freq : float
        Cyclotron frequency omega_c (non-negative).
    broadening : float
        delta used by :func:`qhe_conductivity` when given a bare frequency.
    filling : float
        Filling factor; only labels the Hall unit ``e**2 nu / h``.
    """

    cavity_freq: float = 1.0
    plasma_freq: float = 0.0
    cyclotron_freq: float = 0.0
    broadening: float = DEFAULT_DELTA
    filling: float = 1.0

    def __post_init__(self):
        if self.cyclotron_freq < 0:
            raise ValueError("cyclotron_freq must be non-negative")
        if self.broadening < 0:
            raise ValueError("broadening must be non-negative")
        if not self.renormalized_freq > 0:
            raise ValueError("renormalized cavity frequency must be positive")

    @property
    def renormalized_freq(self) -> float:
        """``sqrt(Omega**2 + omega_p**2)``."""
        return math.hypot(self.cavity_freq, self.plasma_freq)


@dataclass(frozen=True)
class ConductivityTensor:
    """Optical conductivity in reduced units (see module docstring)."""

    sigma_xx: complex
    sigma_xy: complex
    sigma_yx: complex
    sigma_yy: complex


def _check(r: str, s: str):
    if (r, s) not in _PAIRS:
        raise ValueError(f"component must be among x, y; got {(r, s)}")


def _bare_all(spec: QheSpec, wp: np.ndarray):
    wc = spec.cyclotron_freq
    with np.errstate(divide="ignore", invalid="ignore"):
        a = 1 / (wp + wc)
        b = 1 / (wp - wc)
    a = np.where(wp + wc == 0, complex(np.inf, np.nan), a)
    b = np.where(wp - wc == 0, complex(np.inf, np.nan), b)
    gxx = -wc * 0.5 * (a - b)
    gxy = 1j * wc * 0.5 * (a + b)
    if wc == 0:
        gxx = np.zeros_like(wp)
        gxy = np.zeros_like(wp)
    return gxx, gxy, -gxy, gxx


def _pick(values, r: str, s: str):
    gxx, gxy, gyx, gyy = values
    out = {("x", "x"): gxx, ("x", "y"): gxy, ("y", "x"): gyx, ("y", "y"): gyy}[(r, s)]
    return complex(out) if np.ndim(out) == 0 else out


def qhe_bare_current_response(spec: QheSpec, r: str, s: str, w: Frequency):
    """Bare current response ``G0_rs`` of the electron gas.

    ``G0_xx = G0_yy = -omega_c (1/(w + omega_c) - 1/(w - omega_c)) / 2`` and
    ``G0_xy = -G0_yx = i omega_c (1/(w + omega_c) + 1/(w - omega_c)) / 2``.
    """
    _check(r, s)
    return _pick(_bare_all(spec, as_wplus(w)), r, s)


def _dressed_all(spec: QheSpec, wp: np.ndarray):
    wt = spec.renormalized_freq
    wpl2 = spec.plasma_freq**2
    gxx0, gxy0, gyx0, gyy0 = _bare_all(spec, wp)
    d0s = np.asarray(symmetrized_free_propagator(wt, wp), dtype=complex)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        v = wpl2 * d0s
        photon = (wpl2 / wt**2) * (wt / 2) * d0s  # cavity current channel
        vert = 1 + photon
        # the coupling m / (2 e^2 wt N) becomes 1 / (2 wt) in reduced units
        den = 1 - v * gxx0 / (2 * wt)
        gxy = vert * gxy0 / den
        gyx = vert * gyx0 / den
        gxx = vert**2 * gxx0 / den + photon
        gyy = (gyy0 + v / (2 * wt) * (gxy0 * gyx0 - gxx0 * gyy0)) / den
    return gxx, gxy, gyx, gyy


def qhe_dressed_current_response(spec: QheSpec, r: str, s: str, w: Frequency):
    """Dressed current response from the bare one (implicit route).

    The cavity enters through ``V = omega_p**2 D0s(w)``, with ``D0s`` the
    symmetrized propagator at the renormalized frequency, plus a purely
    photonic additive term in ``G_xx``.
    """
    _check(r, s)
    return _pick(_dressed_all(spec, as_wplus(w)), r, s)


def _closed_all(spec: QheSpec, wp: np.ndarray):
    wc2 = spec.cyclotron_freq**2
    wpl2 = spec.plasma_freq**2
    om2 = spec.cavity_freq**2
    wt2 = om2 + wpl2
    w2 = wp * wp
    den = (w2 - wt2) * (w2 - wc2) - wpl2 * wc2
    with np.errstate(divide="ignore", invalid="ignore"):
        gxy = 1j * spec.cyclotron_freq * wp * (w2 - om2) / den
        gxx = ((wc2 + wpl2) * w2 - om2 * wc2) / den
        gyy = wc2 * (w2 - om2) / den
    return gxx, gxy, -gxy, gyy


def qhe_closed_form_current_response(spec: QheSpec, r: str, s: str, w: Frequency):
    """Explicit rational dressed current responses.

    With ``Q = (w**2 - wt**2)(w**2 - omega_c**2) - omega_p**2 omega_c**2``::

        G_xy = i omega_c w (w**2 - Omega**2) / Q
        G_xx = (omega_c**2 + omega_p**2)(w**2 - Omega**2 omega_c**2 / (omega_c**2 + omega_p**2)) / Q
        G_yy = omega_c**2 (w**2 - Omega**2) / Q
    """
    _check(r, s)
    return _pick(_closed_all(spec, as_wplus(w)), r, s)


def landau_polaritons(spec: QheSpec) -> tuple[float, float]:
    """Landau polaritons from
    ``2 W**2 = wt**2 + omega_c**2 +- sqrt((wt**2 - omega_c**2)**2 + 4 omega_c**2 omega_p**2)``.
    """
    wt2 = spec.renormalized_freq**2
    wc2 = spec.cyclotron_freq**2
    s = wt2 + wc2
    x_plus = 0.5 * (s + math.sqrt((wt2 - wc2) ** 2 + 4 * wc2 * spec.plasma_freq**2))
    x_minus = wc2 * spec.cavity_freq**2 / x_plus  # product rule
    x_minus = min(x_minus, x_plus)  # rounding at a degeneracy
    return math.sqrt(x_minus), math.sqrt(x_plus)


def _wplus_of(spec: QheSpec, w) -> np.ndarray:
    if isinstance(w, ComplexFrequency):
        return as_wplus(w)
    wp = np.asarray(w)
    if np.iscomplexobj(wp):
        return wp.astype(complex)
    return wp + 1j * spec.broadening


def qhe_conductivity(spec: QheSpec, w=0.0) -> ConductivityTensor:
    """Kubo conductivity from the dressed current responses.

    ``w`` may be a :class:`ComplexFrequency`, a complex ``omega + i delta``,
    or a real frequency, in which case ``spec.broadening`` is used.  The
    broadening entering the reduced units is ``Im w``.
    """
    wp = _wplus_of(spec, w)
    delta = wp.imag
    gxx, gxy, gyx, gyy = _dressed_all(spec, wp)
    wc = spec.cyclotron_freq
    with np.errstate(divide="ignore", invalid="ignore"):
        drude = 1j * delta / wp
        hall = 1j * wc / wp
    t = ConductivityTensor(drude * (1 + gxx), hall * gxy, hall * gyx, drude * (1 + gyy))
    if np.ndim(wp) == 0:
        return ConductivityTensor(*(complex(x) for x in (t.sigma_xx, t.sigma_xy, t.sigma_yx, t.sigma_yy)))
    return t


def qhe_dc_conductivity(spec: QheSpec, delta: float | None = None) -> ConductivityTensor:
    """The dc conductivity from its closed forms, with ``P = (W-**2 + d**2)(W+**2 + d**2)``::

        sigma_xy = omega_c**2 (Omega**2 + d**2) / P                      [e^2 nu / h]
        sigma_xx = 1 - (omega_c**2 + omega_p**2)(Omega**2 omega_c**2 / (omega_c**2 + omega_p**2) + d**2) / P
        sigma_yy = 1 - omega_c**2 (Omega**2 + d**2) / P                  [sigma_D]
    """
    d2 = (spec.broadening if delta is None else delta) ** 2
    lo, hi = landau_polaritons(spec)
    p = (lo * lo + d2) * (hi * hi + d2)
    wc2, wpl2, om2 = spec.cyclotron_freq**2, spec.plasma_freq**2, spec.cavity_freq**2
    sxy = wc2 * (om2 + d2) / p
    if wc2 + wpl2 > 0:
        sxx = 1 - (wc2 + wpl2) * (om2 * wc2 / (wc2 + wpl2) + d2) / p
    else:
        sxx = 1.0
    syy = 1 - wc2 * (om2 + d2) / p
    return ConductivityTensor(complex(sxx), complex(sxy), complex(-sxy), complex(syy))


def free_gas_sigma_xx(spec: QheSpec, w=0.0):
    """``sigma_xx / sigma_D = (i d / w)(1 + omega_p**2 / (w**2 - wt**2))`` at zero field."""
    wp = _wplus_of(spec, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 1j * wp.imag / wp * (1 + spec.plasma_freq**2 / (wp * wp - spec.renormalized_freq**2))
    return complex(out) if np.ndim(out) == 0 else out


def qhe_poles(spec: QheSpec, bracket: tuple[float, float] | None = None) -> list[float]:
    """Poles of the dressed ``G_xx`` and ``G_yy`` at zero broadening."""
    if bracket is None:
        bracket = (0.0, 1.5 * (spec.renormalized_freq + spec.cyclotron_freq + spec.plasma_freq))

    def inv(k):
        def f(w):
            g = _dressed_all(spec, as_wplus(w))[k]
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(g == 0, complex(np.inf, np.nan), 1 / g)

        return f

    return merge_poles(find_poles(inv(k), bracket, squared=True) for k in (0, 3))
