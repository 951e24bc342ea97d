"""Parameter sweeps producing spectrum tables."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import RunConfig
from .core import ComplexFrequency, InteractionChannel, dressed_response
from .errors import CavityResponseError
from .meanfield import ModelSpec, model_channels, solve_mean_field
from .models import spin_model_bare_susceptibility, spin_model_poles
from .qhe import QheSpec, qhe_conductivity, qhe_poles

__all__ = ["SpectrumTable", "run_sweep", "spec_for", "evaluate_point"]

CONDUCTIVITY_COMPONENTS = ("sigma_xx", "sigma_xy", "sigma_yx", "sigma_yy")


@dataclass
class SpectrumTable:
    """Sweep results on an ``(axis, omega)`` grid.

    Attributes
    ----------
    axis, omega : ndarray
        Grid coordinates.
    values : dict
        Observable name to complex array of shape ``(len(axis), len(omega))``.
        Rows of failed axis points are NaN.
    poles : dict
        Axis index to the sorted pole list, when poles were requested.
    metadata : dict
        Config echo, package version, axis name and failed points.
    """

    axis: np.ndarray
    omega: np.ndarray
    values: dict
    poles: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = (len(self.axis), len(self.omega))
        for name, arr in self.values.items():
            if np.shape(arr) != shape:
                raise ValueError(f"observable {name!r} has shape {np.shape(arr)}, expected {shape}")

    @property
    def failed(self) -> list[int]:
        return [f["index"] for f in self.metadata.get("failed", [])]


def spec_for(config: RunConfig, axis_value: float):
    """Model specification at one axis point."""
    if config.model == "qhe":
        kw = dict(
            cavity_freq=config.cavity_freq,
            plasma_freq=config.plasma_freq,
            cyclotron_freq=config.cyclotron_freq,
            broadening=config.delta,
            filling=config.filling,
        )
        if config.axis in ("plasma_freq", "cyclotron_freq"):
            kw[config.axis] = float(axis_value)
        elif config.axis == "none":
            kw["plasma_freq"] = float(axis_value)
        return QheSpec(**kw)
    channel = InteractionChannel(float(axis_value), config.cavity_freq, config.zeta, config.static_shift)
    return ModelSpec(config.model, config.omega_z, config.omega_x, config.J, channel, config.z_coord)


def _observable_names(config: RunConfig) -> list[str]:
    names = []
    for obs in config.observables:
        if obs == "conductivity":
            names.extend(CONDUCTIVITY_COMPONENTS)
        elif obs != "poles":
            names.append(obs)
    return names


def evaluate_point(config: RunConfig, axis_value: float) -> tuple[dict, list | None]:
    """Observables on the frequency grid and, if requested, the poles at one axis point."""
    spec = spec_for(config, axis_value)
    w = ComplexFrequency(config.omega_values(), config.delta)
    want = set(config.observables)
    out = {}
    poles = None
    if isinstance(spec, QheSpec):
        if "conductivity" in want:
            t = qhe_conductivity(spec, w)
            for name in CONDUCTIVITY_COMPONENTS:
                out[name] = np.asarray(getattr(t, name), dtype=complex)
        if "poles" in want:
            poles = qhe_poles(spec)
        return out, poles
    state = solve_mean_field(spec)
    grid_obs = want - {"poles"}
    if grid_obs:
        bare = spin_model_bare_susceptibility(spec, state)
        resp = dressed_response(bare, model_channels(spec), w)
        if "im_photon" in want:
            out["im_photon"] = -np.asarray(resp.photon).imag + 0j
        if "im_chi_xx" in want:
            out["im_chi_xx"] = -np.asarray(resp.chi("x", "x")).imag + 0j
        if "im_chi_zz" in want:
            out["im_chi_zz"] = -np.asarray(resp.chi("z", "z")).imag + 0j
    if "poles" in want:
        poles = spin_model_poles(spec, ("photon", "x", "z"), state=state)
    return out, poles


def run_sweep(config: RunConfig, threads: int = 1) -> SpectrumTable:
    """Evaluate every requested observable over the configured grid.

    Axis points are independent and may run on ``threads`` worker threads;
    results are assembled in axis order, so the table does not depend on
    the thread count.  A point whose solve fails yields NaN rows and an
    entry in ``metadata["failed"]``; the sweep continues.
    """
    axis = config.axis_values()
    omega = config.omega_values()
    names = _observable_names(config)

    def task(i):
        try:
            return i, evaluate_point(config, axis[i]), None
        except (CavityResponseError, ArithmeticError) as exc:
            return i, None, f"{type(exc).__name__}: {exc}"

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(task, range(len(axis))))
    else:
        results = [task(i) for i in range(len(axis))]

    values = {n: np.full((len(axis), len(omega)), np.nan + 0j) for n in names}
    poles = {}
    failed = []
    for i, res, err in results:
        if err is not None:
            failed.append({"index": i, "axis": float(axis[i]), "error": err})
            continue
        obs, pl = res
        for n in names:
            values[n][i] = obs[n]
        if pl is not None:
            poles[i] = [float(p) for p in pl]
    if config.axis != "none":
        axis_name = config.axis
    else:
        axis_name = "plasma_freq" if config.model == "qhe" else "coupling"
    metadata = {
        "version": __version__,
        "axis_name": axis_name,
        "config": config.as_dict(),
        "failed": failed,
    }
    return SpectrumTable(axis, omega, values, poles, metadata)
