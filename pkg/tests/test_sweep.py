import dataclasses

import numpy as np
import pytest

from cavity_response import InteractionChannel, ModelSpec, SpectrumTable, parse_config, run_sweep, spin_model_response
from cavity_response import sweep as sweep_mod
from cavity_response.errors import SolverError


def cfg(text):
    return parse_config(text)


def test_dicke_map_softening_at_critical_coupling():
    c = cfg("model = dicke\naxis_max = 1.2\naxis_points = 25\nomega_points = 601")
    t = run_sweep(c)
    ridge = t.omega[np.argmax(t.values["im_photon"].real, axis=1)]
    lam = t.axis
    assert ridge[np.argmin(np.abs(lam - 0.5))] < 0.1
    assert np.all(ridge[lam < 0.3] > 0.5)


def test_dicke_zeta_one_map_partial_softening():
    c = cfg("model = dicke\nzeta = 1\naxis_max = 1.2\naxis_points = 25\nomega_points = 601")
    t = run_sweep(c)
    ridge = t.omega[np.argmax(t.values["im_photon"].real, axis=1)]
    assert ridge.min() > 0.2


def test_single_point_matches_library_call():
    c = cfg("model = dicke\naxis = none\ncoupling = 0.3\nomega_min = 0.7\nomega_max = 0.9\nomega_points = 2")
    t = run_sweep(c)
    direct = spin_model_response(ModelSpec("dicke", channel=InteractionChannel(0.3)), c.omega_values() + 1e-3j)
    np.testing.assert_array_equal(t.values["im_photon"][0].real, -direct.photon.imag)


def test_poles_observable():
    t = run_sweep(cfg("model = dicke\naxis = none\ncoupling = 0.25\nobservables = poles"))
    np.testing.assert_allclose(t.poles[0], [np.sqrt(0.5), np.sqrt(1.5)], atol=1e-8)


def test_qhe_poles_and_conductivity_components():
    t = run_sweep(cfg("model = qhe\naxis = none\nplasma_freq = 0.5\ncyclotron_freq = 1\nobservables = conductivity, poles"))
    assert set(t.values) == {"sigma_xx", "sigma_xy", "sigma_yx", "sigma_yy"}
    from cavity_response import QheSpec, landau_polaritons

    np.testing.assert_allclose(t.poles[0], landau_polaritons(QheSpec(1.0, 0.5, 1.0)), atol=1e-8)


def test_threads_do_not_change_results():
    c = cfg("model = lmg_transverse\nomega_x = 0.2\nJ = 0.25\naxis_points = 8\nomega_points = 50\nobservables = im_photon, im_chi_zz, poles")
    a, b = run_sweep(c, threads=1), run_sweep(c, threads=4)
    for k in a.values:
        np.testing.assert_array_equal(a.values[k], b.values[k])
    assert a.poles == b.poles


def test_failed_point_is_recorded(monkeypatch):
    real = sweep_mod.evaluate_point

    def flaky(config, a):
        if a > 0.5:
            raise SolverError("no convergence")
        return real(config, a)

    monkeypatch.setattr(sweep_mod, "evaluate_point", flaky)
    t = run_sweep(cfg("model = dicke\naxis_points = 3\nomega_points = 4"))
    assert t.failed == [2]
    assert np.all(np.isnan(t.values["im_photon"][2]))
    assert np.all(np.isfinite(t.values["im_photon"][:2]))
    assert "SolverError" in t.metadata["failed"][0]["error"]


def test_metadata_echoes_config():
    c = cfg("model = dicke\naxis_points = 2\nomega_points = 3")
    meta = run_sweep(c).metadata
    assert set(meta["config"]) == {f.name for f in dataclasses.fields(c)}
    assert meta["axis_name"] == "coupling" and meta["version"]


def test_table_shape_validation():
    with pytest.raises(ValueError):
        SpectrumTable(np.zeros(2), np.zeros(3), {"x": np.zeros((3, 2))})
