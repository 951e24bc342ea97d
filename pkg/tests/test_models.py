import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavity_response import (
    InteractionChannel,
    ModelSpec,
    dicke_polaritons,
    free_spin_susceptibility,
    heisenberg_effective_response,
    lmg_longitudinal_polaritons,
    model_polaritons,
    solve_mean_field,
    spin_model_bare_susceptibility,
    spin_model_poles,
    spin_model_response,
)
from cavity_response.meanfield import SpinFields


def dicke(lam, zeta=0.0, wz=1.0, om=1.0):
    return ModelSpec("dicke", omega_z=wz, channel=InteractionChannel(lam, om, zeta))


# --- closed-form polaritons ----------------------------------------------


def test_dicke_decoupled():
    assert dicke_polaritons(1.0, 2.0, 0.0) == pytest.approx((1.0, 2.0), abs=1e-15)


def test_dicke_normal_branch_example():
    lo, hi = dicke_polaritons(1.0, 1.0, 0.25)
    assert lo == pytest.approx(np.sqrt(0.5), abs=1e-14)
    assert hi == pytest.approx(np.sqrt(1.5), abs=1e-14)


def test_dicke_softening_at_critical_coupling():
    assert dicke_polaritons(1.0, 1.0, 0.5)[0] == pytest.approx(0.0, abs=1e-7)
    assert dicke_polaritons(1.0, 1.0, 0.5 - 1e-6)[0] < 3e-3


def test_dicke_zeta_one_partial_softening():
    lows = [dicke_polaritons(1.0, 1.0, lam, 1.0)[0] for lam in np.linspace(0, 1.2, 121)]
    assert min(lows) > 0.3


def test_dicke_rejects_other_zeta():
    with pytest.raises(ValueError):
        dicke_polaritons(1.0, 1.0, 0.3, 0.5)


def test_longitudinal_reduces_to_dicke_at_zero_J():
    for lam in np.linspace(0, 1.2, 25):
        assert lmg_longitudinal_polaritons(1.0, 1.0, lam, 0.0) == dicke_polaritons(1.0, 1.0, lam)


def test_longitudinal_zero_coupling_splitting():
    lo, hi = lmg_longitudinal_polaritons(1.0, 1.0, 0.0, 0.1)
    assert lo == pytest.approx(np.sqrt(0.6), abs=1e-14)
    assert hi == pytest.approx(1.0, abs=1e-14)


def test_longitudinal_critical_coupling():
    lam_c = np.sqrt(0.15)
    assert lmg_longitudinal_polaritons(1.0, 1.0, lam_c, 0.1)[0] == pytest.approx(0.0, abs=1e-7)
    assert lmg_longitudinal_polaritons(1.0, 1.0, lam_c - 1e-3, 0.1)[0] > 1e-3
    assert lmg_longitudinal_polaritons(1.0, 1.0, lam_c + 1e-3, 0.1)[0] > 1e-3


def test_heisenberg_uses_dicke_polaritons():
    h = ModelSpec("heisenberg", J=0.2, z_coord=4, channel=InteractionChannel(0.7))
    assert model_polaritons(h) == dicke_polaritons(1.0, 1.0, 0.7)


def test_transverse_has_no_closed_form():
    with pytest.raises(ValueError):
        model_polaritons(ModelSpec("lmg_transverse", J=0.2, channel=InteractionChannel(0.4)))


# --- pole search against closed forms -------------------------------------


@pytest.mark.parametrize("lam", [0.1, 0.25, 0.45, 0.55, 0.8, 1.2])
@pytest.mark.parametrize("zeta", [0.0, 1.0])
def test_dicke_poles_match_closed_form(lam, zeta):
    poles = spin_model_poles(dicke(lam, zeta))
    np.testing.assert_allclose(poles, dicke_polaritons(1.0, 1.0, lam, zeta), atol=1e-8)


def test_zero_coupling_poles_are_bare_lines():
    assert spin_model_poles(dicke(0.0, om=2.0)) == pytest.approx([1.0, 2.0], abs=1e-12)


@pytest.mark.parametrize("J", [0.1, 0.35])
@pytest.mark.parametrize("lam", [0.2, 0.5, 0.9])
def test_longitudinal_poles_match_closed_form(J, lam):
    spec = ModelSpec("lmg_longitudinal", J=J, channel=InteractionChannel(lam))
    np.testing.assert_allclose(spin_model_poles(spec), model_polaritons(spec), atol=1e-8)


# --- bare susceptibilities and the Heisenberg model ------------------------


def test_zeta_one_bare_is_free_spin():
    b = spin_model_bare_susceptibility(dicke(1.0, zeta=1.0))
    w = np.linspace(-3, 3, 31) + 1e-3j
    np.testing.assert_allclose(b.eval(w)[:, 0, 0], free_spin_susceptibility(SpinFields(0, 1), w)[:, 0, 0], rtol=1e-14)


def has_pole_at(bare, pole, h=1e-7):
    inv = lambda om: 1 / bare.eval(om + 0j)[0, 0].real  # noqa: E731
    lo, hi = inv(pole - h), inv(pole + h)
    return lo * hi < 0 and max(abs(lo), abs(hi)) < 1e-5 and abs(inv(pole - 1e-2)) > 1e-4


def test_superradiant_bare_pole_at_dressed_gap():
    assert has_pole_at(spin_model_bare_susceptibility(dicke(1.0)), 4.0)


def test_heisenberg_magnon_pole_normal_phase():
    h = ModelSpec("heisenberg", J=0.3, z_coord=6, channel=InteractionChannel(0.3))
    assert has_pole_at(heisenberg_effective_response(h), 1.0)


def test_heisenberg_magnon_pole_ordered_phase():
    h = ModelSpec("heisenberg", J=0.3, z_coord=6, channel=InteractionChannel(1.0))
    m_x = solve_mean_field(h).m_x
    pole = np.sqrt(1 + (4 * m_x) ** 2)
    assert has_pole_at(heisenberg_effective_response(h), pole)


def test_heisenberg_poles_are_dicke_poles():
    h = ModelSpec("heisenberg", J=0.3, z_coord=6, channel=InteractionChannel(0.8))
    np.testing.assert_allclose(spin_model_poles(h), dicke_polaritons(1.0, 1.0, 0.8), atol=1e-8)


def test_response_photon_peak_near_lower_polariton():
    omega = np.linspace(0.5, 0.9, 4001)
    r = spin_model_response(dicke(0.25), omega + 1e-3j)
    assert omega[np.argmax(-r.photon.imag)] == pytest.approx(np.sqrt(0.5), abs=1e-4)


# --- properties ------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2), st.floats(0.2, 2), st.floats(0, 1.5))
def test_dicke_closed_form_product_rule(wz, om, lam):
    lo, hi = dicke_polaritons(wz, om, lam)
    if lam * lam < wz * om / 4:
        assert (lo * hi) ** 2 == pytest.approx(wz * om * (wz * om - 4 * lam * lam), rel=1e-9, abs=1e-12)
    assert 0 <= lo <= hi


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 2), st.floats(0.3, 2), st.floats(0.02, 1.5), st.sampled_from([0.0, 1.0]))
def test_dicke_pole_finder_matches_closed_form(wz, om, lam, zeta):
    if zeta == 0 and abs(lam * lam - wz * om / 4) < 1e-3:
        return  # soft mode: the root is only quadratically resolved
    poles = spin_model_poles(dicke(lam, zeta, wz, om))
    np.testing.assert_allclose(poles, dicke_polaritons(wz, om, lam, zeta), atol=1e-8)
