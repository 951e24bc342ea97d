import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavity_response import (
    InteractionChannel,
    ModelSpec,
    OracleError,
    TwoModeQuadratic,
    bosonization_polaritons,
    build_quadratic,
    dicke_polaritons,
    lmg_longitudinal_polaritons,
    solve_displacements,
    solve_mean_field,
    spin_model_poles,
    symplectic_frequencies,
    two_mode_polaritons,
)
from cavity_response.bosonization import linear_term_residuals

# values frozen from the displacement solver, checked against the
# mean-field order parameter and the pole finder at the time of freezing
TRANSVERSE = [
    ((0.2, 1.0, 0.6), 0.19446958861903152, 0.1642903644569499, (0.5372700750497839, 2.1741095721076378)),
    ((0.3, 0.4, 0.8), 0.7814261653009749, 0.6268044139624506, (0.9623440850429269, 2.357708707488343)),
    ((0.5, 0.0, 0.2), 0.11904761904761915, 0.9496181818008826, (0.6751582259871207, 1.0908038228110697)),
]


def transverse(wx, wz, lam, J=0.25):
    return ModelSpec("lmg_transverse", omega_z=wz, omega_x=wx, J=J, channel=InteractionChannel(lam))


def test_normal_phase_has_no_displacement():
    d = solve_displacements(ModelSpec("dicke", channel=InteractionChannel(0.3)))
    assert (d.sqrt_alpha, d.sqrt_beta) == (0, 0)


def test_dicke_superradiant_displacements():
    d = solve_displacements(ModelSpec("dicke", channel=InteractionChannel(1.0)))
    assert d.sqrt_alpha**2 == pytest.approx(0.9375, rel=1e-14)
    assert d.beta_fraction == pytest.approx(0.375, rel=1e-14)


def test_transverse_linear_terms_vanish():
    spec = transverse(0.2, 1.0, 0.6)
    assert max(map(abs, linear_term_residuals(spec, solve_displacements(spec)))) < 1e-12


@pytest.mark.parametrize("params, sa, sb, poles", TRANSVERSE)
def test_transverse_frozen(params, sa, sb, poles):
    spec = transverse(*params)
    d = solve_displacements(spec)
    assert d.sqrt_alpha == pytest.approx(sa, rel=1e-10)
    assert d.sqrt_beta == pytest.approx(sb, rel=1e-10)
    assert bosonization_polaritons(spec) == pytest.approx(poles, rel=1e-10)


@pytest.mark.parametrize("params, sa, sb, poles", TRANSVERSE)
def test_transverse_polarization_matches_mean_field(params, sa, sb, poles):
    spec = transverse(*params)
    m_x, m_z = solve_displacements(spec).polarization
    s = solve_mean_field(spec)
    assert abs(m_x) == pytest.approx(abs(s.m_x), abs=1e-9)
    assert m_z == pytest.approx(s.m_z, abs=1e-9)


@pytest.mark.parametrize("params, sa, sb, poles", TRANSVERSE)
def test_transverse_polaritons_match_pole_finder(params, sa, sb, poles):
    found = spin_model_poles(transverse(*params), which=("photon", "z"))
    np.testing.assert_allclose(found, poles, atol=1e-8)


def test_displayed_normal_phase_coefficients():
    zero = solve_displacements(ModelSpec("dicke", channel=InteractionChannel(0.3)))
    q = build_quadratic(ModelSpec("dicke", channel=InteractionChannel(0.3)), zero)
    assert (q.omega_A, q.omega_B, q.omega_C) == (1.0, 0.0, 0.3)
    lmg = ModelSpec("lmg_longitudinal", J=0.1, channel=InteractionChannel(0.3))
    assert build_quadratic(lmg, solve_displacements(lmg)).omega_B == -0.1
    tr = transverse(0.0, 1.0, 0.3)
    assert build_quadratic(tr, solve_displacements(tr)).omega_A == pytest.approx(2.0)


def test_decoupled_two_mode():
    q = TwoModeQuadratic(1.2, 0.1, 0.0, 0.9)
    assert two_mode_polaritons(q) == pytest.approx((0.9, np.sqrt(1.44 + 4 * 1.2 * 0.1)), rel=1e-14)


@pytest.mark.parametrize("lam", [0.1, 0.3, 0.45, 0.7, 1.0])
def test_dicke_bosonization_matches_closed_form(lam):
    spec = ModelSpec("dicke", channel=InteractionChannel(lam))
    np.testing.assert_allclose(bosonization_polaritons(spec), dicke_polaritons(1.0, 1.0, lam), atol=1e-12)


@pytest.mark.parametrize("lam", [0.1, 0.3, 0.6, 1.0])
def test_longitudinal_bosonization_matches_closed_form(lam):
    spec = ModelSpec("lmg_longitudinal", J=0.1, channel=InteractionChannel(lam))
    np.testing.assert_allclose(bosonization_polaritons(spec), lmg_longitudinal_polaritons(1, 1, lam, 0.1), atol=1e-10)


def test_displayed_and_general_forms_agree():
    spec = ModelSpec("lmg_longitudinal", J=0.1, channel=InteractionChannel(0.8))
    d = solve_displacements(spec)
    a = two_mode_polaritons(build_quadratic(spec, d, "displayed"))
    b = two_mode_polaritons(build_quadratic(spec, d, "general"))
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_negative_omega_z_rejected():
    with pytest.raises(OracleError):
        solve_displacements(transverse(0.2, -1.0, 0.3))


def test_unknown_form_rejected():
    spec = ModelSpec("dicke", channel=InteractionChannel(0.3))
    with pytest.raises(ValueError):
        build_quadratic(spec, solve_displacements(spec), "other")


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 3), st.floats(-0.2, 0.5), st.floats(0, 1), st.floats(0.1, 3))
def test_closed_form_matches_symplectic_eigensolve(a, b, c, om):
    q = TwoModeQuadratic(a, b, c, om)
    if a * (a + 4 * b) <= 0:
        return
    try:
        closed = two_mode_polaritons(q, check=False)
    except (ArithmeticError, ValueError):
        return  # unstable quadratic
    np.testing.assert_allclose(np.square(closed), np.square(symplectic_frequencies(q)), atol=1e-10 * max(1, closed[1] ** 2))
