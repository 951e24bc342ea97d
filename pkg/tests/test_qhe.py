import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavity_response import (
    QheSpec,
    landau_polaritons,
    qhe_bare_current_response,
    qhe_closed_form_current_response,
    qhe_conductivity,
    qhe_dc_conductivity,
    qhe_dressed_current_response,
)
from cavity_response.qhe import free_gas_sigma_xx, qhe_poles

PAIRS = [("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")]


def test_bare_vanishes_without_field():
    spec = QheSpec(plasma_freq=0.5, cyclotron_freq=0.0)
    w = np.linspace(-2, 2, 11) + 1e-3j
    for r, s in PAIRS:
        assert np.all(qhe_bare_current_response(spec, r, s, w) == 0)


def test_bare_static_example():
    assert qhe_bare_current_response(QheSpec(cyclotron_freq=1.0), "x", "x", 0.0) == pytest.approx(-1)


def test_bare_antisymmetry():
    spec = QheSpec(cyclotron_freq=0.7)
    w = np.linspace(-3, 3, 101) + 1e-2j
    np.testing.assert_array_equal(
        qhe_bare_current_response(spec, "x", "y", w), -qhe_bare_current_response(spec, "y", "x", w)
    )


def test_invalid_component():
    with pytest.raises(ValueError):
        qhe_bare_current_response(QheSpec(cyclotron_freq=1.0), "x", "z", 0.5)


def test_dressed_equals_bare_without_plasma():
    spec = QheSpec(cyclotron_freq=0.8)
    w = np.linspace(-3, 3, 101) + 1e-2j
    for r, s in PAIRS:
        np.testing.assert_allclose(
            qhe_dressed_current_response(spec, r, s, w), qhe_bare_current_response(spec, r, s, w), rtol=1e-14
        )


def test_dressed_matches_closed_form_on_grid():
    rng = np.random.default_rng(17)
    worst = 0.0
    for _ in range(100):
        spec = QheSpec(rng.uniform(0.3, 2), rng.uniform(0, 1.5), rng.uniform(0, 2))
        w = rng.uniform(-4, 4, 100) + 1j * rng.uniform(1e-3, 0.2, 100)
        for r, s in PAIRS:
            a = qhe_dressed_current_response(spec, r, s, w)
            b = qhe_closed_form_current_response(spec, r, s, w)
            worst = max(worst, np.max(np.abs(a - b) / np.maximum(1, np.abs(b))))
    assert worst < 1e-10


def test_static_yy_is_minus_one():
    for spec in (QheSpec(1.0, 0.5, 1.0), QheSpec(0.4, 2.0, 0.3)):
        assert qhe_closed_form_current_response(spec, "y", "y", 0.0) == pytest.approx(-1, rel=1e-13)


def test_landau_polaritons_limits():
    assert landau_polaritons(QheSpec(1.0, 0.0, 0.4)) == pytest.approx((0.4, 1.0))
    wt = QheSpec(1.0, 0.6, 0.0).renormalized_freq
    assert landau_polaritons(QheSpec(1.0, 0.6, 0.0)) == pytest.approx((0.0, wt), abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.1, 3), st.floats(0, 3), st.floats(0, 3))
def test_landau_product_rule(om, wpl, wc):
    lo, hi = landau_polaritons(QheSpec(om, wpl, wc))
    assert (lo * hi) ** 2 == pytest.approx(wc * wc * om * om, rel=1e-10, abs=1e-14)
    assert 0 <= lo <= hi


def test_poles_match_landau_polaritons():
    spec = QheSpec(1.0, 0.5, 1.0)
    np.testing.assert_allclose(qhe_poles(spec), landau_polaritons(spec), atol=1e-8)


def test_dc_hall_quantization():
    for spec in (QheSpec(1.0, 0.5, 1.0), QheSpec(2.0, 1.3, 0.4)):
        for d in (1e-4, 1e-6, 1e-8):
            assert qhe_dc_conductivity(spec, d).sigma_xy.real == pytest.approx(1, abs=1e-6)
        assert qhe_dc_conductivity(spec, 0.0).sigma_xy == pytest.approx(1, rel=1e-13)


def test_dc_closed_form_matches_kubo():
    spec = QheSpec(1.0, 0.5, 1.0, broadening=1e-3)
    kubo = qhe_conductivity(spec, 1e-3j)
    closed = qhe_dc_conductivity(spec)
    for name in ("sigma_xx", "sigma_xy", "sigma_yy"):
        assert getattr(kubo, name) == pytest.approx(getattr(closed, name), rel=1e-9, abs=1e-12)


def test_zero_field_conductivity():
    spec = QheSpec(1.0, 0.7, 0.0)
    w = np.linspace(0.1, 3, 50) + 1e-2j
    sigma = qhe_conductivity(spec, w)
    assert np.all(sigma.sigma_xy == 0)
    np.testing.assert_allclose(sigma.sigma_xx, free_gas_sigma_xx(spec, w), rtol=1e-12)


def test_real_frequency_uses_spec_broadening():
    spec = QheSpec(1.0, 0.5, 1.0, broadening=0.02)
    assert qhe_conductivity(spec, 0.7) == qhe_conductivity(spec, 0.7 + 0.02j)


@pytest.mark.parametrize("kw", [dict(cyclotron_freq=-1.0), dict(broadening=-1.0), dict(cavity_freq=0.0)])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        QheSpec(**kw)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 2), st.floats(0, 2), st.floats(0, 2), st.floats(0, 4), st.floats(1e-3, 0.5))
def test_conductivity_hermiticity(om, wpl, wc, omega, delta):
    spec = QheSpec(om, wpl, wc)
    a = qhe_dressed_current_response(spec, "x", "x", complex(omega, delta))
    b = qhe_dressed_current_response(spec, "x", "x", complex(-omega, delta))
    assert abs(b - np.conj(a)) <= 1e-10 * max(1, abs(a))
