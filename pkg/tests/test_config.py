import pytest

from cavity_response import ConfigError, RunConfig, load_config, parse_config

DICKE = """
model = dicke   # spin model
omega_z = 1.0
cavity_freq = 1.0
axis_min = 0.0
axis_max = 1.2
axis_points = 13
omega_points = 301
observables = im_photon, poles
"""


def test_parse_basic():
    c = parse_config(DICKE)
    assert c.model == "dicke" and c.axis_points == 13 and c.observables == ("im_photon", "poles")
    assert c.axis_values()[-1] == pytest.approx(1.2)
    assert len(c.omega_values()) == 301


def test_defaults():
    c = parse_config("model = qhe\naxis = none\nobservables = conductivity")
    assert (c.cavity_freq, c.delta, c.format) == (1.0, 1e-3, "csv")


def test_keys_are_case_sensitive():
    assert parse_config("model = lmg_longitudinal\nJ = 0.1").J == 0.1
    with pytest.raises(ConfigError):
        parse_config("model = lmg_longitudinal\nj = 0.1")


def test_fixed_axis_point():
    c = parse_config("model = dicke\naxis = none\ncoupling = 0.25")
    assert list(c.axis_values()) == [0.25]


@pytest.mark.parametrize(
    "text",
    [
        "omega_z = 1",  # missing model
        "model = ising",
        "model = dicke\nspeed = 3",
        "model = dicke\nomega_z = fast",
        "model = dicke\naxis_points = 2.5",
        "model = dicke\naxis = plasma_freq",
        "model = qhe\naxis = coupling",
        "model = dicke\nobservables = conductivity",
        "model = dicke\nobservables = im_chi_zz",
        "model = qhe\naxis = none\nobservables = im_photon",
        "model = dicke\nobservables =",
        "model = dicke\nformat = xml",
        "model = dicke\naxis_points = 1",
        "model = dicke\nomega_max = -1",
        "model = dicke\ndelta = 0",
        "model = dicke\nomega_z = nan",
        "model = dicke\nmodel = qhe",
        "[section]\nmodel = dicke",
    ],
)
def test_invalid_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_load_roundtrip(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text(DICKE)
    assert load_config(p) == parse_config(DICKE)


def test_as_dict_reconstructs():
    c = parse_config(DICKE)
    assert RunConfig(**{**c.as_dict(), "observables": tuple(c.as_dict()["observables"])}) == c
