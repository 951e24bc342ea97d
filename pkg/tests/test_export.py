import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cavity_response import SpectrumTable, export, parse_config, read_table, run_sweep
from cavity_response.export import CSV_HEADER, from_csv, from_structured, to_csv, to_structured


def small_table():
    return run_sweep(parse_config("model = dicke\naxis_points = 2\nomega_points = 2"))


def test_csv_two_by_two():
    lines = to_csv(small_table()).splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 5


def test_csv_pole_rows():
    t = run_sweep(parse_config("model = dicke\naxis = none\ncoupling = 0.25\nobservables = im_photon, poles"))
    back = from_csv(to_csv(t))
    assert back.poles == t.poles
    np.testing.assert_array_equal(back.values["im_photon"], t.values["im_photon"])


def test_csv_failed_rows_are_blank():
    t = SpectrumTable(np.array([0.0, 1.0]), np.array([0.5]), {"im_photon": np.array([[1 + 0j], [np.nan + np.nan * 1j]])})
    text = to_csv(t)
    assert text.splitlines()[2].endswith(",,")
    back = from_csv(text)
    assert np.isnan(back.values["im_photon"][1, 0])


def test_structured_keeps_metadata():
    t = small_table()
    back = from_structured(to_structured(t))
    assert back.metadata == t.metadata


def test_export_writes_and_reads(tmp_path):
    t = small_table()
    for fmt in ("csv", "structured"):
        p = tmp_path / f"out.{fmt}"
        data = export(t, fmt, p)
        assert p.read_bytes() == data
        back = read_table(p)
        np.testing.assert_array_equal(back.values["im_photon"], t.values["im_photon"])


def test_export_unknown_format():
    with pytest.raises(ValueError):
        export(small_table(), "xml")


def test_bad_csv_header():
    with pytest.raises(ValueError):
        from_csv("a,b,c\n")


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(
    arrays(float, st.tuples(st.integers(1, 4), st.integers(1, 5)), elements=finite),
    arrays(float, st.tuples(st.integers(1, 4), st.integers(1, 5)), elements=finite),
)
def test_roundtrip_random_tables(re, im):
    shape = (min(re.shape[0], im.shape[0]), min(re.shape[1], im.shape[1]))
    v = re[: shape[0], : shape[1]] + 1j * im[: shape[0], : shape[1]]
    t = SpectrumTable(np.arange(shape[0]) * 0.1, np.linspace(0, 1, shape[1]), {"a": v, "b": 2 * v}, {0: [0.25, 0.5]})
    for back in (from_csv(to_csv(t)), from_structured(to_structured(t))):
        np.testing.assert_array_equal(back.axis, t.axis)
        np.testing.assert_array_equal(back.omega, t.omega)
        np.testing.assert_array_equal(back.values["a"], v)
        np.testing.assert_array_equal(back.values["b"], 2 * v)
        assert back.poles == t.poles
