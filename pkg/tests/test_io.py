import json

import numpy as np
import pytest

from bjquant.numeric import Grid, PhaseSamples, quantize_apply_fast
from bjquant.numeric.io import (
    SchemaError,
    hermite_function,
    is_generator,
    load_symbol,
    load_wavefunction,
    make_symbol,
    make_wavefunction,
    samples_from_json,
    samples_to_json,
    wavefunction_from_json,
    wavefunction_to_json,
)


@pytest.fixture
def grid():
    return Grid(32, 8.0, 0.5)


def test_wavefunction_round_trip(grid, tmp_path):
    psi = make_wavefunction("gauss:0.5,1.0,1.0", grid)
    obj = json.loads(json.dumps(wavefunction_to_json(psi)))
    assert set(obj) == {"n", "length", "hbar", "re", "im"}
    back = wavefunction_from_json(obj)
    assert back.grid == grid
    np.testing.assert_array_equal(back.values, psi.values)
    path = tmp_path / "psi.json"
    path.write_text(json.dumps(obj))
    np.testing.assert_array_equal(load_wavefunction(str(path)).values, psi.values)


def test_samples_round_trip_nested_and_flat(grid):
    H = make_symbol("gauss:0,0,1", grid) + PhaseSamples(grid, 1j * np.arange(32 * 32).reshape(32, 32))
    obj = samples_to_json(H)
    assert len(obj["re"]) == 32 and len(obj["re"][0]) == 32
    np.testing.assert_array_equal(samples_from_json(obj).values, H.values)
    flat = dict(obj, re=np.ravel(obj["re"]).tolist(), im=np.ravel(obj["im"]).tolist())
    np.testing.assert_array_equal(samples_from_json(flat).values, H.values)
    # row = q index, column = p index
    assert obj["im"][1][0] == 32.0


@pytest.mark.parametrize(
    "obj",
    [
        {"length": 8.0, "hbar": 0.5, "re": [0] * 32, "im": [0] * 32},
        {"n": 32, "length": 8.0, "hbar": 0.5, "re": [0] * 31, "im": [0] * 31},
        {"n": 32, "length": 8.0, "hbar": -1, "re": [0] * 32, "im": [0] * 32},
        {"n": 12, "length": 8.0, "hbar": 0.5, "re": [0] * 12, "im": [0] * 12},
        {"n": 32, "length": 8.0, "hbar": 0.5, "re": ["x"] * 32, "im": [0] * 32},
    ],
)
def test_bad_wavefunction_json(obj):
    with pytest.raises(SchemaError):
        wavefunction_from_json(obj)


def test_missing_imaginary_part_reads_as_zero():
    psi = wavefunction_from_json({"n": 8, "length": 1.0, "hbar": 1.0, "re": list(range(8))})
    assert np.all(psi.values.imag == 0)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load_wavefunction(str(path))
    with pytest.raises(OSError):
        load_wavefunction(str(tmp_path / "missing.json"))


def test_generators(grid):
    assert is_generator("hermite:2") and not is_generator("hermite.json") and not is_generator("foo:1")
    np.testing.assert_array_equal(make_wavefunction("hermite:1", grid).values, hermite_function(grid, 1).values)
    assert make_wavefunction("gauss:0,2,1", grid).norm() == pytest.approx(1.0)
    assert np.all(make_symbol("const:2.5", grid).values == 2.5)
    G = make_symbol("nullspace:8,4;-4,-8", grid)
    psi = hermite_function(grid, 0)
    assert quantize_apply_fast(G, psi).norm() < 1e-10
    with pytest.raises(ValueError):
        make_symbol("nullspace:1,1", grid)
    for bad in ("hermite:-1", "hermite:x", "gauss:1,2", "const:1,2", "hermite:1:2"):
        with pytest.raises(SchemaError):
            (make_symbol if bad.startswith("const") else make_wavefunction)(bad, grid)
    with pytest.raises(SchemaError):
        make_symbol("hermite:0", grid)
    with pytest.raises(SchemaError):
        load_symbol("gauss:0,0,1")
