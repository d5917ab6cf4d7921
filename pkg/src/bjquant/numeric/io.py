"""JSON file formats and named generators for wavefunctions and symbols.

Wavefunction::

    {"n": N, "length": L, "hbar": h, "re": [...], "im": [...]}

PhaseSamples: same header, ``re``/``im`` are N x N row-major (row = q index,
column = p index), stored as nested lists; flat lists are accepted on read.
A missing ``im`` array reads as zero.

Generator specs (usable wherever a file path is accepted):

* ``hermite:k`` -- k-th Hermite function ``exp(-q^2/2h) H_k(q/sqrt h)``, normalized
* ``gauss:q0,p0,width`` -- as a symbol, ``exp(-((q-q0)^2 + (p-p0)^2) / 2 width^2)``;
  as a wavefunction, a normalized coherent packet centered at q0 with mean momentum p0
* ``const:c`` -- constant symbol (real c)
* ``nullspace:k,m[;k,m...]`` -- sum of Born-Jordan-annihilated exponentials at
  centered offsets (k', m')
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
from numpy.polynomial import hermite as _herm

from .grid import Grid, PhaseSamples, Wavefunction
from .quadrature import nullspace_witness

__all__ = [
    "SchemaError",
    "wavefunction_to_json",
    "wavefunction_from_json",
    "samples_to_json",
    "samples_from_json",
    "hermite_function",
    "make_wavefunction",
    "make_symbol",
    "load_wavefunction",
    "load_symbol",
    "is_generator",
]

GENERATORS = ("hermite", "gauss", "const", "nullspace")


class SchemaError(ValueError):
    pass


def _header(grid: Grid) -> dict:
    return {"n": grid.N, "length": grid.L, "hbar": grid.hbar}


def _grid_from(obj: dict) -> Grid:
    try:
        return Grid(int(obj["n"]), float(obj["length"]), float(obj["hbar"]))
    except KeyError as exc:
        raise SchemaError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad grid header: {exc}") from None


def wavefunction_to_json(psi: Wavefunction) -> dict:
    return {**_header(psi.grid), "re": psi.values.real.tolist(), "im": psi.values.imag.tolist()}


def wavefunction_from_json(obj: dict) -> Wavefunction:
    grid = _grid_from(obj)
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad wavefunction arrays: {exc}") from None
    if re.shape != (grid.N,) or im.shape != (grid.N,):
        raise SchemaError(f"expected {grid.N} samples in 're' and 'im'")
    return Wavefunction(grid, re + 1j * im)


def samples_to_json(H: PhaseSamples) -> dict:
    return {**_header(H.grid), "re": H.values.real.tolist(), "im": H.values.imag.tolist()}


def samples_from_json(obj: dict) -> PhaseSamples:
    grid = _grid_from(obj)
    N = grid.N
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad symbol arrays: {exc}") from None
    if re.size != N * N or im.size != N * N:
        raise SchemaError(f"expected {N}x{N} samples in 're' and 'im'")
    return PhaseSamples(grid, (re + 1j * im).reshape(N, N))


def hermite_function(grid: Grid, k: int) -> Wavefunction:
    if k < 0:
        raise ValueError("Hermite index must be non-negative")
    x = grid.q / math.sqrt(grid.hbar)
    coeffs = np.zeros(k + 1)
    coeffs[k] = 1.0
    norm = 1.0 / math.sqrt(2.0**k * math.factorial(k) * math.sqrt(math.pi * grid.hbar))
    return Wavefunction(grid, norm * _herm.hermval(x, coeffs) * np.exp(-x * x / 2))


def _parse_spec(spec: str) -> tuple[str, str]:
    name, _, args = spec.partition(":")
    if name not in GENERATORS:
        raise SchemaError(f"unknown generator {name!r}")
    return name, args


def _floats(args: str, count: int, name: str) -> list[float]:
    try:
        vals = [float(x) for x in args.split(",")]
    except ValueError:
        raise SchemaError(f"{name} expects {count} numbers, got {args!r}") from None
    if len(vals) != count:
        raise SchemaError(f"{name} expects {count} numbers, got {args!r}")
    return vals


def is_generator(spec: str) -> bool:
    return spec.partition(":")[0] in GENERATORS and ":" in spec


def make_wavefunction(spec: str, grid: Grid) -> Wavefunction:
    name, args = _parse_spec(spec)
    if name == "hermite":
        try:
            return hermite_function(grid, int(args))
        except ValueError:
            raise SchemaError(f"hermite expects a non-negative integer, got {args!r}") from None
    if name == "gauss":
        q0, p0, w = _floats(args, 3, name)
        vals = np.exp(-((grid.q - q0) ** 2) / (2 * w * w) + 1j * p0 * grid.q / grid.hbar)
        psi = Wavefunction(grid, vals)
        return psi * (1.0 / psi.norm())
    raise SchemaError(f"generator {name!r} does not make wavefunctions")


def make_symbol(spec: str, grid: Grid) -> PhaseSamples:
    name, args = _parse_spec(spec)
    if name == "gauss":
        q0, p0, w = _floats(args, 3, name)
        return PhaseSamples.from_function(grid, lambda Q, P: np.exp(-((Q - q0) ** 2 + (P - p0) ** 2) / (2 * w * w)))
    if name == "const":
        (c,) = _floats(args, 1, name)
        return PhaseSamples(grid, np.full((grid.N, grid.N), c, dtype=complex))
    if name == "nullspace":
        half = grid.N // 2
        points = []
        for chunk in args.split(";"):
            kp, mp = _floats(chunk, 2, name)
            points.append((int(kp) + half, int(mp) + half))
        try:
            return nullspace_witness(grid, points, [1.0] * len(points))
        except (IndexError, ValueError) as exc:
            raise SchemaError(f"nullspace: {exc}") from None
    raise SchemaError(f"generator {name!r} does not make symbols")


def _read_json(path: str) -> dict:
    # OSError propagates (CLI maps it to the I/O exit code); malformed content is a schema error
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def load_wavefunction(spec: str, grid: Grid | None = None) -> Wavefunction:
    if is_generator(spec):
        if grid is None:
            raise SchemaError("a generator needs grid parameters")
        return make_wavefunction(spec, grid)
    return wavefunction_from_json(_read_json(spec))


def load_symbol(spec: str, grid: Grid | None = None) -> PhaseSamples:
    if is_generator(spec):
        if grid is None:
            raise SchemaError("a generator needs grid parameters")
        return make_symbol(spec, grid)
    return samples_from_json(_read_json(spec))
