"""Periodic one-dimensional phase-space grid and the sampled objects living on it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Grid", "Wavefunction", "PhaseSamples", "SymbolSpectrum", "GridMismatchError"]


class GridMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """``N`` samples of period ``L``; positions ``(a - N/2) dq`` and momenta ``(b - N/2) dp``.

    ``dq = L/N`` and ``dp = 2 pi hbar / L``, so ``N dq dp = 2 pi hbar``.
    """

    N: int
    L: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.N < 8 or self.N & (self.N - 1):
            raise ValueError(f"N must be a power of two >= 8, got {self.N}")
        if not self.L > 0 or not math.isfinite(self.L):
            raise ValueError("L must be positive")
        if not self.hbar > 0 or not math.isfinite(self.hbar):
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "hbar", float(self.hbar))

    @classmethod
    def balanced(cls, N: int, hbar: float = 1.0) -> "Grid":
        """Grid whose position and momentum windows have equal extent, ``L = sqrt(2 pi hbar N)``."""
        return cls(N, math.sqrt(2 * math.pi * hbar * N), hbar)

    @property
    def dq(self) -> float:
        return self.L / self.N

    @property
    def dp(self) -> float:
        return 2 * math.pi * self.hbar / self.L

    @property
    def offsets(self) -> np.ndarray:
        """Centered integer offsets ``-N/2 .. N/2 - 1``."""
        return np.arange(self.N) - self.N // 2

    @property
    def q(self) -> np.ndarray:
        return self.offsets * self.dq

    @property
    def p(self) -> np.ndarray:
        return self.offsets * self.dp

    # spectrum axes: q0 on the reciprocal lattice, p0 on position steps
    @property
    def q0(self) -> np.ndarray:
        return self.offsets * self.dp

    @property
    def p0(self) -> np.ndarray:
        return self.offsets * self.dq

    def check_index(self, k: int, m: int) -> None:
        if not (0 <= k < self.N and 0 <= m < self.N):
            raise IndexError(f"spectrum index ({k}, {m}) out of range for N={self.N}")


def _check_same(*grids: Grid) -> Grid:
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")
    return first


@dataclass(frozen=True, eq=False)
class Wavefunction:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("wavefunction has non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: Grid, f: Callable[[np.ndarray], np.ndarray]) -> "Wavefunction":
        return cls(grid, f(grid.q))

    def inner(self, other: "Wavefunction") -> complex:
        """Discrete ``<self, other> = sum conj(self) other dq``."""
        _check_same(self.grid, other.grid)
        return complex(np.vdot(self.values, other.values) * self.grid.dq)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.dq))

    def __add__(self, other: "Wavefunction") -> "Wavefunction":
        return Wavefunction(_check_same(self.grid, other.grid), self.values + other.values)

    def __sub__(self, other: "Wavefunction") -> "Wavefunction":
        return Wavefunction(_check_same(self.grid, other.grid), self.values - other.values)

    def __mul__(self, c: complex) -> "Wavefunction":
        return Wavefunction(self.grid, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class PhaseSamples:
    """``values[a, b] = H(q_a, p_b)``; rows are positions, columns momenta."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        N = self.grid.N
        if v.shape != (N, N):
            raise ValueError(f"expected shape ({N}, {N}), got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("symbol samples have non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: Grid, f: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> "PhaseSamples":
        Q, P = np.meshgrid(grid.q, grid.p, indexing="ij")
        return cls(grid, np.broadcast_to(f(Q, P), Q.shape))

    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    def __add__(self, other: "PhaseSamples") -> "PhaseSamples":
        return PhaseSamples(_check_same(self.grid, other.grid), self.values + other.values)

    def __mul__(self, c: complex) -> "PhaseSamples":
        return PhaseSamples(self.grid, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class SymbolSpectrum:
    """``values[k, m]`` at ``q0 = (k - N/2) 2 pi hbar / L`` and ``p0 = (m - N/2) dq``."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128)
        N = self.grid.N
        if v.shape != (N, N):
            raise ValueError(f"expected shape ({N}, {N}), got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
