"""Numerical check suite run by ``bjquant numeric-check``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid, PhaseSamples, Wavefunction
from .io import hermite_function
from .quadrature import (
    CohenKernel,
    fourier_multiplier,
    is_kernel_zero,
    m_hat_apply,
    nullspace_witness,
    quantize_apply,
    quantize_apply_fast,
    reduced_dirac_numeric,
    symmetry_check,
)

__all__ = ["NumericResult", "run_numeric_suite", "gaussian_pair"]


@dataclass
class NumericResult:
    name: str
    value: float
    tolerance: float
    passed: bool
    relation: str = "<="


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def gaussian_pair(grid: Grid, width: float = 2.0, q_shift: float = 0.5):
    """Gaussian T(p), V(q) and the analytic bracket ``{T, V} = -T'(p) V'(q)``."""
    T = np.exp(-grid.p**2 / (2 * width**2))
    V = np.exp(-((grid.q - q_shift) ** 2) / (2 * width**2))
    dT = -grid.p / width**2 * T
    dV = -(grid.q - q_shift) / width**2 * V
    bracket = PhaseSamples(grid, -np.outer(dV, dT))
    return T, V, bracket


def run_numeric_suite(N: int = 256, hbar: float = 1.0, L: float | None = None) -> list[NumericResult]:
    if N < 16:
        raise ValueError("the numeric suite needs N >= 16")
    grid = Grid(N, L, hbar) if L is not None else Grid.balanced(N, hbar)
    psi = hermite_function(grid, 0)
    phi = hermite_function(grid, 1)
    out: list[NumericResult] = []

    def add(name, value, tol, relation="<="):
        ok = value <= tol if relation == "<=" else value > tol
        out.append(NumericResult(name, float(value), tol, bool(ok), relation))

    one = PhaseSamples(grid, np.ones((N, N)))
    add("Op(1) = Id", _rel(quantize_apply_fast(one, psi).values, psi.values), 1e-10)

    off = grid.offsets
    worst = 0.0
    for k in range(N):
        for m in range(N):
            if is_kernel_zero(N, off[k], off[m]):
                worst = max(worst, m_hat_apply(k, m, psi).norm() / psi.norm())
    add("BJ kernel zeros annihilate", worst, 1e-10)

    H = PhaseSamples.from_function(grid, lambda Q, P: np.exp(-((Q - 0.3) ** 2 + (P + 0.2) ** 2) / 2))
    h = N // 2
    # offsets (N/4, 4) and (-N/8, -8): both products equal N
    G = nullspace_witness(grid, [(h + N // 4, h + 4), (h - N // 8, h - 8)], [1.0, 0.5 - 0.25j])
    base = quantize_apply_fast(H, psi).values
    add("non-injectivity witness", _rel(quantize_apply_fast(H + G, psi).values, base), 1e-9)

    T, V, bracket = gaussian_pair(grid)
    Vs = PhaseSamples(grid, np.outer(V, np.ones(N)))
    Ts = PhaseSamples(grid, np.outer(np.ones(N), T))
    add("V(q) acts by multiplication", _rel(quantize_apply_fast(Vs, psi).values, V * psi.values), 1e-6)
    add("T(p) acts as Fourier multiplier", _rel(quantize_apply_fast(Ts, psi).values, fourier_multiplier(T, psi).values), 1e-6)

    add("reduced Dirac [T, V] = ih Op{T, V}", reduced_dirac_numeric(T, V, bracket, psi), 5e-4)

    add("symmetry of real symbol", symmetry_check(H, psi, phi), 1e-8)
    add("imaginary symbol is not symmetric", symmetry_check(H * 1j, psi, phi, allow_complex=True), 1e-2, ">")

    if N <= 256:
        add("fast path = naive quadrature", _rel(quantize_apply_fast(H, psi).values, quantize_apply(H, psi).values), 1e-10)
    return out
