"""Grid quantization of sampled symbols (one degree of freedom)."""

from ._kernels import BACKEND
from .grid import Grid, GridMismatchError, PhaseSamples, SymbolSpectrum, Wavefunction
from .quadrature import (
    CohenKernel,
    fourier_multiplier,
    heisenberg_weyl_apply,
    inverse_symbol_fourier,
    is_kernel_zero,
    m_hat_apply,
    nullspace_witness,
    quantize_apply,
    quantize_apply_fast,
    reduced_dirac_numeric,
    sinc,
    symbol_fourier,
    symmetry_check,
)

__all__ = [
    "BACKEND",
    "Grid",
    "GridMismatchError",
    "PhaseSamples",
    "SymbolSpectrum",
    "Wavefunction",
    "CohenKernel",
    "fourier_multiplier",
    "heisenberg_weyl_apply",
    "inverse_symbol_fourier",
    "is_kernel_zero",
    "m_hat_apply",
    "nullspace_witness",
    "quantize_apply",
    "quantize_apply_fast",
    "reduced_dirac_numeric",
    "sinc",
    "symbol_fourier",
    "symmetry_check",
]
