"""Cohen-kernel quantization of sampled symbols on a periodic grid (one degree of freedom).

The quantized symbol acts as

    (Op H) psi = (1/N) sum_{k,m} Hs[k, m] Theta[k, m] D(k, m) psi

where ``Hs`` is :func:`symbol_fourier` of the samples and ``D(k, m)`` is the
Heisenberg-Weyl displacement ``exp((i/h)(q0 q + p0 p))``.  The spectrum lattice
is chosen so that ``q0 p0 / 2h = pi k' m' / N`` with integer centered offsets:
modulations are exact DFT phases and translations exact circular shifts.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from . import _kernels
from .grid import Grid, GridMismatchError, PhaseSamples, SymbolSpectrum, Wavefunction, _check_same

__all__ = [
    "CohenKernel",
    "sinc",
    "heisenberg_weyl_apply",
    "m_hat_apply",
    "symbol_fourier",
    "inverse_symbol_fourier",
    "quantize_apply",
    "quantize_apply_fast",
    "fourier_multiplier",
    "is_kernel_zero",
    "nullspace_witness",
    "symmetry_check",
    "reduced_dirac_numeric",
]

_SERIES_CUTOFF = 1e-4


def sinc(t):
    """``sin(t)/t`` with ``sinc(0) = 1``; a Taylor series below |t| = 1e-4."""
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, t)
    t2 = t * t
    return np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0, np.sin(safe) / safe)


def is_kernel_zero(N: int, kp, mp):
    """Discrete sinc zero set: ``k' m'`` a nonzero multiple of N."""
    prod = np.asarray(kp) * np.asarray(mp)
    return (prod != 0) & (prod % N == 0)


class CohenKernel(enum.Enum):
    BORN_JORDAN = "bj"
    WEYL = "weyl"

    def evaluate(self, q0, p0, hbar: float):
        """Continuous kernel: ``sinc(p0 q0 / 2h)`` for Born-Jordan, 1 for Weyl."""
        q0, p0 = np.broadcast_arrays(np.asarray(q0, float), np.asarray(p0, float))
        if self is CohenKernel.WEYL:
            return np.ones(q0.shape)
        return sinc(p0 * q0 / (2 * hbar))

    def table(self, N: int) -> np.ndarray:
        """Kernel on the spectrum lattice, shape (N, N); exact zeros on the sinc zero set."""
        return _kernel_table(self, N)


@lru_cache(maxsize=16)
def _kernel_table(kernel: CohenKernel, N: int) -> np.ndarray:
    if kernel is CohenKernel.WEYL:
        theta = np.ones((N, N))
    else:
        off = np.arange(N) - N // 2
        K, M = np.meshgrid(off, off, indexing="ij")
        theta = sinc(np.pi * K * M / N)
        theta[is_kernel_zero(N, K, M)] = 0.0
    theta.setflags(write=False)
    return theta


@lru_cache(maxsize=16)
def _half_step_phase(N: int) -> np.ndarray:
    """``exp(i pi k' m' / N)`` on the spectrum lattice."""
    off = np.arange(N) - N // 2
    out = np.exp(1j * np.pi * ((off[:, None] * off[None, :]) % (2 * N)) / N)
    out.setflags(write=False)
    return out


def _kernel(kernel) -> CohenKernel:
    return kernel if isinstance(kernel, CohenKernel) else CohenKernel(kernel)


def _centered(idx: int, N: int) -> int:
    return idx - N // 2


def heisenberg_weyl_apply(k: int, m: int, psi: Wavefunction) -> Wavefunction:
    """``exp((i/h)(q0 q + p0 p)) psi`` for the lattice point (k, m).

    Evaluated as ``exp(+(i/2h) q0 p0) exp((i/h) q0 q) psi(q + p0)``.
    """
    g = psi.grid
    g.check_index(k, m)
    N = g.N
    kp, mp = _centered(k, N), _centered(m, N)
    a = g.offsets
    # q0 q / h = 2 pi k' a' / N and q0 p0 / 2h = pi k' m' / N, folded into one exact root index
    phase = np.exp(1j * np.pi * ((kp * (2 * a + mp)) % (2 * N)) / N)
    return Wavefunction(g, phase * np.roll(psi.values, -mp))


def m_hat_apply(k: int, m: int, psi: Wavefunction, kernel=CohenKernel.BORN_JORDAN) -> Wavefunction:
    """Quantized exponential ``Theta(q0, p0) D(q0, p0) psi``."""
    g = psi.grid
    g.check_index(k, m)
    theta = _kernel(kernel).table(g.N)[k, m]
    if theta == 0.0:
        return Wavefunction(g, np.zeros(g.N, dtype=complex))
    return heisenberg_weyl_apply(k, m, psi) * theta


def symbol_fourier(H: PhaseSamples) -> SymbolSpectrum:
    """``(1/2 pi h) sum H(q,p) exp(-(i/h)(q0 q + p0 p)) dq dp`` on the spectrum lattice.

    With ``dq dp = 2 pi h / N`` this is a centered 2-D DFT divided by N.
    """
    N = H.grid.N
    spec = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(H.values))) / N
    return SymbolSpectrum(H.grid, spec)


def inverse_symbol_fourier(S: SymbolSpectrum) -> PhaseSamples:
    N = S.grid.N
    vals = np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(S.values))) * N
    return PhaseSamples(S.grid, vals)


def _weights(H: PhaseSamples, psi: Wavefunction, kernel) -> np.ndarray:
    if H.grid != psi.grid:
        raise GridMismatchError(f"symbol grid {H.grid} does not match wavefunction grid {psi.grid}")
    return symbol_fourier(H).values * _kernel(kernel).table(H.grid.N)


def quantize_apply(H: PhaseSamples, psi: Wavefunction, kernel=CohenKernel.BORN_JORDAN) -> Wavefunction:
    """Direct O(N^3) quadrature over every lattice displacement."""
    W = _weights(H, psi, kernel)
    return Wavefunction(psi.grid, _kernels.naive_quadrature(W, psi.values))


def quantize_apply_fast(H: PhaseSamples, psi: Wavefunction, kernel=CohenKernel.BORN_JORDAN) -> Wavefunction:
    """Same sum in O(N^2 log N): one inverse DFT per shift column, then a gather."""
    W = _weights(H, psi, kernel)
    N = psi.grid.N
    # exp(i pi k' m' / N) * exp(2 pi i k' a' / N) = half-step phase times a DFT kernel
    W = W * _half_step_phase(N)
    G = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(W, axes=0), axis=0), axes=0) * N
    return Wavefunction(psi.grid, _kernels.gather_shifted_rows(G, psi.values))


def fourier_multiplier(T: np.ndarray, psi: Wavefunction) -> Wavefunction:
    """``T(p) psi`` with ``T`` sampled on the momentum grid."""
    T = np.asarray(T)
    if T.shape != (psi.grid.N,):
        raise GridMismatchError("multiplier length does not match the grid")
    spec = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(psi.values)))
    return Wavefunction(psi.grid, np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(T * spec))))


def nullspace_witness(grid: Grid, lattice_points, coeffs) -> PhaseSamples:
    """``sum_j c_j exp((i/h)(q0_j q + p0_j p))`` at sinc zeros: annihilated by Born-Jordan.

    ``lattice_points`` are spectrum indices (k, m) in ``0..N-1``.
    """
    lattice_points = list(lattice_points)
    coeffs = list(coeffs)
    if len(lattice_points) != len(coeffs):
        raise ValueError("need one coefficient per lattice point")
    N = grid.N
    vals = np.zeros((N, N), dtype=complex)
    a = grid.offsets
    for (k, m), c in zip(lattice_points, coeffs):
        grid.check_index(k, m)
        kp, mp = _centered(k, N), _centered(m, N)
        if not is_kernel_zero(N, kp, mp):
            raise ValueError(f"lattice point ({k}, {m}) is not a zero of the Born-Jordan kernel")
        row = np.exp(2j * np.pi * ((kp * a) % N) / N)
        col = np.exp(2j * np.pi * ((mp * a) % N) / N)
        vals += c * np.outer(row, col)
    return PhaseSamples(grid, vals)


def symmetry_check(
    H: PhaseSamples,
    psi: Wavefunction,
    phi: Wavefunction,
    kernel=CohenKernel.BORN_JORDAN,
    allow_complex: bool = False,
) -> float:
    """``|<H psi, phi> - <psi, H phi>| / (|psi| |phi|)``; real symbols should give ~0."""
    if not allow_complex and not H.is_real():
        raise ValueError("symmetry check requires a real symbol")
    _check_same(H.grid, psi.grid, phi.grid)
    lhs = quantize_apply_fast(H, psi, kernel).inner(phi)
    rhs = psi.inner(quantize_apply_fast(H, phi, kernel))
    return abs(lhs - rhs) / (psi.norm() * phi.norm())


def reduced_dirac_numeric(
    T_samples: np.ndarray,
    V_samples: np.ndarray,
    bracket_samples: PhaseSamples,
    psi: Wavefunction,
    fast: bool = True,
) -> float:
    """Relative residual of ``[T(p), V(q)] psi`` against ``i h Op_BJ({T, V}) psi``.

    ``bracket_samples`` must hold the analytic ``-T'(p) V'(q)``.
    """
    g = psi.grid
    if bracket_samples.grid != g:
        raise GridMismatchError("bracket samples live on a different grid")
    T = np.asarray(T_samples)
    V = np.asarray(V_samples)
    if T.shape != (g.N,) or V.shape != (g.N,):
        raise GridMismatchError("T and V must be sampled on the grid")
    V_psi = Wavefunction(g, V * psi.values)
    lhs = fourier_multiplier(T, V_psi).values - V * fourier_multiplier(T, psi).values
    apply = quantize_apply_fast if fast else quantize_apply
    rhs = 1j * g.hbar * apply(bracket_samples, psi, CohenKernel.BORN_JORDAN).values
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    diff = np.linalg.norm(lhs - rhs)
    psi_norm = np.linalg.norm(psi.values)
    if scale <= 1e-12 * psi_norm:
        return float(diff / psi_norm)
    return float(diff / scale)
