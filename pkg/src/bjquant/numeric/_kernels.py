"""Hot loops of the Cohen quadrature.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy version.
``BJQUANT_DISABLE_NUMBA=1`` (or a missing numba) selects numpy.  Both versions
fix the summation order per output sample, so results do not depend on
thread scheduling.

Index conventions: ``weights[k, m]`` is the symbol spectrum already multiplied
by the Cohen kernel, with centered offsets ``k' = k - N/2``, ``m' = m - N/2``.
The displacement for (k, m) sends ``psi[a]`` to
``exp(i pi k' (2 a' + m') / N) psi[(a + m') mod N]``.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "naive_quadrature", "gather_shifted_rows", "naive_numpy", "gather_numpy"]


def _numba_wanted() -> bool:
    return os.environ.get("BJQUANT_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes")


def _roots(N: int) -> np.ndarray:
    """exp(i pi j / N) for j = 0 .. 2N-1."""
    return np.exp(1j * np.pi * np.arange(2 * N) / N)


def naive_numpy(weights: np.ndarray, psi: np.ndarray) -> np.ndarray:
    N = psi.shape[0]
    roots = _roots(N)
    centered = np.arange(N) - N // 2
    out = np.zeros(N, dtype=np.complex128)
    for m in range(N):
        mp = centered[m]
        idx = (centered[None, :] * (2 * centered[:, None] + mp)) % (2 * N)
        row = roots[idx] @ weights[:, m]
        out += row * np.roll(psi, -mp)
    return out / N


def gather_numpy(G: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """``out[a] = (1/N) sum_m G[a, m] psi[(a + m') mod N]``."""
    N = psi.shape[0]
    a = np.arange(N)
    shifted = psi[(a[:, None] + (a[None, :] - N // 2)) % N]
    return (G * shifted).sum(axis=1) / N


naive_numba = None
gather_numba = None

if _numba_wanted():
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None

    if numba is not None:
        # the default layer probes TBB first and warns on old installs
        if "NUMBA_THREADING_LAYER" not in os.environ:
            numba.config.THREADING_LAYER = "workqueue"

        @numba.njit(parallel=True, cache=True)
        def naive_numba(weights, psi):
            N = psi.shape[0]
            half = N // 2
            roots = np.empty(2 * N, dtype=np.complex128)
            for j in range(2 * N):
                roots[j] = np.exp(1j * np.pi * j / N)
            out = np.zeros(N, dtype=np.complex128)
            for a in numba.prange(N):
                ap = a - half
                acc = 0j
                for m in range(N):
                    mp = m - half
                    inner = 0j
                    for k in range(N):
                        kp = k - half
                        inner += weights[k, m] * roots[(kp * (2 * ap + mp)) % (2 * N)]
                    acc += inner * psi[(a + mp) % N]
                out[a] = acc / N
            return out

        @numba.njit(parallel=True, cache=True)
        def gather_numba(G, psi):
            N = psi.shape[0]
            half = N // 2
            out = np.empty(N, dtype=np.complex128)
            for a in numba.prange(N):
                acc = 0j
                for m in range(N):
                    acc += G[a, m] * psi[(a + m - half) % N]
                out[a] = acc / N
            return out


BACKEND = "numba" if naive_numba is not None else "numpy"


def naive_quadrature(weights: np.ndarray, psi: np.ndarray) -> np.ndarray:
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    if naive_numba is not None:
        return naive_numba(weights, psi)
    return naive_numpy(weights, psi)


def gather_shifted_rows(G: np.ndarray, psi: np.ndarray) -> np.ndarray:
    G = np.ascontiguousarray(G, dtype=np.complex128)
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    if gather_numba is not None:
        return gather_numba(G, psi)
    return gather_numpy(G, psi)
