"""Acceptance criteria, each at its stated tolerance and time budget.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import random
import statistics
import time
from fractions import Fraction

import numpy as np
import pytest

from bjquant.ccr import NCPolynomial, commutator, commutator_sum_form, p, q
from bjquant.numeric import (
    CohenKernel,
    Grid,
    PhaseSamples,
    fourier_multiplier,
    is_kernel_zero,
    m_hat_apply,
    nullspace_witness,
    quantize_apply,
    quantize_apply_fast,
    reduced_dirac_numeric,
    symmetry_check,
)
from bjquant.numeric.checks import gaussian_pair
from bjquant.numeric.io import hermite_function
from bjquant.parser import parse_observable
from bjquant.phase_space import PhasePolynomial, SplitObservable
from bjquant.scalar import HBAR, I
from bjquant.symbolic import (
    bj1_form,
    bj2_form,
    dirac_quantize_via_bracket,
    is_symmetric,
    quantize_bj,
    quantize_bj_commutator_form,
    verify_reduced_dirac,
)
from bjquant.verify import random_real_polynomial, random_split

from conftest import ACCEPTANCE_LINES

IH = I * HBAR


def report(num: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[AC{num}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


def rel(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)) / np.linalg.norm(b))


@pytest.fixture(scope="module")
def grid():
    return Grid.balanced(256, 1.0)


@pytest.fixture(scope="module")
def psi(grid):
    return hermite_function(grid, 0)


# --- exact -------------------------------------------------------------------


def test_ac01_gvh_obstruction():
    t0 = time.perf_counter()
    P = parse_observable
    gh1 = dirac_quantize_via_bracket(P("q^3"), P("p^3"), Fraction(1, 9))
    gh2 = dirac_quantize_via_bracket(P("q^2*p"), P("p^2*q"), Fraction(1, 3))
    elapsed = time.perf_counter() - t0
    base = q(power=2) * p(power=2) - (q() * p()).scale(2 * IH)
    ok = (
        gh1 == base - NCPolynomial.scalar(HBAR**2 * Fraction(2, 3))
        and gh2 == base - NCPolynomial.scalar(HBAR**2 * Fraction(1, 3))
        and gh1 - gh2 == NCPolynomial.scalar(-HBAR**2 / 3)
        and elapsed < 1.0
    )
    report(1, "GvH obstruction", ok, f"difference {(gh1 - gh2).pretty()}, {elapsed:.3f} s < 1 s")


def test_ac02_bj_triple_equality():
    t0 = time.perf_counter()
    bad = [(r, s) for r in range(7) for s in range(7) if not (bj1_form(r, s) == bj2_form(r, s) == quantize_bj_commutator_form(r, s))]
    elapsed = time.perf_counter() - t0
    report(2, "BJ1 = BJ2 = commutator form, 0 <= r,s <= 6", not bad and elapsed < 10, f"{49 - len(bad)}/49 exact, {elapsed:.2f} s < 10 s")


def test_ac03_appendix_identities():
    bad = []
    for r in range(1, 7):
        for s in range(1, 7):
            c = commutator(q(power=r), p(power=s))
            if not (c == commutator_sum_form(r, s, "q-outer") == commutator_sum_form(r, s, "p-outer")):
                bad.append((r, s))
    report(3, "commutator sum forms, 1 <= r,s <= 6", not bad, f"{36 - len(bad)}/36 exact")


def test_ac04_lemma_one():
    ok = all(quantize_bj(parse_observable(f"q^{r}")) == q(power=r) for r in range(7))
    ok &= all(quantize_bj(parse_observable(f"p^{r}")) == p(power=r) for r in range(7))
    qp = quantize_bj(parse_observable("q*p"))
    ok &= qp == q() * p() - NCPolynomial.scalar(IH / 2)
    report(4, "Op(q^r) = q^r, Op(p^r) = p^r, Op(qp)", ok, f"Op(qp) = {qp.pretty()}")


def test_ac05_reduced_dirac_symbolic():
    fails = 0
    for a in range(1, 5):
        for b in range(1, 5):
            T = SplitObservable(parse_observable(f"p^{a}"), PhasePolynomial(1))
            V = SplitObservable(PhasePolynomial(1), parse_observable(f"q^{b}"))
            fails += not verify_reduced_dirac(T, V)
    rng = random.Random(2024)
    for _ in range(100):
        fails += not verify_reduced_dirac(random_split(rng, 1, 5), random_split(rng, 1, 5))
    for _ in range(20):
        fails += not verify_reduced_dirac(random_split(rng, 2, 3), random_split(rng, 2, 3))
    report(5, "reduced Dirac rule, exact", fails == 0, f"16 power pairs + 100 random (n=1, deg<=5) + 20 random (n=2, deg<=3), {fails} failures")


def test_ac06_symmetry_symbolic():
    rng = random.Random(6)
    fails = sum(not is_symmetric(quantize_bj(random_real_polynomial(rng, 1, 6))) for _ in range(100))
    report(6, "BJ of real H is symmetric", fails == 0, f"100 random real H (deg<=6), {fails} failures")


# --- numeric -----------------------------------------------------------------


def test_ac07_kernel_zeros(grid, psi):
    N = grid.N
    off = grid.offsets
    worst_bj, worst_weyl, count = 0.0, 0.0, 0
    for k in range(N):
        for m in range(N):
            if is_kernel_zero(N, off[k], off[m]):
                count += 1
                worst_bj = max(worst_bj, m_hat_apply(k, m, psi).norm())
                worst_weyl = max(worst_weyl, abs(m_hat_apply(k, m, psi, CohenKernel.WEYL).norm() - psi.norm()))
    ok = count > 0 and worst_bj <= 1e-10 and worst_weyl <= 1e-12
    report(7, "BJ kernel vanishes on the zero set (N=256)", ok, f"{count} points, max |M psi| = {worst_bj:.1e} <= 1e-10, Weyl norm drift {worst_weyl:.1e}")


def test_ac08_non_injectivity(grid, psi):
    N, h = grid.N, grid.N // 2
    H = PhaseSamples.from_function(grid, lambda Q, P: np.exp(-((Q - 0.3) ** 2 + (P + 0.2) ** 2) / 2))
    G = nullspace_witness(grid, [(h + 16, h + 16), (h + N // 4, h + 4), (h - N // 8, h - 8)], [1.0, -0.5j, 0.25 + 0.75j])
    r = rel(quantize_apply(H + G, psi).values, quantize_apply(H, psi).values)
    report(8, "nullspace symbols do not change Op(H) (N=256)", r <= 1e-9, f"relative change {r:.1e} <= 1e-9")


def test_ac09_classical_limits(grid):
    phi = hermite_function(grid, 1)
    T, V, _ = gaussian_pair(grid)
    rv = rel(quantize_apply_fast(PhaseSamples(grid, np.outer(V, np.ones(grid.N))), phi).values, V * phi.values)
    rt = rel(quantize_apply_fast(PhaseSamples(grid, np.outer(np.ones(grid.N), T)), phi).values, fourier_multiplier(T, phi).values)
    report(9, "V(q) multiplies, T(p) is a Fourier multiplier", max(rv, rt) <= 1e-6, f"{rv:.1e}, {rt:.1e} <= 1e-6")


def test_ac10_identity(grid, psi):
    r = rel(quantize_apply(PhaseSamples(grid, np.ones((grid.N, grid.N))), psi).values, psi.values)
    report(10, "Op(1) = Id", r <= 1e-10, f"{r:.1e} <= 1e-10")


def test_ac11_reduced_dirac_numeric(grid, psi):
    t0 = time.perf_counter()
    T, V, bracket = gaussian_pair(grid)
    r_fast = reduced_dirac_numeric(T, V, bracket, psi)
    r_naive = reduced_dirac_numeric(T, V, bracket, psi, fast=False)
    elapsed = time.perf_counter() - t0
    ok = max(r_fast, r_naive) <= 5e-4 and elapsed < 30
    report(11, "numeric reduced Dirac (N=256)", ok, f"residual {max(r_fast, r_naive):.1e} <= 5e-4, {elapsed:.2f} s < 30 s")


def test_ac12_symmetry_numeric(grid, psi):
    phi = hermite_function(grid, 1)
    H = PhaseSamples.from_function(grid, lambda Q, P: np.exp(-((Q - 0.3) ** 2 + (P + 0.2) ** 2) / 2))
    r = symmetry_check(H, psi, phi)
    r_imag = symmetry_check(H * 1j, psi, phi, allow_complex=True)
    report(12, "numeric symmetry, imaginary control", r <= 1e-8 and r_imag > 1e-2, f"{r:.1e} <= 1e-8, control {r_imag:.2f} > 1e-2")


def _median_time(fn, repeats=5):
    fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_ac13_fast_path(grid, psi):
    rng = np.random.default_rng(13)
    worst = 0.0
    for N in (32, 64, 128):
        g = Grid.balanced(N)
        H = PhaseSamples(g, rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)))
        x = hermite_function(g, 3)
        for kern in CohenKernel:
            worst = max(worst, rel(quantize_apply_fast(H, x, kern).values, quantize_apply(H, x, kern).values))
    H = PhaseSamples.from_function(grid, lambda Q, P: np.exp(-(Q**2 + P**2) / 2))
    t_naive = _median_time(lambda: quantize_apply(H, psi))
    t_fast = _median_time(lambda: quantize_apply_fast(H, psi))
    speedup = t_naive / t_fast
    ok = worst <= 1e-10 and speedup >= 10
    report(13, "fast path fidelity and speed", ok, f"max deviation {worst:.1e} <= 1e-10 (N <= 128), speedup {speedup:.0f}x >= 10x at N=256")


if __name__ == "__main__":
    import subprocess
    import sys

    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q"]))
