"""Exact identity suite run by ``bjquant verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import symbolic
from .ccr import NCPolynomial, commutator, commutator_sum_form, p as p_hat, q as q_hat
from .phase_space import PhasePolynomial, SplitObservable, poisson_bracket
from .scalar import HBAR, I, Scalar

__all__ = ["IdentityResult", "run_suite", "random_split", "random_real_polynomial"]


@dataclass
class IdentityResult:
    name: str
    degrees: str
    passed: bool
    checked: int = 0
    witness: str | None = None


def _mono(r: int, s: int, n: int = 1, j: int = 1) -> PhasePolynomial:
    return PhasePolynomial.monomial(n, {j: (r, s)})


def _random_coeff(rng: random.Random, real: bool = True) -> Scalar:
    re = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    im = 0 if real else Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Scalar.const(re, im)


def _random_exponents(rng: random.Random, n: int, degree: int, kinds: str) -> tuple:
    total = rng.randint(0, degree)
    exps = [[0, 0] for _ in range(n)]
    for _ in range(total):
        j = rng.randrange(n)
        slot = {"q": 0, "p": 1}[rng.choice(kinds)]
        exps[j][slot] += 1
    return tuple(map(tuple, exps))


def random_split(rng: random.Random, n: int, degree: int, max_terms: int = 4) -> SplitObservable:
    T = PhasePolynomial(n, [(_random_exponents(rng, n, degree, "p"), _random_coeff(rng)) for _ in range(rng.randint(1, max_terms))])
    V = PhasePolynomial(n, [(_random_exponents(rng, n, degree, "q"), _random_coeff(rng)) for _ in range(rng.randint(1, max_terms))])
    const = T.terms.get(((0, 0),) * n)
    if const is not None:
        T = T - PhasePolynomial.constant(const, n)
        V = V + PhasePolynomial.constant(const, n)
    return SplitObservable(T, V)


def random_real_polynomial(rng: random.Random, n: int, degree: int, max_terms: int = 5) -> PhasePolynomial:
    return PhasePolynomial(n, [(_random_exponents(rng, n, degree, "qp"), _random_coeff(rng)) for _ in range(rng.randint(1, max_terms))])


def _run(name: str, degrees: str, cases: Callable) -> IdentityResult:
    res = IdentityResult(name, degrees, True)
    for label, ok, detail in cases():
        res.checked += 1
        if not ok:
            res.passed = False
            res.witness = f"{label}: {detail}"
            break
    return res


def _appendix(D: int):
    for r in range(1, D + 1):
        for s in range(1, D + 1):
            c = commutator(q_hat(power=r), p_hat(power=s))
            qa = commutator_sum_form(r, s, "q-outer")
            pa = commutator_sum_form(r, s, "p-outer")
            yield f"[q^{r}, p^{s}]", c == qa == pa, f"commutator {c.pretty()} vs {qa.pretty()} / {pa.pretty()}"


def _bj_triple(D: int):
    for r in range(D + 1):
        for s in range(D + 1):
            f1 = symbolic.bj1_form(r, s)
            f2 = symbolic.bj2_form(r, s)
            f3 = symbolic.quantize_bj_commutator_form(r, s)
            f4 = symbolic.quantize_bj(_mono(r, s))
            yield f"q^{r} p^{s}", f1 == f2 == f3 == f4, f"{f1.pretty()} | {f2.pretty()} | {f3.pretty()} | {f4.pretty()}"


def _lemma1(D: int):
    for r in range(D + 1):
        got = symbolic.quantize_bj(_mono(r, 0))
        yield f"Op(q^{r})", got == q_hat(power=r), got.pretty()
        got = symbolic.quantize_bj(_mono(0, r))
        yield f"Op(p^{r})", got == p_hat(power=r), got.pretty()
    if D >= 2:
        got = symbolic.quantize_bj(_mono(1, 1))
        want = q_hat() * p_hat() - NCPolynomial.scalar(I * HBAR / 2)
        yield "Op(q p)", got == want, got.pretty()


def _ihrs(D: int):
    ih = I * HBAR
    for r in range(1, D + 1):
        for s in range(1, D + 1):
            br = poisson_bracket(_mono(r, 0), _mono(0, s))
            lhs = commutator(q_hat(power=r), p_hat(power=s))
            rhs = symbolic.quantize_bj(br).scale(ih)
            scaled = symbolic.quantize_bj(_mono(r - 1, s - 1)).scale(r * s)
            ok = lhs == rhs and symbolic.quantize_bj(br) == scaled
            yield f"(r, s) = ({r}, {s})", ok, f"{lhs.pretty()} vs {rhs.pretty()}"


def _reduced_dirac(D: int, n_random: int, seed: int):
    for a in range(1, D + 1):
        for b in range(1, D + 1):
            T = SplitObservable(_mono(0, a), PhasePolynomial(1))
            V = SplitObservable(PhasePolynomial(1), _mono(b, 0))
            chk = symbolic.verify_reduced_dirac(T, V)
            yield f"T = p^{a}, V = q^{b}", chk.passed, chk.difference.pretty()
    rng = random.Random(seed)
    for i in range(n_random):
        S1, S2 = random_split(rng, 1, D), random_split(rng, 1, D)
        chk = symbolic.verify_reduced_dirac(S1, S2)
        yield f"random pair {i}: ({S1.total}) vs ({S2.total})", chk.passed, chk.difference.pretty()


def _symmetry(D: int, n_random: int, seed: int):
    rng = random.Random(seed)
    for i in range(n_random):
        H = random_real_polynomial(rng, 1, D)
        op = symbolic.quantize_bj(H)
        yield f"random H {i}: {H}", symbolic.is_symmetric(op), op.pretty()


def _gvh(D: int):
    rep = symbolic.gvh_demo()
    want = NCPolynomial.scalar(Scalar.const(Fraction(-1, 3), 0, hpow=2))
    yield "Op via {q^3,p^3} - Op via {q^2 p, p^2 q}", rep.difference == want, rep.difference.pretty()


def run_suite(max_degree: int = 6, n_random: int = 25, seed: int = 0) -> list[IdentityResult]:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    D = max_degree
    return [
        _run("appendix sum forms", f"1..{D}", lambda: _appendix(D)),
        _run("BJ1 = BJ2 = commutator form", f"0..{D}", lambda: _bj_triple(D)),
        _run("Op(q^r), Op(p^r), Op(qp)", f"0..{D}", lambda: _lemma1(D)),
        _run("Op{q^r,p^s} = rs Op(q^(r-1) p^(s-1))", f"1..{D}", lambda: _ihrs(D)),
        _run("reduced Dirac rule", f"1..{D}", lambda: _reduced_dirac(D, n_random, seed)),
        _run("BJ of real H is symmetric", f"<={D}", lambda: _symmetry(D, n_random, seed + 1)),
        _run("Groenewold-van Hove gap = -h^2/3", "4", lambda: _gvh(D)),
    ]
