import json
import random
from fractions import Fraction

import pytest

from bjquant.ccr import NCPolynomial, adjoint, commutator, p, q
from bjquant.parser import parse_observable
from bjquant.phase_space import MixedTermError, PhasePolynomial, SplitObservable, poisson_bracket
from bjquant.scalar import HBAR, I, InexactDivisionError
from bjquant.symbolic import (
    QuantizationRule,
    bj1_form,
    bj2_form,
    dirac_quantize_via_bracket,
    gvh_demo,
    is_symmetric,
    naive_quantize,
    quantize,
    quantize_bj,
    quantize_bj_commutator_form,
    quantize_weyl,
    verify_reduced_dirac,
)
from bjquant.verify import random_real_polynomial, random_split

IH = I * HBAR


def P(text, n=1):
    return parse_observable(text, n)


def C(c, n=1):
    return NCPolynomial.scalar(c, n)


GH1 = q(power=2) * p(power=2) - (q() * p()).scale(2 * IH) - C(HBAR**2 * Fraction(2, 3))
GH2 = q(power=2) * p(power=2) - (q() * p()).scale(2 * IH) - C(HBAR**2 * Fraction(1, 3))


def test_bj_examples():
    assert quantize_bj(P("q*p")) == q() * p() - C(IH / 2)
    assert quantize_bj(P("q*p")) == (q() * p() + p() * q()) / 2
    assert quantize_bj(P("q^2*p^2")) == GH1
    assert quantize_bj(P("q^2*p^2")).pretty() == "q^2 p^2 - 2i h q p - (2/3) h^2"
    for r in range(7):
        assert quantize_bj(P(f"q^{r}")) == q(power=r)
        assert quantize_bj(P(f"p^{r}")) == p(power=r)


def test_commutator_form_examples():
    assert quantize_bj_commutator_form(0, 0) == C(1)
    assert quantize_bj_commutator_form(1, 1) == q() * p() - C(IH / 2)
    assert quantize_bj_commutator_form(2, 2) == GH1
    with pytest.raises(ValueError):
        quantize_bj_commutator_form(-1, 0)


@pytest.mark.parametrize("r", range(7))
@pytest.mark.parametrize("s", range(7))
def test_three_bj_forms_agree(r, s):
    f1 = bj1_form(r, s)
    assert f1 == bj2_form(r, s)
    assert f1 == quantize_bj_commutator_form(r, s)
    assert f1 == quantize_bj(PhasePolynomial.monomial(1, {1: (r, s)}))


def test_weyl_examples():
    assert quantize_weyl(P("q*p")) == q() * p() - C(IH / 2)
    assert quantize_weyl(P("q^2*p^2")) == q(power=2) * p(power=2) - (q() * p()).scale(2 * IH) - C(HBAR**2 / 2)
    assert quantize_weyl(P("q^3")) == q(power=3)


def test_bj_and_weyl_agree_up_to_degree_two():
    for a in range(3):
        for b in range(3 - a):
            H = PhasePolynomial.monomial(1, {1: (a, b)})
            assert quantize_bj(H) == quantize_weyl(H)


def test_bj_weyl_gap_on_q2p2():
    H = P("q^2*p^2")
    assert quantize_bj(H) - quantize_weyl(H) == C(-HBAR**2 / 6)


def test_rule_dispatch():
    H = P("q^2*p^2")
    assert quantize(H, "bj") == quantize(H, QuantizationRule.BORN_JORDAN) == quantize_bj(H)
    assert quantize(H, "weyl") == quantize_weyl(H)
    with pytest.raises(ValueError):
        quantize(H, "normal")


def test_linearity():
    A, B = P("q^3*p + 2*p^2"), P("1/2*q*p^3 - q")
    assert quantize_bj(A + B) == quantize_bj(A) + quantize_bj(B)
    assert quantize_bj(A * 3) == quantize_bj(A).scale(3)


# --- Dirac's rule ------------------------------------------------------------


def test_dirac_examples():
    assert dirac_quantize_via_bracket(P("q^3"), P("p^3"), Fraction(1, 9)) == GH1
    assert dirac_quantize_via_bracket(P("q^2*p"), P("p^2*q"), Fraction(1, 3)) == GH2
    assert dirac_quantize_via_bracket(P("q"), P("p")) == C(1)


def test_gvh_report():
    rep = gvh_demo()
    assert rep.difference == C(-HBAR**2 / 3)
    assert rep.difference == rep.op_via_q3p3 - rep.op_via_mixed
    assert rep.op_via_q3p3 == quantize_bj(P("q^2*p^2"))
    assert rep.op_via_mixed != rep.op_via_q3p3
    text = rep.to_text(Fraction(1))
    assert "difference: -(1/3) h^2" in text
    assert text.endswith("-1/3")
    obj = json.loads(rep.to_json(Fraction(1)))
    assert obj["difference_at_hbar"] == "-1/3"
    assert obj["text"]["op_via_mixed"] == "q^2 p^2 - 2i h q p - (1/3) h^2"


@pytest.mark.parametrize("inner", ["q-left", "p-left"])
def test_plain_orderings_do_not_reproduce_mixed_factorization(inner):
    # with q^a p^b -> q^a p^b (or p^b q^a) inside the bracket, the mixed factorization misses GH2
    got = dirac_quantize_via_bracket(P("q^2*p"), P("p^2*q"), Fraction(1, 3), inner=inner)
    assert got != GH2
    # the pure-power factorization never touches a mixed monomial
    assert dirac_quantize_via_bracket(P("q^3"), P("p^3"), Fraction(1, 9), inner=inner) == GH1


def test_naive_quantize_rules():
    assert naive_quantize(P("q^2*p"), "q-left") == q(power=2) * p()
    assert naive_quantize(P("q^2*p"), "p-left") == p() * q(power=2)
    assert naive_quantize(P("q^2*p"), "dirac") == quantize_bj(P("q^2*p"))
    with pytest.raises(ValueError):
        naive_quantize(P("q"), "weyl-ish")


# --- reduced Dirac rule ------------------------------------------------------


@pytest.mark.parametrize("a", range(1, 5))
@pytest.mark.parametrize("b", range(1, 5))
def test_reduced_dirac_powers(a, b):
    T = SplitObservable(P(f"p^{a}"), PhasePolynomial(1))
    V = SplitObservable(PhasePolynomial(1), P(f"q^{b}"))
    assert verify_reduced_dirac(T, V)


def test_reduced_dirac_examples():
    chk = verify_reduced_dirac(SplitObservable(P("p^3"), PhasePolynomial(1)), SplitObservable(PhasePolynomial(1), P("q^3")))
    assert chk.passed and chk.difference.is_zero()
    # both sides are -9 i h BJ(q^2 p^2)
    assert commutator(p(power=3), q(power=3)) == quantize_bj(P("q^2*p^2")).scale(-9 * IH)
    S = SplitObservable(P("p^2/2"), P("q^2"))
    assert verify_reduced_dirac(S, S)
    with pytest.raises(MixedTermError):
        verify_reduced_dirac(P("q^2*p"), P("p^2*q"))


def test_reduced_dirac_random_one_index():
    rng = random.Random(7)
    for _ in range(30):
        assert verify_reduced_dirac(random_split(rng, 1, 5), random_split(rng, 1, 5))


def test_reduced_dirac_random_two_indices():
    rng = random.Random(11)
    for _ in range(15):
        assert verify_reduced_dirac(random_split(rng, 2, 3), random_split(rng, 2, 3))


def test_two_index_counterexample_for_per_index_product():
    # BJ of q1^2 q2 p1^2 p2 is not the product of the one-index BJ factors
    T = SplitObservable(P("p1^2*p2", 2), PhasePolynomial(2))
    V = SplitObservable(PhasePolynomial(2), P("q1^2*q2", 2))
    assert verify_reduced_dirac(T, V)
    product = quantize_bj(P("q1^2*p1^2", 2)) * quantize_bj(P("q2*p2", 2))
    assert product != quantize_bj(P("q1^2*p1^2*q2*p2", 2))
    lhs = commutator(quantize_bj(T.total), quantize_bj(V.total))
    bracket = poisson_bracket(T.total, V.total)
    per_index = NCPolynomial(2)
    for mono, c in bracket.terms.items():
        f = NCPolynomial.scalar(c, 2)
        for j, (r, s) in enumerate(mono, start=1):
            f = f * quantize_bj(PhasePolynomial.monomial(2, {j: (r, s)}))
        per_index = per_index + f
    assert lhs - per_index.scale(IH) == NCPolynomial.scalar(IH * HBAR**2 / 3, 2)


def test_failure_carries_witness(monkeypatch):
    from bjquant import symbolic

    # corrupt the quantizer: every monomial in q-left order
    monkeypatch.setattr(symbolic, "quantize_bj", lambda H: naive_quantize(H, "q-left"))
    chk = verify_reduced_dirac(P("p^2"), P("q^2"))
    assert not chk
    # [p^2, q^2] = -4i h q p - 2 h^2 while i h (-4 q p) misses the constant
    assert chk.difference == NCPolynomial.scalar(-2 * HBAR**2)


# --- symmetry ----------------------------------------------------------------


def test_symmetry_examples():
    assert is_symmetric(quantize_bj(P("q^2*p^2")))
    assert not is_symmetric(q() * p())
    assert adjoint(q() * p()) == q() * p() - C(IH)
    assert is_symmetric(q(power=2) + p(power=2))


def test_symmetry_random_real():
    rng = random.Random(3)
    for _ in range(30):
        H = random_real_polynomial(rng, 1, 6)
        assert is_symmetric(quantize_bj(H))
        assert is_symmetric(quantize_weyl(H))


def test_symmetry_two_indices():
    assert is_symmetric(quantize_bj(P("q1^2*p1*q2*p2^3 + q1*p2", 2)))


def test_imaginary_coefficient_breaks_symmetry():
    assert not is_symmetric(quantize_bj(P("i*q*p")))
