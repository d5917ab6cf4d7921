"""Exact quantization of polynomial observables.

Born-Jordan ordering is computed as the average over ``tau`` in [0, 1] of the
tau-ordered products, the same ``tau`` shared by every degree of freedom.
For one degree of freedom this is the equal-weight average
``1/(r+1) sum_l q^(r-l) p^s q^l``; for several it is what the sinc kernel of
the dot product ``p0 . q0`` produces, and it is *not* the product of the
one-index averages.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .ccr import NCPolynomial, adjoint, commutator, normal_order
from .phase_space import PhasePolynomial, SplitObservable, poisson_bracket, split
from .scalar import HBAR, I, ONE, Scalar, as_scalar

__all__ = [
    "QuantizationRule",
    "GvhReport",
    "DiracCheck",
    "quantize",
    "quantize_bj",
    "quantize_weyl",
    "bj1_form",
    "bj2_form",
    "quantize_bj_commutator_form",
    "naive_quantize",
    "dirac_quantize_via_bracket",
    "gvh_demo",
    "verify_reduced_dirac",
    "is_symmetric",
]

I_HBAR = I * HBAR


class QuantizationRule(enum.Enum):
    BORN_JORDAN = "bj"
    WEYL = "weyl"


def _word(j: int, *runs: tuple[str, int]) -> tuple:
    return tuple((j, kind) for kind, e in runs for _ in range(e))


@lru_cache(maxsize=None)
def _sandwich(r_left: int, s: int, r_right: int, j: int, n: int) -> NCPolynomial:
    """Normal form of ``q_j^r_left p_j^s q_j^r_right``."""
    return normal_order(_word(j, ("q", r_left), ("p", s), ("q", r_right)), n)


def bj1_form(r: int, s: int, j: int = 1, n: int = 1) -> NCPolynomial:
    """``1/(r+1) sum_{l=0}^{r} q^(r-l) p^s q^l``."""
    total = NCPolynomial(n)
    for ell in range(r + 1):
        total = total + _sandwich(r - ell, s, ell, j, n)
    return total / (r + 1)


def bj2_form(r: int, s: int, j: int = 1, n: int = 1) -> NCPolynomial:
    """``1/(s+1) sum_{l=0}^{s} p^(s-l) q^r p^l`` (the p-outer average)."""
    total = NCPolynomial(n)
    for ell in range(s + 1):
        total = total + normal_order(_word(j, ("p", s - ell), ("q", r), ("p", ell)), n)
    return total / (s + 1)


def quantize_bj_commutator_form(r: int, s: int, j: int = 1, n: int = 1) -> NCPolynomial:
    """``[q^(r+1), p^(s+1)] / (i h (r+1)(s+1))``; raises InexactDivisionError if not divisible."""
    if r < 0 or s < 0:
        raise ValueError("r and s must be non-negative")
    qq = NCPolynomial.monomial(n, {j: (r + 1, 0)})
    pp = NCPolynomial.monomial(n, {j: (0, s + 1)})
    return commutator(qq, pp) / (I_HBAR * ((r + 1) * (s + 1)))


@lru_cache(maxsize=None)
def _tau_factor(r: int, s: int, j: int, n: int) -> tuple:
    """Tau-ordered ``q_j^r p_j^s`` as ``((a, b), NCPolynomial)`` pairs meaning tau^a (1-tau)^b."""
    return tuple(((r - ell, ell), _sandwich(ell, s, r - ell, j, n).scale(comb(r, ell))) for ell in range(r + 1))


def _beta(a: int, b: int) -> Fraction:
    """Integral of tau^a (1-tau)^b over [0, 1]."""
    return Fraction(factorial(a) * factorial(b), factorial(a + b + 1))


@lru_cache(maxsize=None)
def _bj_monomial(mono: tuple, n: int) -> NCPolynomial:
    acc: dict[tuple[int, int], NCPolynomial] = {(0, 0): NCPolynomial.scalar(1, n)}
    for j, (r, s) in enumerate(mono, start=1):
        if r == 0 and s == 0:
            continue
        nxt: dict[tuple[int, int], NCPolynomial] = {}
        for (a1, b1), left in acc.items():
            for (a2, b2), right in _tau_factor(r, s, j, n):
                key = (a1 + a2, b1 + b2)
                prod = left * right
                nxt[key] = nxt[key] + prod if key in nxt else prod
        acc = nxt
    total = NCPolynomial(n)
    for (a, b), poly in acc.items():
        total = total + poly.scale(_beta(a, b))
    return total


@lru_cache(maxsize=None)
def _weyl_monomial(mono: tuple, n: int) -> NCPolynomial:
    out = NCPolynomial.scalar(1, n)
    for j, (r, s) in enumerate(mono, start=1):
        if r == 0 and s == 0:
            continue
        factor = NCPolynomial(n)
        for ell in range(r + 1):
            factor = factor + _sandwich(r - ell, s, ell, j, n).scale(comb(r, ell))
        out = out * factor.scale(Fraction(1, 2**r))
    return out


def _linear_extension(H: PhasePolynomial, rule) -> NCPolynomial:
    total = NCPolynomial(H.n)
    for mono, c in H.terms.items():
        total = total + rule(mono, H.n).scale(c)
    return total


def quantize_bj(H: PhasePolynomial) -> NCPolynomial:
    return _linear_extension(H, _bj_monomial)


def quantize_weyl(H: PhasePolynomial) -> NCPolynomial:
    """Weyl symmetrization, ``q^r p^s -> 2^-r sum_l C(r,l) q^(r-l) p^s q^l`` per index."""
    return _linear_extension(H, _weyl_monomial)


def quantize(H: PhasePolynomial, rule: QuantizationRule | str = QuantizationRule.BORN_JORDAN) -> NCPolynomial:
    rule = QuantizationRule(rule)
    return quantize_bj(H) if rule is QuantizationRule.BORN_JORDAN else quantize_weyl(H)


# --- Dirac's rule and the Groenewold-van Hove obstruction ----------------------


def _dirac_forced_monomial(mono: tuple, n: int) -> NCPolynomial:
    # q^a p^b = {q^(a+1), p^(b+1)} / ((a+1)(b+1)), so Dirac's rule itself fixes its image
    out = NCPolynomial.scalar(1, n)
    for j, (a, b) in enumerate(mono, start=1):
        if a and b:
            out = out * quantize_bj_commutator_form(a, b, j, n)
        elif a or b:
            out = out * NCPolynomial.monomial(n, {j: (a, b)})
    return out


def _ordered_monomial(q_left: bool):
    def rule(mono: tuple, n: int) -> NCPolynomial:
        out = NCPolynomial.scalar(1, n)
        for j, (a, b) in enumerate(mono, start=1):
            runs = (("q", a), ("p", b)) if q_left else (("p", b), ("q", a))
            out = out * normal_order(_word(j, *runs), n)
        return out

    return rule


_INNER_RULES = {
    "dirac": _dirac_forced_monomial,
    "q-left": _ordered_monomial(True),
    "p-left": _ordered_monomial(False),
}


def naive_quantize(H: PhasePolynomial, inner: str = "dirac") -> NCPolynomial:
    """Quantize the operands fed to Dirac's rule.

    ``inner="dirac"`` keeps ``q^r -> q^r`` and ``p^s -> p^s`` and sends a mixed
    monomial ``q^a p^b`` to ``[q^(a+1), p^(b+1)] / (i h (a+1)(b+1))``, the only
    image consistent with the rule.  ``q-left`` / ``p-left`` are plain orderings.
    """
    try:
        rule = _INNER_RULES[inner]
    except KeyError:
        raise ValueError(f"unknown inner rule {inner!r}") from None
    return _linear_extension(H, rule)


def dirac_quantize_via_bracket(A: PhasePolynomial, B: PhasePolynomial, scale=ONE, inner: str = "dirac") -> NCPolynomial:
    """The operator Dirac's correspondence assigns to ``scale * {A, B}``."""
    comm = commutator(naive_quantize(A, inner), naive_quantize(B, inner))
    return comm.scale(as_scalar(scale)) / I_HBAR


@dataclass(frozen=True)
class GvhReport:
    op_via_q3p3: NCPolynomial
    op_via_mixed: NCPolynomial
    difference: NCPolynomial

    def to_json_obj(self, hbar=None) -> dict:
        from .ccr import to_json_obj

        obj = {
            "op_via_q3p3": to_json_obj(self.op_via_q3p3),
            "op_via_mixed": to_json_obj(self.op_via_mixed),
            "difference": to_json_obj(self.difference),
            "text": {
                "op_via_q3p3": self.op_via_q3p3.pretty(),
                "op_via_mixed": self.op_via_mixed.pretty(),
                "difference": self.difference.pretty(),
            },
        }
        if hbar is not None:
            obj["difference_at_hbar"] = format_at_hbar(self.difference, hbar)
        return obj

    def to_json(self, hbar=None) -> str:
        return json.dumps(self.to_json_obj(hbar), indent=2)

    def to_text(self, hbar=None) -> str:
        lines = [
            "Op(q^2 p^2) via (1/9){q^3, p^3}:   " + self.op_via_q3p3.pretty(),
            "Op(q^2 p^2) via (1/3){q^2 p, p^2 q}: " + self.op_via_mixed.pretty(),
            "difference: " + self.difference.pretty(),
        ]
        if hbar is not None:
            lines.append(f"difference at h = {hbar}: {format_at_hbar(self.difference, hbar)}")
        return "\n".join(lines)


def format_at_hbar(op: NCPolynomial, hbar) -> str:
    """Render an operator with a rational value substituted for hbar, exactly."""
    from .phase_space import pretty_terms

    hbar = Fraction(hbar)
    substituted = NCPolynomial(op.n, [(m, Scalar.const(*c.evaluate(hbar))) for m, c in op.terms.items()])
    return pretty_terms(substituted.terms.items(), op.n)


def gvh_demo() -> GvhReport:
    q = PhasePolynomial.var("q")
    p = PhasePolynomial.var("p")
    via_q3p3 = dirac_quantize_via_bracket(q**3, p**3, Fraction(1, 9))
    via_mixed = dirac_quantize_via_bracket(q**2 * p, p**2 * q, Fraction(1, 3))
    return GvhReport(via_q3p3, via_mixed, via_q3p3 - via_mixed)


@dataclass(frozen=True)
class DiracCheck:
    """Outcome of the reduced Dirac test; falsy on failure, with the nonzero residual."""

    passed: bool
    difference: NCPolynomial

    def __bool__(self) -> bool:
        return self.passed


def verify_reduced_dirac(S1: SplitObservable | PhasePolynomial, S2: SplitObservable | PhasePolynomial) -> DiracCheck:
    """Check ``[Op(H), Op(K)] == i h Op({H, K})`` exactly for split H, K.

    Plain polynomials are split first; a mixed term raises MixedTermError.
    """
    H = (S1 if isinstance(S1, SplitObservable) else split(S1)).total
    K = (S2 if isinstance(S2, SplitObservable) else split(S2)).total
    lhs = commutator(quantize_bj(H), quantize_bj(K))
    rhs = quantize_bj(poisson_bracket(H, K)).scale(I_HBAR)
    diff = lhs - rhs
    return DiracCheck(diff.is_zero(), diff)


def is_symmetric(a: NCPolynomial) -> bool:
    return adjoint(a) == a
