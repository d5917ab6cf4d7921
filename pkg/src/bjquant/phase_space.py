"""Classical observables: commutative polynomials in q_j, p_j with exact coefficients."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .ccr import DimensionError, Monomial, scalar_from_json, scalar_to_json
from .scalar import ONE, ZERO, Scalar, as_scalar, format_scalar

__all__ = [
    "PhasePolynomial",
    "ExponentialSymbol",
    "SplitObservable",
    "MixedTermError",
    "poisson_bracket",
    "partial_derivative",
    "split",
]


class MixedTermError(ValueError):
    """An observable is not of the form T(p) + V(q)."""

    def __init__(self, monomial: Monomial, message: str):
        super().__init__(message)
        self.monomial = monomial


class PhasePolynomial:
    """Immutable polynomial in q_1..q_n, p_1..p_n with :class:`Scalar` coefficients.

    Keys are ``((alpha_1, beta_1), ..., (alpha_n, beta_n))`` meaning
    ``prod_j q_j^alpha_j p_j^beta_j``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Scalar] | Iterable = ()):
        if n < 1:
            raise DimensionError("dimension must be positive")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Scalar] = {}
        for mono, c in items:
            mono = tuple((int(a), int(b)) for a, b in mono)
            if len(mono) != n:
                raise DimensionError(f"monomial {mono} does not have {n} index slots")
            if any(a < 0 or b < 0 for a, b in mono):
                raise ValueError("negative exponent")
            acc[mono] = acc.get(mono, ZERO) + as_scalar(c)
        self._terms = {m: c for m, c in sorted(acc.items()) if c}

    @classmethod
    def constant(cls, c, n: int = 1) -> "PhasePolynomial":
        return cls(n, {((0, 0),) * n: as_scalar(c)})

    @classmethod
    def monomial(cls, n: int, exps: Mapping[int, tuple[int, int]], c=ONE) -> "PhasePolynomial":
        full = [(0, 0)] * n
        for j, ab in exps.items():
            if not 1 <= j <= n:
                raise DimensionError(f"index {j} out of range 1..{n}")
            full[j - 1] = ab
        return cls(n, {tuple(full): as_scalar(c)})

    @classmethod
    def var(cls, kind: str, j: int = 1, n: int = 1) -> "PhasePolynomial":
        return cls.monomial(n, {j: (1, 0) if kind == "q" else (0, 1)})

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def is_constant(self) -> bool:
        return all(all(a == 0 and b == 0 for a, b in m) for m in self._terms)

    def degree(self) -> int:
        return max((sum(a + b for a, b in m) for m in self._terms), default=0)

    def _coerce(self, other) -> "PhasePolynomial":
        if isinstance(other, PhasePolynomial):
            if other.n != self.n:
                raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        return PhasePolynomial.constant(other, self.n)

    def __add__(self, other) -> "PhasePolynomial":
        other = self._coerce(other)
        return PhasePolynomial(self.n, itertools.chain(self._terms.items(), other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "PhasePolynomial":
        return PhasePolynomial(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "PhasePolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PhasePolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PhasePolynomial":
        other = self._coerce(other)
        out = []
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple((a1 + a2, b1 + b2) for (a1, b1), (a2, b2) in zip(m1, m2))
                out.append((mono, c1 * c2))
        return PhasePolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PhasePolynomial":
        if e < 0:
            raise ValueError("negative exponent")
        out = PhasePolynomial.constant(1, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, c) -> "PhasePolynomial":
        if isinstance(c, PhasePolynomial):
            if not c.is_constant():
                raise ValueError("polynomials can only be divided by nonzero constants")
            c = c._terms.get(((0, 0),) * self.n, ZERO)
        c = as_scalar(c)
        if c.is_zero():
            raise ZeroDivisionError("division by zero")
        return PhasePolynomial(self.n, {m: v / c for m, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Scalar)):
            other = PhasePolynomial.constant(other, self.n)
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._terms.items())))

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"PhasePolynomial({to_text(self)!r})"

    def pretty(self) -> str:
        return pretty_terms(self._terms.items(), self.n, sep="*")

    def to_json(self) -> str:
        return json.dumps(to_json_obj(self))

    def depends_on(self) -> tuple[bool, bool]:
        """Whether any term carries a q-variable, and whether any carries a p-variable."""
        has_q = any(a for m in self._terms for a, _ in m)
        has_p = any(b for m in self._terms for _, b in m)
        return has_q, has_p

    def evaluate(self, qs: Sequence, ps: Sequence, hbar):
        """Numerical evaluation; ``qs``/``ps`` may be numpy arrays that broadcast."""
        total = 0
        for mono, c in self._terms.items():
            term = c.evaluate(float(hbar))
            for (a, b), qj, pj in zip(mono, qs, ps):
                term = term * np.power(qj, a) * np.power(pj, b)
            total = total + term
        return total


def partial_derivative(H: PhasePolynomial, var: str, index: int = 1) -> PhasePolynomial:
    if var not in ("q", "p"):
        raise ValueError(f"variable must be 'q' or 'p', got {var!r}")
    if not 1 <= index <= H.n:
        raise DimensionError(f"index {index} out of range 1..{H.n}")
    slot = 0 if var == "q" else 1
    out = []
    for mono, c in H._terms.items():
        e = mono[index - 1][slot]
        if e == 0:
            continue
        new = list(mono)
        pair = list(new[index - 1])
        pair[slot] -= 1
        new[index - 1] = tuple(pair)
        out.append((tuple(new), c * e))
    return PhasePolynomial(H.n, out)


def poisson_bracket(H: PhasePolynomial, K: PhasePolynomial) -> PhasePolynomial:
    """``{H, K} = sum_j dH/dq_j dK/dp_j - dH/dp_j dK/dq_j``, so that {q^3, p^3} = 9 q^2 p^2."""
    if H.n != K.n:
        raise DimensionError(f"dimension mismatch: {H.n} vs {K.n}")
    total = PhasePolynomial(H.n)
    for j in range(1, H.n + 1):
        total = total + partial_derivative(H, "q", j) * partial_derivative(K, "p", j)
        total = total - partial_derivative(H, "p", j) * partial_derivative(K, "q", j)
    return total


@dataclass(frozen=True)
class SplitObservable:
    """``T(p) + V(q)``; constants are carried by ``V``."""

    T: PhasePolynomial
    V: PhasePolynomial

    def __post_init__(self):
        if self.T.n != self.V.n:
            raise DimensionError("T and V must share the dimension")
        if self.T.depends_on()[0]:
            raise MixedTermError((), "T must depend on p-variables only")
        if self.V.depends_on()[1]:
            raise MixedTermError((), "V must depend on q-variables only")
        if self.T._terms.get(((0, 0),) * self.T.n):
            raise ValueError("constant terms belong to V")

    @property
    def n(self) -> int:
        return self.T.n

    @property
    def total(self) -> PhasePolynomial:
        return self.T + self.V


def split(H: PhasePolynomial) -> SplitObservable:
    T, V = [], []
    for mono, c in H._terms.items():
        has_q = any(a for a, _ in mono)
        has_p = any(b for _, b in mono)
        if has_q and has_p:
            bad = PhasePolynomial(H.n, {mono: ONE})
            raise MixedTermError(mono, f"mixed term {to_text(bad)} is not of the form T(p) + V(q)")
        (T if has_p else V).append((mono, c))
    return SplitObservable(PhasePolynomial(H.n, T), PhasePolynomial(H.n, V))


@dataclass(frozen=True)
class ExponentialSymbol:
    """``coefficient * exp((i/h)(q0 . q + p0 . p))``.

    ``q0`` has momentum units and ``p0`` length units, so both products are actions.
    """

    coefficient: complex
    q0: tuple[float, ...]
    p0: tuple[float, ...]

    def __post_init__(self):
        if not (np.all(np.isfinite(self.q0)) and np.all(np.isfinite(self.p0))):
            raise ValueError("frequency must be finite")

    def evaluate(self, qs: Sequence, ps: Sequence, hbar: float):
        phase = sum(a * x for a, x in zip(self.q0, qs)) + sum(b * y for b, y in zip(self.p0, ps))
        return self.coefficient * np.exp(1j * phase / hbar)


# --- text ----------------------------------------------------------------------


def _var(kind: str, j: int, n: int) -> str:
    return kind if n == 1 else f"{kind}{j}"


def _monomial_factors(mono: Monomial, n: int) -> list[str]:
    out = []
    for j, (a, b) in enumerate(mono, start=1):
        for kind, e in (("q", a), ("p", b)):
            if e:
                out.append(_var(kind, j, n) if e == 1 else f"{_var(kind, j, n)}^{e}")
    return out


def _single_atom(c: Scalar) -> tuple[bool, str] | None:
    """Sign and unsigned text when ``c`` is one atom such as ``-2/3*h^2*i``."""
    text = format_scalar(c)
    body = text[1:] if text.startswith("-") else text
    if " " in body:
        return None
    return text.startswith("-"), body


def to_text(H: PhasePolynomial) -> str:
    """Text in the observable grammar; ``parse_observable(to_text(H), H.n) == H``."""
    if H.is_zero():
        return "0"
    pieces: list[tuple[bool, str]] = []
    for mono, c in H._terms.items():
        factors = _monomial_factors(mono, H.n)
        atom = _single_atom(c)
        if atom is None:
            coef, neg = f"({format_scalar(c)})", False
        else:
            neg, coef = atom
            if coef == "1" and factors:
                coef = ""
        body = "*".join([coef] * bool(coef) + factors)
        pieces.append((neg, body))
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        text += (" - " if neg else " + ") + body
    return text


def _pretty_coef(c: Scalar, alone: bool = False) -> tuple[bool, str] | None:
    """Compact coefficient like ``(2/3) h^2`` or ``2i h``; None when not a single atom.

    ``alone`` marks a constant term, where a plain fraction needs no parentheses.
    """
    terms = c.terms
    if len(terms) != 1:
        return None
    (k, (re, im)), = terms.items()
    if re and im:
        return None
    val, imag = (re, False) if re else (im, True)
    mag = abs(val)
    bare = alone and k == 0 and not imag
    num = str(mag.numerator) if mag.denominator == 1 or bare else f"({mag.numerator}/{mag.denominator})"
    if bare and mag.denominator != 1:
        num = f"{mag.numerator}/{mag.denominator}"
    if mag == 1 and (imag or k):
        num = ""
    head = num + ("i" if imag else "")
    hpart = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
    return val < 0, " ".join(x for x in (head, hpart) if x)


def pretty_terms(items: Iterable, n: int, sep: str = " ") -> str:
    """Readable sum used for CLI output of both operators and observables."""
    pieces = []
    items = sorted(items, key=lambda mc: (-sum(a + b for a, b in mc[0]), tuple(-x for ab in mc[0] for x in ab)))
    for mono, c in items:
        factors = " ".join(_monomial_factors(mono, n)) if sep == " " else "*".join(_monomial_factors(mono, n))
        pc = _pretty_coef(c, alone=not any(a or b for a, b in mono))
        if pc is None:
            neg, coef = False, f"({format_scalar(c)})"
        else:
            neg, coef = pc
            if coef == "1" and factors:
                coef = ""
        body = " ".join(x for x in (coef, factors) if x)
        pieces.append((neg, body))
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        text += (" - " if neg else " + ") + body
    return text


def to_json_obj(H: PhasePolynomial) -> dict:
    return {
        "kind": "observable",
        "n": H.n,
        "terms": [
            {"q": [a for a, _ in mono], "p": [b for _, b in mono], "coeff": scalar_to_json(c)}
            for mono, c in H._terms.items()
        ],
    }


def from_json_obj(obj: dict) -> PhasePolynomial:
    return PhasePolynomial(
        int(obj["n"]),
        [(tuple(zip(t["q"], t["p"])), scalar_from_json(t["coeff"])) for t in obj["terms"]],
    )
