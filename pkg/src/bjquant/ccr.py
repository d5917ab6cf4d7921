"""Noncommutative polynomials in q_j, p_j modulo [q_j, p_k] = i h delta_jk.

Every :class:`NCPolynomial` is kept in normal order: within one index all
``q`` factors stand left of all ``p`` factors, and factors with different
indices commute.  A monomial is therefore a tuple ``((r_1, s_1), ..., (r_n, s_n))``
meaning ``q_1^r_1 p_1^s_1 ... q_n^r_n p_n^s_n``.
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .scalar import HBAR, I, ONE, ZERO, Scalar, as_scalar, format_scalar

__all__ = [
    "NCPolynomial",
    "Letter",
    "normal_order",
    "mul",
    "commutator",
    "commutator_sum_form",
    "adjoint",
    "q",
    "p",
    "DimensionError",
]

Monomial = tuple[tuple[int, int], ...]
Letter = tuple[int, str]  # (index j >= 1, "q" or "p")

MINUS_I_HBAR = -(I * HBAR)


class DimensionError(ValueError):
    """Operands live in different numbers of degrees of freedom, or an index is out of range."""


class NCPolynomial:
    """Immutable normal-ordered element of the CCR algebra with n degrees of freedom."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, Scalar] | Iterable = ()):
        if n < 1:
            raise DimensionError("dimension must be positive")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Scalar] = {}
        for mono, c in items:
            mono = tuple((int(r), int(s)) for r, s in mono)
            if len(mono) != n:
                raise DimensionError(f"monomial {mono} does not have {n} index slots")
            acc[mono] = acc.get(mono, ZERO) + as_scalar(c)
        self._terms = {m: c for m, c in sorted(acc.items()) if c}
        self._hash = None

    # constructors

    @classmethod
    def scalar(cls, c, n: int = 1) -> "NCPolynomial":
        return cls(n, {((0, 0),) * n: as_scalar(c)})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[tuple[int, int]] | Mapping[int, tuple[int, int]], c=ONE):
        """``exps`` is either a full length-n sequence or a sparse ``{index: (r, s)}``."""
        if isinstance(exps, Mapping):
            full = [(0, 0)] * n
            for j, rs in exps.items():
                _check_index(j, n)
                full[j - 1] = rs
            exps = full
        return cls(n, {tuple(exps): as_scalar(c)})

    @property
    def terms(self) -> dict[Monomial, Scalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(r + s for r, s in m) for m in self._terms), default=0)

    # linear structure

    def _check(self, other: "NCPolynomial") -> None:
        if not isinstance(other, NCPolynomial):
            raise TypeError(f"expected NCPolynomial, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            self._check(other)
            return other
        return NCPolynomial.scalar(other, self.n)

    def __add__(self, other) -> "NCPolynomial":
        other = self._coerce(other)
        return NCPolynomial(self.n, itertools.chain(self._terms.items(), other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "NCPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NCPolynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "NCPolynomial":
        c = as_scalar(c)
        return NCPolynomial(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPolynomial":
        # scalars commute with everything
        return self.scale(other)

    def __pow__(self, e: int) -> "NCPolynomial":
        if e < 0:
            raise ValueError("negative power")
        out = NCPolynomial.scalar(1, self.n)
        for _ in range(e):
            out = mul(out, self)
        return out

    def __truediv__(self, c) -> "NCPolynomial":
        c = as_scalar(c)
        return NCPolynomial(self.n, {m: v / c for m, v in self._terms.items()})

    def substitute_hbar(self, hbar) -> dict[Monomial, object]:
        return {m: c.evaluate(hbar) for m, c in self._terms.items()}

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Scalar)):
            other = NCPolynomial.scalar(other, self.n)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    # text / json

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"NCPolynomial({to_text(self)!r})"

    def pretty(self) -> str:
        return pretty(self)

    def to_json(self) -> str:
        return json.dumps(to_json_obj(self))


def _check_index(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise DimensionError(f"index {j} out of range 1..{n}")


def q(j: int = 1, n: int = 1, power: int = 1) -> NCPolynomial:
    return NCPolynomial.monomial(n, {j: (power, 0)})


def p(j: int = 1, n: int = 1, power: int = 1) -> NCPolynomial:
    return NCPolynomial.monomial(n, {j: (0, power)})


# --- normal ordering by rewriting -----------------------------------------------


def _letter_key(letter: Letter) -> tuple[int, int]:
    j, kind = letter
    return j, 0 if kind == "q" else 1


def _word_to_monomial(word: tuple[Letter, ...], n: int) -> Monomial:
    exps = [[0, 0] for _ in range(n)]
    for j, kind in word:
        exps[j - 1][0 if kind == "q" else 1] += 1
    return tuple((r, s) for r, s in exps)


def normal_order(word: Sequence[Letter], n: int, coeff=ONE) -> NCPolynomial:
    """Rewrite a free word into canonical form.

    Uses only the rules ``p_j q_j -> q_j p_j - i h`` and ``x_j y_k -> y_k x_j``
    for j != k (bubble-sort on the letter order ``(index, q before p)``).
    """
    word = tuple((int(j), str(k)) for j, k in word)
    for j, kind in word:
        _check_index(j, n)
        if kind not in ("q", "p"):
            raise ValueError(f"unknown generator kind {kind!r}")
    out: dict[Monomial, Scalar] = {}
    stack: list[tuple[tuple[Letter, ...], Scalar]] = [(word, as_scalar(coeff))]
    while stack:
        w, c = stack.pop()
        for i in range(len(w) - 1):
            if _letter_key(w[i]) > _letter_key(w[i + 1]):
                swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                stack.append((swapped, c))
                if w[i][0] == w[i + 1][0]:
                    # p_j q_j = q_j p_j - i h
                    stack.append((w[:i] + w[i + 2:], c * MINUS_I_HBAR))
                break
        else:
            mono = _word_to_monomial(w, n)
            out[mono] = out.get(mono, ZERO) + c
    return NCPolynomial(n, out)


# --- multiplication ------------------------------------------------------------


@lru_cache(maxsize=4096)
def _reorder(a: int, b: int, c: int, d: int) -> tuple[tuple[int, int, Scalar], ...]:
    """Normal form of ``(q^a p^b)(q^c p^d)`` for a single index.

    ``p^b q^c = sum_k k! C(b,k) C(c,k) (-i h)^k q^(c-k) p^(b-k)``.
    """
    out = []
    for k in range(min(b, c) + 1):
        coef = factorial(k) * comb(b, k) * comb(c, k)
        out.append((a + c - k, b + d - k, MINUS_I_HBAR**k * coef))
    return tuple(out)


def _mul_monomials(m1: Monomial, m2: Monomial):
    per_index = [_reorder(a, b, c, d) for (a, b), (c, d) in zip(m1, m2)]
    for combo in itertools.product(*per_index):
        coef = ONE
        mono = []
        for r, s, k in combo:
            mono.append((r, s))
            coef = coef * k
        yield tuple(mono), coef


def mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    a._check(b)
    out: list = []
    for m1, c1 in a._terms.items():
        for m2, c2 in b._terms.items():
            c12 = c1 * c2
            for mono, k in _mul_monomials(m1, m2):
                out.append((mono, c12 * k))
    return NCPolynomial(a.n, out)


def commutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    """``ab - ba``."""
    return mul(a, b) - mul(b, a)


def commutator_sum_form(r: int, s: int, side: str = "q-outer", j: int = 1, n: int = 1) -> NCPolynomial:
    """Expanded form of ``[q^r, p^s]`` as a sum of interleaved words.

    ``q-outer``: ``s i h sum_{t<r} q^(r-1-t) p^(s-1) q^t``;
    ``p-outer``: ``r i h sum_{t<s} p^(s-1-t) q^(r-1) p^t``.
    """
    if r < 1 or s < 1:
        raise ValueError("r and s must be at least 1")
    if side == "q-outer":
        outer, inner, count, mult = "q", "p", r, s
        outer_pow, inner_pow = r - 1, s - 1
    elif side == "p-outer":
        outer, inner, count, mult = "p", "q", s, r
        outer_pow, inner_pow = s - 1, r - 1
    else:
        raise ValueError(f"side must be 'q-outer' or 'p-outer', got {side!r}")
    total = NCPolynomial(n)
    for t in range(count):
        word = ((j, outer),) * (outer_pow - t) + ((j, inner),) * inner_pow + ((j, outer),) * t
        total = total + normal_order(word, n)
    return total.scale(I * HBAR * mult)


# --- adjoint -------------------------------------------------------------------


def adjoint(a: NCPolynomial) -> NCPolynomial:
    """Formal adjoint: reverse every word and conjugate coefficients.

    ``(q^r p^s)^dagger = p^s q^r``, renormalized; factors of different indices
    commute so each index is handled independently.
    """
    out: list = []
    for mono, c in a._terms.items():
        per_index = [_reorder(0, s, r, 0) for r, s in mono]
        cc = c.conjugate()
        for combo in itertools.product(*per_index):
            coef = cc
            for _, _, k in combo:
                coef = coef * k
            out.append((tuple((r, s) for r, s, _ in combo), coef))
    return NCPolynomial(a.n, out)


# --- serialization --------------------------------------------------------------


def _var_name(kind: str, j: int, n: int, indexed: bool) -> str:
    return f"{kind}{j}" if indexed else kind


def format_monomial(mono: Monomial, indexed: bool = True, carets: bool = True) -> str:
    n = len(mono)
    parts = []
    for j, (r, s) in enumerate(mono, start=1):
        for kind, e in (("q", r), ("p", s)):
            if e:
                name = _var_name(kind, j, n, indexed)
                parts.append(f"{name}^{e}" if carets else (name if e == 1 else f"{name}^{e}"))
    return " ".join(parts)


def to_text(a: NCPolynomial) -> str:
    """Canonical text, e.g. ``(1 - 2/3*h^2*i) * q1^2 p1^1 + (-1/2*h*i)``."""
    if a.is_zero():
        return "(0)"
    chunks = []
    for mono, c in a._terms.items():
        body = format_monomial(mono, indexed=True, carets=True)
        chunks.append(f"({format_scalar(c)}) * {body}" if body else f"({format_scalar(c)})")
    return " + ".join(chunks)


_TERM_RE = re.compile(r"\(([^()]*)\)(?:\s*\*\s*((?:[qp]\d+\^\d+\s*)+))?\s*$")
_FACTOR_RE = re.compile(r"([qp])(\d+)\^(\d+)")


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [t.strip() for t in parts]


def from_text(text: str, n: int) -> NCPolynomial:
    """Inverse of :func:`to_text`."""
    from .parser import parse_scalar

    out: list = []
    for chunk in _split_top_level(text.strip()):
        m = _TERM_RE.fullmatch(chunk)
        if not m:
            raise ValueError(f"malformed operator term {chunk!r}")
        coef = parse_scalar(m.group(1))
        exps = [[0, 0] for _ in range(n)]
        for kind, j, e in _FACTOR_RE.findall(m.group(2) or ""):
            j = int(j)
            _check_index(j, n)
            exps[j - 1][0 if kind == "q" else 1] += int(e)
        out.append((tuple(map(tuple, exps)), coef))
    return NCPolynomial(n, out)


def scalar_to_json(c: Scalar) -> list:
    return [[k, str(re), str(im)] for k, (re, im) in sorted(c.terms.items())]


def scalar_from_json(obj: list) -> Scalar:
    return Scalar({int(k): (Fraction(re), Fraction(im)) for k, re, im in obj})


def to_json_obj(a: NCPolynomial) -> dict:
    return {
        "kind": "operator",
        "n": a.n,
        "terms": [
            {"q": [r for r, _ in mono], "p": [s for _, s in mono], "coeff": scalar_to_json(c)}
            for mono, c in a._terms.items()
        ],
    }


def from_json_obj(obj: dict) -> NCPolynomial:
    n = int(obj["n"])
    return NCPolynomial(
        n,
        [(tuple(zip(t["q"], t["p"])), scalar_from_json(t["coeff"])) for t in obj["terms"]],
    )


def pretty(a: NCPolynomial) -> str:
    """Human-facing rendering, e.g. ``q^2 p^2 - 2i h q p - 2/3 h^2``."""
    from .phase_space import pretty_terms

    return pretty_terms(((mono, c) for mono, c in a._terms.items()), a.n, sep=" ")
