"""Exact coefficients: polynomials in a formal hbar over the Gaussian rationals.

A :class:`Scalar` is a finite sum ``sum_k (a_k + b_k i) h^k`` with ``a_k, b_k``
rational.  Everything here is exact; no floats are ever stored.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = ["Scalar", "InexactDivisionError", "as_scalar", "I", "HBAR", "ONE", "ZERO"]

GaussianRational = tuple[Fraction, Fraction]
ScalarLike = Union["Scalar", int, Fraction]


class InexactDivisionError(ArithmeticError):
    """Division that leaves the ring (negative hbar power, zero divisor)."""


def _gmul(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


class Scalar:
    """Immutable element of Q(i)[h].

    Terms are kept as a sorted tuple of ``(hbar_exponent, (re, im))`` with
    zero coefficients pruned, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, GaussianRational] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, GaussianRational] = {}
        for k, (re, im) in items:
            if k < 0:
                raise ValueError("negative hbar exponent")
            re, im = Fraction(re), Fraction(im)
            if k in acc:
                re, im = re + acc[k][0], im + acc[k][1]
            acc[int(k)] = (re, im)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c[0] or c[1]))

    # construction helpers

    @classmethod
    def const(cls, re: Rational | int | str = 0, im: Rational | int | str = 0, hpow: int = 0) -> "Scalar":
        return cls({hpow: (Fraction(re), Fraction(im))})

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return dict(self._terms)

    # predicates

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_real(self) -> bool:
        return all(im == 0 for _, (_, im) in self._terms)

    def is_constant(self) -> bool:
        """True when no positive power of hbar occurs."""
        return all(k == 0 for k, _ in self._terms)

    def constant_term(self) -> GaussianRational:
        for k, c in self._terms:
            if k == 0:
                return c
        return (Fraction(0), Fraction(0))

    # ring operations

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = as_scalar(other)
        return Scalar(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar((k, (-re, -im)) for k, (re, im) in self._terms)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self + (-as_scalar(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return as_scalar(other) - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = as_scalar(other)
        out: list = []
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                out.append((k1 + k2, _gmul(c1, c2)))
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Complex conjugation (i -> -i); hbar is real."""
        return Scalar((k, (re, -im)) for k, (re, im) in self._terms)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        """Exact division by a Gaussian rational or by a single hbar-power term."""
        other = as_scalar(other)
        if not other._terms:
            raise ZeroDivisionError("division by zero scalar")
        if len(other._terms) != 1:
            raise InexactDivisionError(f"cannot divide by multi-term scalar {other}")
        (kd, (a, b)), = other._terms
        norm = a * a + b * b
        inv = (a / norm, -b / norm)
        out = []
        for k, c in self._terms:
            if k < kd:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            out.append((k - kd, _gmul(c, inv)))
        return Scalar(out)

    def evaluate(self, hbar):
        """Substitute a value for hbar.

        Exact (Fraction or Gaussian-rational pair) when ``hbar`` is rational,
        otherwise a Python complex.
        """
        if isinstance(hbar, (int, Fraction)):
            h = Fraction(hbar)
            re = sum((c[0] * h**k for k, c in self._terms), Fraction(0))
            im = sum((c[1] * h**k for k, c in self._terms), Fraction(0))
            return re, im
        return sum(complex(float(c[0]), float(c[1])) * hbar**k for k, c in self._terms)

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = as_scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    # text

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


def as_scalar(x: ScalarLike) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact scalar")


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_part(mag: Fraction, k: int, imag: bool) -> str:
    """One unsigned atom like ``2/3*h^2*i``."""
    factors = []
    if mag != 1 or (k == 0 and not imag):
        factors.append(_fmt_rat(mag))
    if k == 1:
        factors.append("h")
    elif k > 1:
        factors.append(f"h^{k}")
    if imag:
        factors.append("i")
    return "*".join(factors)


def format_scalar(s: Scalar) -> str:
    """Canonical text such as ``1 - 2/3*h^2*i``; parseable by the observable grammar."""
    atoms: list[tuple[bool, str]] = []
    for k, (re, im) in s._terms:
        for val, imag in ((re, False), (im, True)):
            if val:
                atoms.append((val < 0, _fmt_part(abs(val), k, imag)))
    if not atoms:
        return "0"
    neg0, first = atoms[0]
    text = ("-" if neg0 else "") + first
    for neg, atom in atoms[1:]:
        text += (" - " if neg else " + ") + atom
    return text


ZERO = Scalar()
ONE = Scalar.const(1)
I = Scalar.const(0, 1)
HBAR = Scalar.const(1, 0, hpow=1)
