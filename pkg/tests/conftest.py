from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from bjquant.ccr import NCPolynomial
from bjquant.phase_space import PhasePolynomial
from bjquant.scalar import Scalar

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def scalars(draw, real=False, max_hpow=2):
    terms = {}
    for k in range(draw(st.integers(0, max_hpow)) + 1):
        re = draw(small_fraction)
        im = Fraction(0) if real else draw(small_fraction)
        terms[k] = (re, im)
    return Scalar(terms)


@st.composite
def monomials(draw, n=1, max_exp=3):
    return tuple((draw(st.integers(0, max_exp)), draw(st.integers(0, max_exp))) for _ in range(n))


@st.composite
def operators(draw, n=1, max_terms=3, max_exp=3):
    items = draw(st.lists(st.tuples(monomials(n, max_exp), scalars()), min_size=0, max_size=max_terms))
    return NCPolynomial(n, items)


@st.composite
def observables(draw, n=1, max_terms=4, max_exp=3, real=True):
    items = draw(st.lists(st.tuples(monomials(n, max_exp), scalars(real=real, max_hpow=0)), min_size=0, max_size=max_terms))
    return PhasePolynomial(n, items)


def ladder(size: int, hbar: float):
    """Truncated oscillator matrices for q and p; [q, p] = i h away from the last row/column."""
    a = np.diag(np.sqrt(np.arange(1, size)), 1).astype(complex)
    ad = a.conj().T
    s = np.sqrt(hbar / 2)
    return s * (a + ad), 1j * s * (ad - a)


def to_matrix(op: NCPolynomial, hbar: float, size: int) -> np.ndarray:
    """Matrix of a one-index normal-ordered operator in the truncated representation."""
    assert op.n == 1
    Q, P = ladder(size, hbar)
    out = np.zeros((size, size), dtype=complex)
    for ((r, s),), c in op.terms.items():
        out += complex(c.evaluate(float(hbar))) * np.linalg.matrix_power(Q, r) @ np.linalg.matrix_power(P, s)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][3:-1])):
            terminalreporter.write_line(line)
