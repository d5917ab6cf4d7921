"""Born-Jordan quantization.

Two layers: an exact algebra of polynomials in q, p modulo the canonical
commutation relations (``ccr``, ``phase_space``, ``symbolic``), and a grid
quadrature for sampled symbols with the sinc Cohen kernel (``numeric``).
"""

from .ccr import NCPolynomial, adjoint, commutator, commutator_sum_form, mul, normal_order
from .parser import ParseError, parse_observable
from .phase_space import PhasePolynomial, SplitObservable, poisson_bracket, split
from .scalar import HBAR, I, Scalar
from .symbolic import (
    QuantizationRule,
    dirac_quantize_via_bracket,
    gvh_demo,
    is_symmetric,
    quantize_bj,
    quantize_bj_commutator_form,
    quantize_weyl,
    verify_reduced_dirac,
)

__version__ = "0.1.0"
