"""Quadratic Poisson brackets on three-space and their quantizations.

The subpackages follow the pipeline: exact arithmetic (``exact``), brackets
and their divergence matrix (``bracket``), the case taxonomy and cubic orbits
(``classify``), quantized relations and rewriting (``quantize``), splitting
and duality of ideal components (``flatness``), operator realizations
(``realize``) and the text formats used by the command line (``lang``).
"""

from .bracket import QuadraticBracket, from_case, jacobi_residual, p_data, transform
from .exact import H, Matrix, Poly, RatFunc

__all__ = [
    "H",
    "Matrix",
    "Poly",
    "QuadraticBracket",
    "RatFunc",
    "from_case",
    "jacobi_residual",
    "p_data",
    "transform",
]
__version__ = "0.1.0"
