"""Modified Leggett-Garg correlators for the quantum harmonic oscillator.

Thin re-export of the compiled core. The main entry points are the matrix
element tables (delta_matrix_elements, gaussian_matrix_elements), the
correlators (f12sq_expectation, f12sq_eigenstate_closed, f12sq_p1_closed),
the inequality evaluators (mlg3_evaluate, mlg4_evaluate, stationary_kernels)
and the coherent-state optimizer (optimize_coherent, sweep_grid).
"""

from ._mlgosc import *  # noqa: F401,F403
from ._mlgosc import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
