"""Numerical verification lab for automorphic integrals with rational period
functions on Hecke groups: completed Dirichlet series, five-piece meromorphic
continuation, functional-equation residuals, and both arithmetical identities.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
