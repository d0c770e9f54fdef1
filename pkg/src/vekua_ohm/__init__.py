"""Formal powers and current distributions for the generalized Ohm's law.

Separable conductivity sigma = s1(x1) s2(x2) s3(x3); planar reductions use
zeta = x2 + i*x1 and Wirtinger operators without the factor 1/2.
"""
from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
