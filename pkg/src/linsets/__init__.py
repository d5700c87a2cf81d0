"""Exact-arithmetic toolkit for F_q-linear sets on the projective line
PG(1, q^n): field towers, linearized polynomials, dual bases, subspaces,
weight spectra, explicit constructions and equivalence testing.
"""

from .errors import LinsetsError
from .gf import FieldTower, FqnElem, make_field

__all__ = ["FieldTower", "FqnElem", "LinsetsError", "make_field"]

__version__ = "0.1.0"
