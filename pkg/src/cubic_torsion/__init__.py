"""Torsion of rational elliptic curves over Q and over cubic number fields."""

from .algebra.poly import UniPoly
from .elliptic import Curve, TorsionStructure, torsion_over_K, torsion_over_Q
from .number_field import CubicField

__version__ = "0.1.0"
