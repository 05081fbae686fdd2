"""Ordered algebras over finite posets: coinserters, free algebras by
saturation, and executable finitary monads with their checks."""

from .finposet import FinPoset, FinPreorder, MonotoneMap, ParallelPair, coinserter
from .guards import GuardExceeded
from .saturation import saturate_free
from .terms import Signature, app, var
from .variety import Inequation, OrderedAlgebra, Presentation, satisfies

__version__ = "0.1.0"

__all__ = [
    "FinPoset", "FinPreorder", "MonotoneMap", "ParallelPair", "coinserter",
    "GuardExceeded", "saturate_free", "Signature", "app", "var",
    "Inequation", "OrderedAlgebra", "Presentation", "satisfies",
]
