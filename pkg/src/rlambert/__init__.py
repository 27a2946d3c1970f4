"""Exact computation of orbifold Hurwitz numbers and their mirror free
energies on the r-Lambert curve x = z e^{-z^r}, cross-verified by four
independent routes: cut-and-join recursion, monodromy enumeration,
the differential recursion on closed-form rational functions, and the
Eynard-Orantin residue recursion, plus the quantum-curve operator checks
on the partition function.
"""

from .algebra import Rational, SparsePoly, RationalExpr, poly_divexact, rat
from .series import LaurentSeries, series_compose, series_reverse
from .rootring import RootRingElem, root_ring_trace, root_ring_invert
from .hurwitz import HurwitzKey, HurwitzTable, hurwitz_caj, hurwitz_oracle

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "SparsePoly",
    "RationalExpr",
    "poly_divexact",
    "rat",
    "LaurentSeries",
    "series_compose",
    "series_reverse",
    "RootRingElem",
    "root_ring_trace",
    "root_ring_invert",
    "HurwitzKey",
    "HurwitzTable",
    "hurwitz_caj",
    "hurwitz_oracle",
]
