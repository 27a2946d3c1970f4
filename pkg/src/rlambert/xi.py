"""The auxiliary functions xi_l^{r,k} in the z-coordinate.

Base cases xi_{-1}^{r,0} = z^r and xi_{-1}^{r,k} = z^k/k (k > 0); each level
applies z/(1-rz^r) d/dz, the pullback of x d/dx through x = z e^{-z^r}.  For
l >= 0 the result is rational with denominator a constant times
(1-rz^r)^{2l+1}, and its expansion in x has coefficient (rm+k)^{m+l}/m! on
x^{rm+k} (m >= 1 when k = 0, m >= 0 otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import RationalExpr, SparsePoly

__all__ = ["XiFunction", "xi", "xi_x_coefficient", "one_minus_rzr", "euler_op"]


def one_minus_rzr(r: int) -> SparsePoly:
    """1 - r z^r as a univariate polynomial."""
    return SparsePoly(1, {(0,): Fraction(1), (r,): Fraction(-r)})


def euler_op(r: int, f: RationalExpr) -> RationalExpr:
    """(z/(1-rz^r)) df/dz, the z-form of x d/dx."""
    z = RationalExpr.variable(1, 0)
    return z / RationalExpr.from_poly(one_minus_rzr(r)) * f.derivative(0)


@dataclass(frozen=True)
class XiFunction:
    r: int
    k: int
    level: int
    value: RationalExpr

    def derivative(self) -> RationalExpr:
        return self.value.derivative(0)


@lru_cache(maxsize=None)
def xi(r: int, k: int, level: int) -> XiFunction:
    """Closed-form xi_level^{r,k}(z) as a rational expression."""
    if not 0 <= k < r:
        raise ValueError("k must satisfy 0 <= k < r")
    if level < -1:
        raise ValueError("level must be >= -1")
    if level == -1:
        if k == 0:
            value = RationalExpr.from_poly(SparsePoly(1, {(r,): Fraction(1)}))
        else:
            value = RationalExpr.from_poly(SparsePoly(1, {(k,): Fraction(1, k)}))
        return XiFunction(r, k, level, value)
    value = euler_op(r, xi(r, k, level - 1).value)
    return XiFunction(r, k, level, value)


def xi_x_coefficient(r: int, k: int, level: int, m: int) -> Fraction:
    """Coefficient of x^{rm+k} in the x-expansion of xi_level^{r,k}."""
    if k == 0 and m < 1:
        return Fraction(0)
    if m < 0:
        return Fraction(0)
    return Fraction(r * m + k) ** (m + level) / factorial(m)
