"""Symbolic verification of the differential recursion on the free energies.

Both sides are assembled over the structured common denominator
prod_i (1-r z_i^r)^{a_i} * prod_{i<j} (z_i - z_j)^{b_ij}, which every term
of the recursion lives over; the identity then reduces to equality of
numerator polynomials, checked exactly.

Two instances need special handling because F_{0,2} is logarithmic:

* (g,n) = (0,3): the displayed recursion is not rational term-by-term; the
  cut-and-join transform gives the equivalent rational identity
  (1 + (1/r) sum z_i d_i) F_03 = sum_i G_ij G_ik - sum_{i!=j} G_ij + 2,
  where G(a,b) = (a/(1-ra^r)) (1/(a-b) - r a^{r-1}) is the rational part of
  the annulus term (the sheet terms x_i/(x_i - x_j) cancel through
  P_ij + P_ji = 1 and sum_i P_ij P_ik = 1).
* (g,n) = (1,1): the second-derivative diagonal of F_{0,2} is rational and
  equals x''^2/(4x'^2) - x'''/(6x').
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import RationalExpr, SparsePoly, poly_divexact
from .errors import IdentityFailure, NonExactDivision
from .free_energy import (FreeEnergyStore, XiBasisFreeEnergy, f02_mixed_diagonal,
                          lift_univariate)
from .xi import one_minus_rzr, xi

__all__ = ["verify_diff_recursion", "FactoredFrac"]


class _Basis:
    """Denominator factor basis for n variables."""

    def __init__(self, r: int, n: int):
        self.r = r
        self.n = n
        self.pairs = list(combinations(range(n), 2))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.b_polys = [lift_univariate(one_minus_rzr(r), n, i) for i in range(n)]
        self.p_polys = [SparsePoly.variable(n, i) - SparsePoly.variable(n, j)
                        for i, j in self.pairs]
        self.b_derivs = [[p.derivative(v) for v in range(n)] for p in self.b_polys]


@dataclass
class FactoredFrac:
    """num / (prod (1-rz_i^r)^{bexp_i} * prod_{i<j} (z_i-z_j)^{pexp_ij})."""

    basis: _Basis
    num: SparsePoly
    bexp: tuple
    pexp: tuple

    @classmethod
    def from_poly(cls, basis: _Basis, p: SparsePoly) -> "FactoredFrac":
        return cls(basis, p, (0,) * basis.n, (0,) * len(basis.pairs))

    @classmethod
    def const(cls, basis: _Basis, c) -> "FactoredFrac":
        return cls.from_poly(basis, SparsePoly.constant(basis.n, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "FactoredFrac") -> "FactoredFrac":
        basis = self.basis
        bexp = tuple(max(a, b) for a, b in zip(self.bexp, other.bexp))
        pexp = tuple(max(a, b) for a, b in zip(self.pexp, other.pexp))

        def raised(f: "FactoredFrac") -> SparsePoly:
            num = f.num
            for i, (have, need) in enumerate(zip(f.bexp, bexp)):
                if need > have:
                    num = num * basis.b_polys[i] ** (need - have)
            for i, (have, need) in enumerate(zip(f.pexp, pexp)):
                if need > have:
                    num = num * basis.p_polys[i] ** (need - have)
            return num

        return FactoredFrac(basis, raised(self) + raised(other), bexp, pexp)

    def __neg__(self) -> "FactoredFrac":
        return FactoredFrac(self.basis, -self.num, self.bexp, self.pexp)

    def __sub__(self, other: "FactoredFrac") -> "FactoredFrac":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FactoredFrac(self.basis, self.num * other, self.bexp, self.pexp)
        return FactoredFrac(self.basis, self.num * other.num,
                            tuple(a + b for a, b in zip(self.bexp, other.bexp)),
                            tuple(a + b for a, b in zip(self.pexp, other.pexp)))

    __rmul__ = __mul__

    def shift_bexp(self, i: int, delta: int) -> "FactoredFrac":
        bexp = list(self.bexp)
        bexp[i] += delta
        return FactoredFrac(self.basis, self.num, tuple(bexp), self.pexp)

    def reduce_trivial(self) -> "FactoredFrac":
        """Cancel basis factors that divide the numerator exactly (cheap tidy)."""
        num, bexp, pexp = self.num, list(self.bexp), list(self.pexp)
        for i in range(len(bexp)):
            while bexp[i] > 0:
                try:
                    num = poly_divexact(num, self.basis.b_polys[i])
                    bexp[i] -= 1
                except NonExactDivision:
                    break
        for i in range(len(pexp)):
            while pexp[i] > 0:
                try:
                    num = poly_divexact(num, self.basis.p_polys[i])
                    pexp[i] -= 1
                except NonExactDivision:
                    break
        return FactoredFrac(self.basis, num, tuple(bexp), tuple(pexp))


def _peel_univariate(f: RationalExpr, r: int):
    """Split univariate f = num / (c * (1-rz^r)^p); raises if not of that shape."""
    base = one_minus_rzr(r)
    den = f.den
    p = 0
    while not den.is_constant():
        den = poly_divexact(den, base)  # NonExactDivision = broken invariant
        p += 1
    return f.num * (1 / den.constant_value()), p


def _ff_univariate(basis: _Basis, f: RationalExpr, var: int) -> FactoredFrac:
    num, p = _peel_univariate(f, basis.r)
    bexp = [0] * basis.n
    bexp[var] = p
    return FactoredFrac(basis, lift_univariate(num, basis.n, var),
                        tuple(bexp), (0,) * len(basis.pairs))


def _ff_inv_pair(basis: _Basis, i: int, j: int) -> FactoredFrac:
    """1/(z_i - z_j) for any i != j."""
    sign = 1
    if i > j:
        i, j = j, i
        sign = -1
    pexp = [0] * len(basis.pairs)
    pexp[basis.pair_index[(i, j)]] = 1
    return FactoredFrac(basis, SparsePoly.constant(basis.n, sign),
                        (0,) * basis.n, tuple(pexp))


def _ff_xi_product(basis: _Basis, factors) -> FactoredFrac:
    """Product of univariate rational factors assigned to variables.

    factors: iterable of (variable index, univariate RationalExpr).
    """
    out = FactoredFrac.const(basis, 1)
    for var, f in factors:
        out = out * _ff_univariate(basis, f, var)
    return out


def _f_terms_ff(basis: _Basis, F: XiBasisFreeEnergy, variables, derive_slots=()):
    """F (or its slot derivatives) as a FactoredFrac, slots bound to variables.

    ``variables[j]`` is the z-index bound to slot j; slots in derive_slots
    contribute d(xi)/dz instead of xi.  Slots may share a variable (used for
    the second-derivative diagonal).
    """
    total = FactoredFrac.const(basis, 0)
    r = F.r
    for perm, c in F.terms():
        factors = []
        for slot, (k, l) in enumerate(perm):
            fn = xi(r, k, l)
            expr = fn.derivative() if slot in derive_slots else fn.value
            factors.append((variables[slot], expr))
        total = total + _ff_xi_product(basis, factors) * c
    return total


def _g_rational(basis: _Basis, i: int, j: int) -> FactoredFrac:
    """G(z_i, z_j) = (z_i/(1-rz_i^r)) (1/(z_i-z_j) - r z_i^{r-1})."""
    n, r = basis.n, basis.r
    zi = FactoredFrac.from_poly(basis, SparsePoly.variable(n, i)).shift_bexp(i, 1)
    bracket = _ff_inv_pair(basis, i, j) - FactoredFrac.from_poly(
        basis, SparsePoly.monomial(n, tuple(r - 1 if q == i else 0 for q in range(n)), r))
    return zi * bracket


def verify_diff_recursion(r: int, g: int, n: int, store: FreeEnergyStore) -> dict:
    """Check the differential recursion for F_{g,n}^{(r)} as an exact
    polynomial identity.  Returns a report dict on success; raises
    IdentityFailure with the first mismatching monomial otherwise.
    """
    if 2 * g - 2 + n <= 0:
        raise ValueError("recursion applies to stable (g, n)")
    basis = _Basis(r, n)
    F = store.get(g, n)
    all_vars = list(range(n))

    # LHS = (2g-2+n) F + (1/r) sum_i z_i d_i F
    lhs = _f_terms_ff(basis, F, all_vars) * (2 * g - 2 + n)
    for i in range(n):
        zi = FactoredFrac.from_poly(basis, SparsePoly.variable(n, i))
        lhs = lhs + zi * _f_terms_ff(basis, F, all_vars, derive_slots=(i,)) \
            * Fraction(1, r)

    rhs = FactoredFrac.const(basis, 0)

    if (g, n) == (0, 3):
        # rational form of the annulus-fed case (see module docstring)
        for i in range(3):
            others = [q for q in range(3) if q != i]
            rhs = rhs + _g_rational(basis, i, others[0]) * _g_rational(basis, i, others[1])
        for i in range(3):
            for j in range(3):
                if i != j:
                    rhs = rhs - _g_rational(basis, i, j)
        rhs = rhs + FactoredFrac.const(basis, 2)
    elif n >= 2:
        Fm = store.get(g, n - 1)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                spect = [q for q in range(n) if q not in (i, j)]
                dF = _f_terms_ff(basis, Fm, [i] + spect, derive_slots=(0,))
                zizj = FactoredFrac.from_poly(
                    basis, SparsePoly.variable(n, i) * SparsePoly.variable(n, j))
                rhs = rhs + (zizj * _ff_inv_pair(basis, i, j)).shift_bexp(i, 2) * dF

    # second line: genus reduction
    if g >= 1:
        if (g - 1, n + 1) == (0, 2):
            z2_diag = (RationalExpr.variable(1, 0) ** 2) * f02_mixed_diagonal(r)
            for i in range(n):
                rhs = rhs + _ff_univariate(basis, z2_diag, i).shift_bexp(i, 2) \
                    * Fraction(1, 2)
        else:
            Fd = store.get(g - 1, n + 1)
            for i in range(n):
                spect = [q for q in range(n) if q != i]
                dd = _f_terms_ff(basis, Fd, [i, i] + spect, derive_slots=(0, 1))
                zi2 = FactoredFrac.from_poly(
                    basis, SparsePoly.monomial(n, tuple(2 if q == i else 0 for q in range(n))))
                rhs = rhs + (zi2 * dd).shift_bexp(i, 2) * Fraction(1, 2)

    # third line: stable splittings over labeled spectator subsets
    for i in range(n):
        spect = [q for q in range(n) if q != i]
        for mask in range(1 << len(spect)):
            I = [spect[t] for t in range(len(spect)) if mask >> t & 1]
            J = [spect[t] for t in range(len(spect)) if not mask >> t & 1]
            for g1 in range(g + 1):
                g2 = g - g1
                if 2 * g1 - 2 + len(I) + 1 <= 0 or 2 * g2 - 2 + len(J) + 1 <= 0:
                    continue
                dF1 = _f_terms_ff(basis, store.get(g1, len(I) + 1), [i] + I,
                                  derive_slots=(0,))
                dF2 = _f_terms_ff(basis, store.get(g2, len(J) + 1), [i] + J,
                                  derive_slots=(0,))
                zi2 = FactoredFrac.from_poly(
                    basis, SparsePoly.monomial(n, tuple(2 if q == i else 0 for q in range(n))))
                rhs = rhs + (zi2 * dF1 * dF2).shift_bexp(i, 2) * Fraction(1, 2)

    diff = lhs - rhs
    if not diff.is_zero():
        exps = min(diff.num.terms)
        raise IdentityFailure(
            f"differential recursion fails for (r,g,n)=({r},{g},{n}); "
            f"first mismatching monomial z^{exps} with coefficient {diff.num.terms[exps]}",
            witness={"monomial": exps, "coefficient": diff.num.terms[exps]},
        )
    return {"check": "diff-recursion", "r": r, "g": g, "n": n, "status": "pass"}
