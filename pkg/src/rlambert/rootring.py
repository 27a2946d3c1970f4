"""The root quotient ring Q(z_1,...,z_n)[a] / (a^r - 1/r).

The r ramification points of the r-Lambert projection satisfy z^r = 1/r, so
an element of this ring encodes a computation carried out at all r critical
points simultaneously; summing a quantity over the critical points is the
ring trace, which after reduction is just r times the a^0-component.  Keeping
the relation in the z-coordinate form a^r = 1/r (rather than a^r = 1) keeps
every stored coefficient rational.

Coefficients live in any field supporting +, -, *, /, truthiness, and
equality: Fraction and RationalExpr both qualify.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInvertible

__all__ = ["RootRingElem", "root_ring_trace", "root_ring_invert"]


class RootRingElem:
    """sum_{k<r} c_k a^k with a^r = 1/r."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs):
        coeffs = list(coeffs)
        if r < 1:
            raise ValueError("r must be >= 1")
        if len(coeffs) != r:
            raise ValueError(f"need exactly {r} coefficients")
        self.r = r
        self.coeffs = coeffs

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_scalar(cls, r: int, c, zero=Fraction(0)) -> "RootRingElem":
        return cls(r, [zero + c] + [zero] * (r - 1))

    @classmethod
    def zero(cls, r: int, zero=Fraction(0)) -> "RootRingElem":
        return cls(r, [zero] * r)

    @classmethod
    def one(cls, r: int, zero=Fraction(0)) -> "RootRingElem":
        return cls.from_scalar(r, 1, zero)

    @classmethod
    def generator(cls, r: int, zero=Fraction(0)) -> "RootRingElem":
        """The class of a itself (a^r reduced to 1/r when r = 1)."""
        if r == 1:
            return cls(1, [zero + Fraction(1)])
        c = [zero] * r
        c[1] = zero + 1
        return cls(r, c)

    @classmethod
    def monomial(cls, r: int, k: int, c=1, zero=Fraction(0)) -> "RootRingElem":
        """c * a^k with k arbitrary (reduced mod a^r = 1/r)."""
        q, k = divmod(k, r)
        out = [zero] * r
        out[k] = zero + (Fraction(1, r) ** q) * c
        return cls(r, out)

    @property
    def _zero(self):
        c = self.coeffs[0]
        return c * 0 if not isinstance(c, Fraction) else Fraction(0)

    # -- ring operations --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RootRingElem):
            if other.r != self.r:
                raise ValueError("mixed root rings")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(self.coeffs[0]):
            return RootRingElem.from_scalar(self.r, other, self._zero)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RootRingElem(self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return RootRingElem(self.r, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RootRingElem(self.r, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return self.scale(other)
        r = self.r
        zero = self._zero
        out = [zero for _ in range(r)]
        inv_r = Fraction(1, r)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                term = a * b
                if k >= r:
                    k -= r
                    term = term * inv_r  # a^r = 1/r
                out[k] = out[k] + term
        return RootRingElem(r, out)

    __rmul__ = __mul__

    def scale(self, c) -> "RootRingElem":
        return RootRingElem(self.r, [a * c for a in self.coeffs])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * root_ring_invert(other)

    def __rtruediv__(self, other):
        return self._coerce(other) * root_ring_invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return root_ring_invert(self) ** (-n)
        result = RootRingElem.one(self.r, self._zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def map_coeffs(self, f) -> "RootRingElem":
        return RootRingElem(self.r, [f(c) for c in self.coeffs])

    def __repr__(self):
        bits = [f"({c})*a^{k}" for k, c in enumerate(self.coeffs) if c]
        return "RootRingElem(" + (" + ".join(bits) if bits else "0") + f"; a^{self.r}=1/{self.r})"


def root_ring_trace(e: RootRingElem):
    """Sum of e over the r roots of a^r = 1/r: equals r * c_0 after reduction.

    Powers a^k with 0 < k < r sum to zero over the roots, so only the
    a^0-component survives, weighted by the number of roots.
    """
    return e.coeffs[0] * e.r


def root_ring_invert(e: RootRingElem) -> RootRingElem:
    """Inverse in Q(...)[a]/(a^r - 1/r) by solving the multiplication system.

    Raises NotInvertible when the norm vanishes identically (the
    multiplication-by-e matrix is singular over the coefficient field).
    """
    r = e.r
    zero = e._zero
    one = zero + 1
    inv_r = Fraction(1, r)
    # columns: e * a^j expressed in the basis (a^0 .. a^{r-1})
    cols = []
    col = list(e.coeffs)
    for _ in range(r):
        cols.append(list(col))
        top = col[-1]
        col = [top * inv_r] + col[:-1]
    # solve M x = (1, 0, ..., 0) with M[i][j] = cols[j][i], Gaussian elimination
    M = [[cols[j][i] for j in range(r)] + [one if i == 0 else zero] for i in range(r)]
    for c in range(r):
        piv = None
        for i in range(c, r):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            raise NotInvertible("element has vanishing norm in the root ring")
        M[c], M[piv] = M[piv], M[c]
        pin = 1 / M[c][c]
        M[c] = [x * pin for x in M[c]]
        for i in range(r):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return RootRingElem(r, [M[i][r] for i in range(r)])
