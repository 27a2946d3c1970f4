"""Truncated Laurent series over a pluggable coefficient ring.

A series stores a dense coefficient window [low, order): exponents below
``low`` are exactly zero, exponents at or above ``order`` are *unknown*.
``order=None`` marks an exact series (all higher coefficients exactly zero),
which is how polynomials enter compositions.  Truncation bookkeeping is
pessimistic: a product of series known to orders N1, N2 with valuation lower
bounds v1, v2 is known to min(N1+v2, N2+v1), and reading a coefficient at or
beyond the tracked order raises, never silently returns zero.

Coefficients may be Fraction, RationalExpr, or root-ring elements; the ring
is used only through +, -, *, scalar multiplication, truthiness (zero test),
and ``1/c`` for inversion of leading coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import TruncationError, ValuationError

__all__ = ["LaurentSeries", "series_compose", "series_reverse"]


def _min_order(*orders):
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


class LaurentSeries:
    """One-variable truncated Laurent series with coefficients in a ring."""

    __slots__ = ("low", "coeffs", "order", "zero")

    def __init__(self, low: int, coeffs, order=None, zero=Fraction(0)):
        coeffs = list(coeffs)
        if order is not None and order != low + len(coeffs):
            raise ValueError("order must equal low + len(coeffs)")
        self.low = low
        self.coeffs = coeffs
        self.order = order
        self.zero = zero

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, low=0, zero=Fraction(0)) -> "LaurentSeries":
        """Exact series (polynomial / Laurent polynomial)."""
        return cls(low, coeffs, None, zero)

    @classmethod
    def constant(cls, c, zero=Fraction(0)) -> "LaurentSeries":
        return cls(0, [c], None, zero)

    @classmethod
    def zero_series(cls, zero=Fraction(0)) -> "LaurentSeries":
        return cls(0, [], None, zero)

    @classmethod
    def identity(cls, order=None, zero=Fraction(0)) -> "LaurentSeries":
        """The series v (to the given order, or exact)."""
        one = zero + 1 if not isinstance(zero, Fraction) else Fraction(1)
        if order is None:
            return cls(1, [one], None, zero)
        coeffs = [one] + [zero] * (order - 2)
        return cls(1, coeffs, order, zero)

    # -- bookkeeping ------------------------------------------------------

    def coefficient(self, e: int):
        """Coefficient of v^e; raises beyond the truncation order."""
        if self.order is not None and e >= self.order:
            raise TruncationError(f"coefficient v^{e} beyond truncation order {self.order}")
        if e < self.low:
            return self.zero
        i = e - self.low
        if i >= len(self.coeffs):
            return self.zero
        return self.coeffs[i]

    def __getitem__(self, e: int):
        return self.coefficient(e)

    def valuation_lb(self) -> int:
        """Index of first nonzero stored coefficient (= order if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return self.order if self.order is not None else self.low + len(self.coeffs)

    def valuation(self) -> int:
        """Exact valuation; error if the window shows no nonzero term."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        raise ValuationError("series is zero to its truncation order")

    def is_zero_to_order(self) -> bool:
        return all(not c for c in self.coeffs)

    def with_order(self, order: int) -> "LaurentSeries":
        """Truncate (or pad with explicit zeros) to the given order."""
        if self.order is not None and order > self.order:
            raise TruncationError(f"cannot extend truncation {self.order} to {order}")
        if order <= self.low:
            return LaurentSeries(order, [], order, self.zero)
        coeffs = self.coeffs[: order - self.low]
        coeffs += [self.zero] * (order - self.low - len(coeffs))
        return LaurentSeries(self.low, coeffs, order, self.zero)

    def _normalized_low(self) -> "LaurentSeries":
        """Strip leading (low-end) zeros from the stored window."""
        i = 0
        while i < len(self.coeffs) and not self.coeffs[i]:
            i += 1
        return LaurentSeries(self.low + i, self.coeffs[i:], self.order, self.zero)

    def map_coeffs(self, f, zero=None) -> "LaurentSeries":
        return LaurentSeries(self.low, [f(c) for c in self.coeffs], self.order,
                             self.zero if zero is None else zero)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(self.zero):
            return LaurentSeries.constant(self.zero + other, self.zero)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = _min_order(self.order, other.order)
        low = min(self.low, other.low) if (self.coeffs or other.coeffs) else 0
        if order is not None:
            top = order
        else:
            top = max(self.low + len(self.coeffs), other.low + len(other.coeffs), low)
        n = top - low
        out = [self.zero] * n
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.low + i
                if e < top:
                    out[e - low] = out[e - low] + c
        return LaurentSeries(low, out, order, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.low, [-c for c in self.coeffs], self.order, self.zero)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentSeries":
        return LaurentSeries(self.low, [x * c for x in self.coeffs], self.order, self.zero)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(self.zero, Fraction):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            if hasattr(other, "__mul__"):
                return self.scale(other)
            return NotImplemented
        a, b = self._normalized_low(), other._normalized_low()
        va, vb = a.valuation_lb(), b.valuation_lb()
        order = None
        if a.order is not None or b.order is not None:
            na = a.order if a.order is not None else a.low + len(a.coeffs) + 10 ** 9
            nb = b.order if b.order is not None else b.low + len(b.coeffs) + 10 ** 9
            order = min(na + vb, nb + va)
            if order >= 10 ** 8:
                order = None
        low = a.low + b.low
        if order is not None:
            top = order
        else:
            top = (a.low + len(a.coeffs)) + (b.low + len(b.coeffs)) - 1
            top = max(top, low)
        out = [self.zero] * (top - low)
        for i, ca in enumerate(a.coeffs):
            if not ca:
                continue
            ea = a.low + i
            for j, cb in enumerate(b.coeffs):
                if not cb:
                    continue
                e = ea + b.low + j
                if e < top:
                    out[e - low] = out[e - low] + ca * cb
        return LaurentSeries(low, out, order, self.zero)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("series powers must be integers")
        if n < 0:
            return self.invert() ** (-n)
        one = self.zero + 1
        result = LaurentSeries.constant(one, self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self) -> "LaurentSeries":
        """Multiplicative inverse; leading coefficient must be invertible."""
        s = self._normalized_low()
        v = s.valuation()
        if s.order is not None:
            n_terms = s.order - v
            order = s.order - 2 * v
        else:
            n_terms = len(s.coeffs) - (v - s.low)
            order = None
            # an exact polynomial with >1 term has an infinite inverse series:
            # keep a window as long as the input
            if sum(1 for c in s.coeffs if c) > 1:
                order = -v + n_terms
        c0 = s.coefficient(v)
        inv0 = 1 / c0
        out = [self.zero] * n_terms
        out[0] = inv0
        # (sum_k out_k u^k)(c0 + c1 u + ...) = 1 with u = v-shifted variable
        for k in range(1, n_terms):
            acc = self.zero
            for j in range(1, k + 1):
                cj = s.coefficient(v + j) if v + j < v + n_terms else self.zero
                if cj and out[k - j]:
                    acc = acc + cj * out[k - j]
            out[k] = -(inv0 * acc) if acc else self.zero
        return LaurentSeries(-v, out, order, self.zero)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lo = min(self.valuation_lb(), other.valuation_lb())
        hi = _min_order(self.order, other.order)
        if hi is None:
            hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        for e in range(lo, hi):
            a = self.coefficient(e) if (self.order is None or e < self.order) else None
            b = other.coefficient(e) if (other.order is None or e < other.order) else None
            if (a or b) and a != b:
                return False
        return True

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "LaurentSeries":
        out = []
        low = self.low - 1
        for i, c in enumerate(self.coeffs):
            e = self.low + i
            out.append(c * e)
        order = None if self.order is None else self.order - 1
        s = LaurentSeries(low, out, order, self.zero)
        return s._normalized_low() if out and low < 0 else s

    def even_part(self) -> "LaurentSeries":
        return LaurentSeries(self.low,
                             [c if (self.low + i) % 2 == 0 else self.zero
                              for i, c in enumerate(self.coeffs)],
                             self.order, self.zero)

    def odd_part(self) -> "LaurentSeries":
        return LaurentSeries(self.low,
                             [c if (self.low + i) % 2 == 1 else self.zero
                              for i, c in enumerate(self.coeffs)],
                             self.order, self.zero)

    def flip_sign(self) -> "LaurentSeries":
        """Substitute v -> -v."""
        return LaurentSeries(self.low,
                             [c if (self.low + i) % 2 == 0 else -c
                              for i, c in enumerate(self.coeffs)],
                             self.order, self.zero)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by v^k."""
        order = None if self.order is None else self.order + k
        return LaurentSeries(self.low + k, self.coeffs, order, self.zero)

    def __repr__(self):
        bits = []
        for i, c in enumerate(self.coeffs):
            if c:
                bits.append(f"({c})*v^{self.low + i}")
        tail = f" + O(v^{self.order})" if self.order is not None else ""
        return "LaurentSeries(" + (" + ".join(bits) if bits else "0") + tail + ")"


def series_compose(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """f(g(v)), exact to the tracked truncation order.

    Requires g to have valuation >= 1 unless f is exact (a Laurent
    polynomial), since an infinite series composed with a unit has no
    well-defined coefficients.
    """
    g = g._normalized_low()
    vg = g.valuation_lb()
    if vg < 1 and f.order is not None:
        raise ValuationError("inner series must have valuation >= 1")
    if f.low < 0:
        ginv = g.invert()
    zero = f.zero
    total = LaurentSeries.constant(zero, zero)
    # Horner over nonnegative exponents, direct powers for the finite
    # negative (Laurent) part.
    nonneg = [(f.low + i, c) for i, c in enumerate(f.coeffs) if f.low + i >= 0]
    neg = [(f.low + i, c) for i, c in enumerate(f.coeffs) if f.low + i < 0]
    if nonneg:
        top = max(e for e, _ in nonneg)
        cmap = dict(nonneg)
        acc = LaurentSeries.constant(cmap.get(top, zero), zero)
        for e in range(top - 1, -1, -1):
            acc = acc * g
            c = cmap.get(e, zero)
            if c:
                acc = acc + LaurentSeries.constant(c, zero)
        total = total + acc
    for e, c in neg:
        if c:
            total = total + (ginv ** (-e)).scale(c)
    if f.order is not None and vg >= 1:
        # unknown tail of f contributes O(v^{order_f * vg})
        tail = f.order * vg if f.order >= 0 else f.order
        total = total.with_order(_min_order(total.order, tail)
                                 if _min_order(total.order, tail) is not None else tail)
    return total


def series_reverse(f: LaurentSeries, order: int) -> LaurentSeries:
    """Compositional inverse g with f(g) = v + O(v^order).

    f must have valuation exactly 1 with invertible leading coefficient.
    """
    f = f._normalized_low()
    if f.is_zero_to_order() or f.valuation() != 1:
        raise ValuationError("series reversion needs valuation exactly 1")
    zero = f.zero
    one = zero + 1
    a1 = f.coefficient(1)
    if f.order is not None:
        order = min(order, f.order)
    # g determined term by term: g = sum b_k v^k
    b = [1 / a1]
    for n in range(2, order):
        # coefficient of v^n in f(g_partial + b_n v^n) is
        # [v^n] f(g_partial) + a1 * b_n ; solve for b_n.
        g_partial = LaurentSeries(1, b + [zero], n + 1, zero)
        comp = series_compose(f.with_order(n + 1) if f.order is None else f, g_partial)
        c = comp.coefficient(n)
        b.append(-(1 / a1) * c)
    return LaurentSeries(1, b, order, zero)


# -- classical series builders (Fraction coefficients) ---------------------

def exp_series(f: LaurentSeries) -> LaurentSeries:
    """exp(f) for f with valuation >= 1, to f's truncation order."""
    f = f._normalized_low()
    if f.order is None:
        raise ValueError("exp of an exact polynomial needs an explicit order; truncate first")
    if not f.is_zero_to_order() and f.valuation() < 1:
        raise ValuationError("exp needs valuation >= 1")
    order = f.order
    zero = f.zero
    total = LaurentSeries.constant(zero + 1, zero).with_order(order)
    term = LaurentSeries.constant(zero + 1, zero)
    for k in range(1, order):
        term = (term * f).with_order(order)
        if term.is_zero_to_order():
            break
        total = total + term.scale(Fraction(1, factorial(k)))
    return total.with_order(order)


def log1p_series(f: LaurentSeries) -> LaurentSeries:
    """log(1 + f) for f with valuation >= 1, to f's truncation order."""
    f = f._normalized_low()
    if f.order is None:
        raise ValueError("log of an exact polynomial needs an explicit order; truncate first")
    if not f.is_zero_to_order() and f.valuation() < 1:
        raise ValuationError("log needs valuation >= 1")
    order = f.order
    zero = f.zero
    total = LaurentSeries.zero_series(zero).with_order(order)
    term = LaurentSeries.constant(zero + 1, zero)
    for k in range(1, order):
        term = (term * f).with_order(order)
        if term.is_zero_to_order():
            break
        total = total + term.scale(Fraction((-1) ** (k + 1), k))
    return total.with_order(order)


def pow_series(f: LaurentSeries, alpha: Fraction) -> LaurentSeries:
    """(1 + u)^alpha where f = 1 + u, u of valuation >= 1; exact rational alpha."""
    one = f.zero + 1
    u = f - LaurentSeries.constant(one, f.zero)
    u = u._normalized_low()
    if not u.is_zero_to_order() and u.valuation() < 1:
        raise ValuationError("pow_series needs constant term 1")
    order = f.order
    if order is None:
        raise ValueError("pow_series needs a truncated input")
    total = LaurentSeries.constant(one, f.zero).with_order(order)
    term = LaurentSeries.constant(one, f.zero)
    coeff = Fraction(1)
    alpha = Fraction(alpha)
    for k in range(1, order):
        coeff *= (alpha - (k - 1)) / k
        term = (term * u).with_order(order)
        if term.is_zero_to_order():
            break
        total = total + term.scale(coeff)
    return total.with_order(order)
