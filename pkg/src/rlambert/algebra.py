"""Exact arithmetic substrate: rationals, sparse multivariate polynomials,
and normalized quotients of them.

All scalars are ``fractions.Fraction`` (arbitrary precision, always in lowest
terms with positive denominator); nothing in this package ever rounds.
Polynomials are sparse maps from exponent vectors to nonzero coefficients,
with a deterministic (lexicographic) term order used for serialization and
for leading-term extraction.  Quotients keep numerator and denominator as
polynomials; equality is tested by cross-multiplication, so gcd reduction is
an optimization, never a correctness requirement.  Univariate quotients are
kept gcd-reduced because that is cheap and the recursion workloads would
otherwise inflate degrees.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import NonExactDivision

__all__ = [
    "Rational",
    "rat",
    "format_rational",
    "parse_rational",
    "SparsePoly",
    "poly_divexact",
    "RationalExpr",
]

Rational = Fraction


def rat(num, den=1) -> Fraction:
    """Exact rational from integers (or anything Fraction accepts)."""
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Canonical text form ``num/den``, lowest terms, den > 0."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; accepts plain integers too."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _as_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not a scalar coefficient: {c!r}")


class SparsePoly:
    """Sparse polynomial in a fixed number of variables over Fraction.

    ``terms`` maps exponent tuples (length ``arity``) to nonzero Fraction
    coefficients.  Instances are immutable by convention: no method mutates
    ``self`` after construction.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _as_coeff(c)
                if not c:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != arity:
                    raise ValueError(f"exponent vector {exps} has arity != {arity}")
                if min(exps) < 0:
                    raise ValueError(f"negative exponent in {exps}")
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "SparsePoly":
        return cls(arity, {})

    @classmethod
    def one(cls, arity: int) -> "SparsePoly":
        return cls.constant(arity, Fraction(1))

    @classmethod
    def constant(cls, arity: int, c) -> "SparsePoly":
        return cls(arity, {(0,) * arity: _as_coeff(c)})

    @classmethod
    def variable(cls, arity: int, index: int) -> "SparsePoly":
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, arity: int, exps, c=1) -> "SparsePoly":
        return cls(arity, {tuple(exps): _as_coeff(c)})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.arity in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[(0,) * self.arity]

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the lexicographically largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        """Terms in lexicographic exponent order (the canonical order)."""
        return [(e, self.terms[e]) for e in sorted(self.terms)]

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coeffs."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_coeff(other)
            if not c:
                return SparsePoly.zero(self.arity)
            return SparsePoly(self.arity, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SparsePoly.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(self.arity, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    # -- calculus and substitution ------------------------------------

    def derivative(self, index: int = 0) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            e2 = list(e)
            e2[index] = k - 1
            e2 = tuple(e2)
            s = out.get(e2, Fraction(0)) + c * k
            if s:
                out[e2] = s
            else:
                del out[e2]
        return SparsePoly(self.arity, out)

    def eval(self, values) -> Fraction:
        """Evaluate at a full vector of Fractions."""
        if len(values) != self.arity:
            raise ValueError("wrong number of values")
        values = [_as_coeff(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def subs_polys(self, polys) -> "SparsePoly":
        """Substitute a polynomial for each variable (all same arity)."""
        if len(polys) != self.arity:
            raise ValueError("wrong number of substitutions")
        if not polys:
            raise ValueError("arity-0 substitution")
        out_arity = polys[0].arity
        # cache powers per variable
        powers = [{0: SparsePoly.one(out_arity)} for _ in polys]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * polys[i]
            return cache[k]

        total = SparsePoly.zero(out_arity)
        for e, c in self.terms.items():
            term = SparsePoly.constant(out_arity, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def merge_variables(self) -> "SparsePoly":
        """Set all variables equal: p(z,...,z) as a univariate polynomial."""
        out = {}
        for e, c in self.terms.items():
            k = (sum(e),)
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return SparsePoly(1, out)

    # -- display ------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"z{i+1}^{k}" if k > 1 else f"z{i+1}"
                for i, k in enumerate(e) if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "SparsePoly(" + " + ".join(bits) + ")"


def poly_divexact(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Exact quotient q with q*b == a.

    Raises NonExactDivision if b does not divide a in the polynomial ring;
    an inexact division here always signals a broken identity upstream, so
    callers must never catch-and-round.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return SparsePoly.zero(a.arity)
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    eb, cb = b.leading()
    rem = dict(a.terms)
    q = {}
    while rem:
        ea = max(rem)
        ca = rem[ea]
        eq = tuple(x - y for x, y in zip(ea, eb))
        if min(eq) < 0:
            raise NonExactDivision(f"leading term z^{ea} not divisible by z^{eb}")
        cq = ca / cb
        q[eq] = cq
        # rem -= cq * z^eq * b
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(eq, e2))
            s = rem.get(e, Fraction(0)) - cq * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return SparsePoly(a.arity, q)


# -- dense univariate helpers (internal, used for cheap gcd reduction) ----

def _to_dense(p: SparsePoly):
    d = p.degree_in(0)
    out = [Fraction(0)] * (d + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def _from_dense(coeffs):
    return SparsePoly(1, {(i,): c for i, c in enumerate(coeffs) if c})


def _dense_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _dense_mod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = a[-1] / lb
        for i, c in enumerate(b):
            a[k + i] -= f * c
        _dense_trim(a)
        if not a:
            break
    return a


def _univ_gcd(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    a, b = _dense_trim(_to_dense(p)), _dense_trim(_to_dense(q))
    while b:
        a, b = b, _dense_trim(_dense_mod(a, b))
    g = _from_dense(a)
    if g.is_zero():
        return g
    c = g.content()
    _, lead = g.leading()
    return g * (1 / (c if lead > 0 else -c))


class RationalExpr:
    """Quotient of sparse polynomials.

    Normalized so the denominator has content 1 and positive leading
    coefficient under the canonical term order.  Equality is by
    cross-multiplication.  Univariate instances are additionally kept
    gcd-reduced (cheap, and the series pullback workloads need it);
    multivariate ones only attempt an exact cancellation of the full
    denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly | None = None, reduce: bool = True):
        if den is None:
            den = SparsePoly.one(num.arity)
        if num.arity != den.arity:
            raise ValueError("arity mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = self._reduced(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _reduced(num, den):
        if num.is_zero():
            return num, SparsePoly.one(num.arity)
        if num.arity == 1:
            g = _univ_gcd(num, den)
            if g.total_degree() > 0:
                num = poly_divexact(num, g)
                den = poly_divexact(den, g)
        elif not den.is_constant():
            try:
                num = poly_divexact(num, den)
                den = SparsePoly.one(num.arity)
            except NonExactDivision:
                pass
        # make denominator content 1, leading coefficient positive
        c = den.content()
        _, lead = den.leading()
        if lead < 0:
            c = -c
        if c != 1:
            scale = 1 / c
            den = den * scale
            num = num * scale
        return num, den

    # -- constructors --------------------------------------------------

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "RationalExpr":
        return cls(p, SparsePoly.one(p.arity), reduce=False)

    @classmethod
    def constant(cls, arity: int, c) -> "RationalExpr":
        return cls.from_poly(SparsePoly.constant(arity, c))

    @classmethod
    def zero(cls, arity: int) -> "RationalExpr":
        return cls.from_poly(SparsePoly.zero(arity))

    @classmethod
    def one(cls, arity: int) -> "RationalExpr":
        return cls.from_poly(SparsePoly.one(arity))

    @classmethod
    def variable(cls, arity: int, index: int) -> "RationalExpr":
        return cls.from_poly(SparsePoly.variable(arity, index))

    # -- predicates ----------------------------------------------------

    @property
    def arity(self) -> int:
        return self.num.arity

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalExpr):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalExpr.constant(self.arity, other)
        if isinstance(other, SparsePoly):
            return RationalExpr.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalExpr(self.num + other.num, self.den)
        return RationalExpr(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalExpr(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalExpr.zero(self.arity)
            return RationalExpr(self.num * other, self.den, reduce=False)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational expression")
        return RationalExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalExpr(self.den ** (-n), self.num ** (-n))
        return RationalExpr(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SparsePoly)):
            other = self._coerce(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalExpr is unhashable (equality is structural)")

    # -- calculus -------------------------------------------------------

    def derivative(self, index: int = 0) -> "RationalExpr":
        return RationalExpr(
            self.num.derivative(index) * self.den - self.num * self.den.derivative(index),
            self.den * self.den,
        )

    def eval(self, values) -> Fraction:
        d = self.den.eval(values)
        if not d:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.eval(values) / d

    def subs_polys(self, polys) -> "RationalExpr":
        return RationalExpr(self.num.subs_polys(polys), self.den.subs_polys(polys))

    def __repr__(self):
        if self.den.is_constant():
            if self.den.constant_value() == 1:
                return f"RationalExpr({self.num!r})"
        return f"RationalExpr({self.num!r} / {self.den!r})"
