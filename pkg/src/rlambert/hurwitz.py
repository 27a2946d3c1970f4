"""Orbifold Hurwitz numbers H_{g,n}^{(r)}(mu), exactly.

Two independent routes:

* ``hurwitz_caj`` solves the cut-and-join equation for the top term; every
  right-hand configuration has exactly one fewer simple branch point, so the
  recursion grounds out at the single s = 0 cover (g, n, mu) = (0, 1, (r))
  with H = 1/r.
* ``hurwitz_oracle`` counts monodromy tuples in S_d by brute force
  (compiled kernel when available), normalized as
  count(canonical sigma_inf) / (s! * prod(mu_i)), which is the
  |Aut(mu)|/(s! d!)-weighted count after collapsing the sigma_inf conjugacy
  class to one representative.

Values are memoized in a write-once ``HurwitzTable`` with a line-oriented
text cache format ``r;g;mu_csv_sorted;num/den``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from itertools import product as iproduct

from ._backend import count_tuples
from .algebra import format_rational, parse_rational
from .errors import BudgetExceeded, CorruptCache

__all__ = [
    "HurwitzKey",
    "HurwitzTable",
    "hurwitz_caj",
    "hurwitz_oracle",
    "hurwitz_table",
    "cache_load",
    "cache_store",
    "h01_closed_form",
    "h02_closed_form",
]

DEFAULT_ORACLE_BUDGET = 10 ** 7


@dataclass(frozen=True)
class HurwitzKey:
    """(r, g, mu) with mu a nonempty ascending tuple of positive parts."""

    r: int
    g: int
    mu: tuple

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be positive")
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        mu = tuple(sorted(int(m) for m in self.mu))
        if not mu or mu[0] < 1:
            raise ValueError("mu must be a nonempty list of positive parts")
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def d(self) -> int:
        return sum(self.mu)

    @property
    def m(self) -> int:
        if self.d % self.r:
            raise ValueError("d is not divisible by r")
        return self.d // self.r

    @property
    def s(self) -> int:
        """Number of simple ramification points (Riemann-Hurwitz)."""
        return 2 * self.g - 2 + self.n + self.d // self.r


@dataclass
class HurwitzTable:
    """Memo table keyed by HurwitzKey; entries are write-once."""

    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def get(self, key: HurwitzKey):
        return self.entries.get(key)

    def put(self, key: HurwitzKey, value: Fraction, provenance: str = "recursion"):
        old = self.entries.get(key)
        if old is not None:
            if old != value:
                raise AssertionError(
                    f"write-once violation at {key}: {old} vs {value}")
            return
        self.entries[key] = value
        self.provenance[key] = provenance

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries


def h01_closed_form(r: int, mu: int) -> Fraction:
    """H_{0,1}^{(r)}(mu) = mu^{m-2}/m! for mu = rm, else 0."""
    if mu % r:
        return Fraction(0)
    m = mu // r
    return Fraction(mu) ** (m - 2) / factorial(m)


def h02_closed_form(r: int, mu1: int, mu2: int) -> Fraction:
    """Annulus amplitude: r^{<mu1/r>+<mu2/r>} / (mu1+mu2) * prod mu^floor/floor!."""
    if (mu1 + mu2) % r:
        return Fraction(0)
    e = ((mu1 % r) + (mu2 % r)) // r  # fractional parts sum to an integer here
    v = Fraction(r) ** e / (mu1 + mu2)
    for m in (mu1, mu2):
        f = m // r
        v *= Fraction(m) ** f / factorial(f)
    return v


def _submultisets(items):
    """All sub-multisets of a multiset, with labeled-subset multiplicities.

    items: list of (value, multiplicity).  Yields (sub, ways) where sub is a
    tuple of chosen (value, count) with count >= 1 and ways is the number of
    labeled index subsets realizing it.
    """
    values = [v for v, _ in items]
    mults = [m for _, m in items]
    for counts in iproduct(*[range(m + 1) for m in mults]):
        ways = 1
        sub = []
        for v, m, c in zip(values, mults, counts):
            ways *= comb(m, c)
            if c:
                sub.append((v, c))
        yield tuple(sub), ways


def _expand(sub):
    out = []
    for v, c in sub:
        out.extend([v] * c)
    return out


def _complement(items, sub):
    subd = dict(sub)
    out = []
    for v, m in items:
        rest = m - subd.get(v, 0)
        if rest:
            out.extend([v] * rest)
    return out


def hurwitz_caj(key: HurwitzKey, table: HurwitzTable) -> Fraction:
    """Orbifold Hurwitz number via the cut-and-join recursion (memoized)."""
    cached = table.get(key)
    if cached is not None:
        return cached

    r, g, mu = key.r, key.g, key.mu
    n, d = key.n, key.d
    if d % r:
        table.put(key, Fraction(0))
        return Fraction(0)
    s = key.s
    if s < 0:
        table.put(key, Fraction(0))
        return Fraction(0)
    if s == 0:
        value = Fraction(1, r) if (g, n, mu) == (0, 1, (r,)) else Fraction(0)
        table.put(key, value)
        return value

    def H(gg, parts):
        if gg < 0 or not parts:
            return Fraction(0)
        return hurwitz_caj(HurwitzKey(r, gg, tuple(parts)), table)

    # distinct parts with multiplicities
    items = []
    for v in mu:
        if items and items[-1][0] == v:
            items[-1][1] += 1
        else:
            items.append([v, 1])
    items = [(v, m) for v, m in items]

    total = Fraction(0)

    # join: (1/2) sum_{i != j} (mu_i + mu_j) H_{g,n-1}(mu_i + mu_j, rest)
    for a_idx in range(len(items)):
        for b_idx in range(a_idx, len(items)):
            a, ma = items[a_idx]
            b, mb = items[b_idx]
            ordered_pairs = ma * (ma - 1) if a_idx == b_idx else 2 * ma * mb
            if not ordered_pairs:
                continue
            rest = []
            for idx2, (v, m) in enumerate(items):
                if idx2 == a_idx:
                    m -= 2 if a_idx == b_idx else 1
                if idx2 == b_idx and a_idx != b_idx:
                    m -= 1
                rest.extend([v] * m)
            child = tuple(sorted(rest + [a + b]))
            ck = HurwitzKey(r, g, child)
            assert ck.s == s - 1
            total += Fraction(ordered_pairs, 2) * (a + b) * H(g, child)

    # cut: (1/2) sum_i sum_{alpha+beta=mu_i} alpha beta [genus drop + splittings]
    for v, mult in items:
        rest_items = [(w, m - (1 if w == v else 0)) for w, m in items]
        rest_items = [(w, m) for w, m in rest_items if m]
        rest_full = _expand(rest_items)
        for alpha in range(1, v):
            beta = v - alpha
            weight = Fraction(mult) * alpha * beta / 2
            # genus-reduction term
            if g >= 1:
                child = tuple(sorted(rest_full + [alpha, beta]))
                ck = HurwitzKey(r, g - 1, child)
                assert ck.s == s - 1
                total += weight * H(g - 1, child)
            # splitting terms over genus and labeled subsets of the rest
            for sub, ways in _submultisets(rest_items):
                part_i = tuple(sorted(_expand(sub) + [alpha]))
                part_j = tuple(sorted(_complement(rest_items, sub) + [beta]))
                if sum(part_i) % r or sum(part_j) % r:
                    continue
                for g1 in range(g + 1):
                    g2 = g - g1
                    k1 = HurwitzKey(r, g1, part_i)
                    k2 = HurwitzKey(r, g2, part_j)
                    if k1.s < 0 or k2.s < 0:
                        continue
                    assert k1.s + k2.s == s - 1
                    h1 = H(g1, part_i)
                    if not h1:
                        continue
                    total += weight * ways * h1 * H(g2, part_j)

    value = total / s
    table.put(key, value)
    return value


def hurwitz_oracle(key: HurwitzKey, budget: int = DEFAULT_ORACLE_BUDGET) -> Fraction:
    """Independent monodromy-count evaluation of H_{g,n}^{(r)}(mu).

    Enumerates tuples of s transpositions against a canonical sigma_inf of
    cycle type mu; raises BudgetExceeded when the search space
    (d(d-1)/2)^s is larger than ``budget``.
    """
    r, g, mu = key.r, key.g, key.mu
    d = key.d
    if d % r:
        return Fraction(0)
    s = key.s
    if s < 0:
        return Fraction(0)
    nt = d * (d - 1) // 2
    space = nt ** s if s else 1
    if space > budget:
        raise BudgetExceeded(f"search space {space} exceeds budget {budget}")
    sigma_inf = []
    start = 0
    for part in mu:
        sigma_inf.extend(list(range(start + 1, start + part)) + [start])
        start += part
    count = count_tuples(sigma_inf, s, r)
    den = factorial(s)
    for q in mu:
        den *= q
    return Fraction(count, den)


def _partitions(d: int, n: int, max_part: int | None = None):
    """Ascending partitions of d into exactly n parts."""
    if max_part is None:
        max_part = d
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        if 1 <= d <= max_part:
            yield (d,)
        return
    first_max = min(max_part, d - (n - 1))
    for first in range(1, first_max + 1):
        for rest in _partitions(d - first, n - 1, max_part):
            if not rest or first <= rest[0]:
                yield (first,) + rest


def hurwitz_table(r: int, g: int, n: int, d_max: int, table: HurwitzTable):
    """All (mu, H) with len(mu) = n and |mu| <= d_max, in lexicographic order."""
    if d_max < n:
        raise ValueError("d_max must be at least n")
    out = []
    for d in range(n, d_max + 1):
        for mu in sorted(_partitions(d, n)):
            out.append((mu, hurwitz_caj(HurwitzKey(r, g, mu), table)))
    return out


def cache_store(path: str, table: HurwitzTable) -> None:
    """Write the table in the canonical line format, lines sorted."""
    lines = []
    for key, value in table.entries.items():
        mu_csv = ",".join(str(m) for m in key.mu)
        lines.append(f"{key.r};{key.g};{mu_csv};{format_rational(value)}")
    lines.sort()
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("# rlambert hurwitz cache v1\n")
        for line in lines:
            fh.write(line + "\n")
    os.replace(tmp, path)


def cache_load(path: str) -> HurwitzTable:
    """Parse a cache file; raises CorruptCache rather than partially loading."""
    entries = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(";")
                if len(parts) != 4:
                    raise CorruptCache(f"{path}:{lineno}: expected 4 fields")
                try:
                    r = int(parts[0])
                    g = int(parts[1])
                    mu = tuple(int(x) for x in parts[2].split(","))
                    value = parse_rational(parts[3])
                except (ValueError, ZeroDivisionError) as exc:
                    raise CorruptCache(f"{path}:{lineno}: {exc}") from exc
                entries.append((HurwitzKey(r, g, mu), value))
    except OSError as exc:
        raise CorruptCache(f"cannot read {path}: {exc}") from exc
    table = HurwitzTable()
    for key, value in entries:
        table.put(key, value, provenance="cache")
    return table
