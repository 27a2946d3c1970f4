"""Pure-Python monodromy enumeration kernel.

Counts tuples (tau_1, ..., tau_s) of transpositions in S_d such that
sigma_0 := (tau_1 ... tau_s sigma_inf)^{-1} has cycle type (r, r, ..., r)
and the subgroup generated by the taus together with sigma_inf acts
transitively on {0, ..., d-1}.  Same contract as the compiled kernel in
``_speedups``; selected via ``rlambert._backend``.
"""

from __future__ import annotations

__all__ = ["count_tuples"]


def _apply_transposition(i, j, q):
    # (i j) o q : swap the values i and j in q's output
    out = list(q)
    for x in range(len(out)):
        if out[x] == i:
            out[x] = j
        elif out[x] == j:
            out[x] = i
    return out


def _all_cycles_length(p, r):
    d = len(p)
    seen = [False] * d
    for i in range(d):
        if seen[i]:
            continue
        c = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            c += 1
        if c != r:
            return False
    return True


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def count_tuples(sigma_inf, s: int, r: int) -> int:
    d = len(sigma_inf)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    nt = len(pairs)

    # union-find base: components of sigma_inf alone
    base = list(range(d))
    for x in range(d):
        ra, rb = _find(base, x), _find(base, sigma_inf[x])
        if ra != rb:
            base[ra] = rb

    def transitive(chosen):
        parent = list(base)
        for i, j in chosen:
            ra, rb = _find(parent, i), _find(parent, j)
            if ra != rb:
                parent[ra] = rb
        root = _find(parent, 0)
        return all(_find(parent, x) == root for x in range(d))

    count = 0
    if s == 0:
        if _all_cycles_length(sigma_inf, r) and transitive([]):
            count = 1
        return count
    if nt == 0:
        return 0

    # DFS over tau choices, maintaining the suffix product tau_k ... tau_s sigma_inf
    suffix = [list(sigma_inf)]  # suffix[0] corresponds to position s (empty prefix)
    chosen = []

    def rec(k):
        nonlocal count
        if k == 0:
            if _all_cycles_length(suffix[-1], r) and transitive(chosen):
                count += 1
            return
        for i, j in pairs:
            suffix.append(_apply_transposition(i, j, suffix[-1]))
            chosen.append((i, j))
            rec(k - 1)
            suffix.pop()
            chosen.pop()

    rec(s)
    return count
