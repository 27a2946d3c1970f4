# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled monodromy enumeration kernel (see _mono_py for the contract)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy


cdef int _find(int* parent, int a) nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


cdef bint _type_all_r(int* p, int* seen, int d, int r) nogil:
    cdef int x, i, c
    for x in range(d):
        seen[x] = 0
    for x in range(d):
        if seen[x]:
            continue
        c = 0
        i = x
        while not seen[i]:
            seen[i] = 1
            i = p[i]
            c += 1
        if c != r:
            return False
    return True


def count_tuples(sigma_inf, int s, int r):
    """Count transposition tuples whose full monodromy closes up with
    sigma_0 of cycle type (r^m) and transitive image."""
    cdef int d = len(sigma_inf)
    cdef int nt = d * (d - 1) // 2
    cdef long count = 0
    cdef int i, j, k, x, root, lev
    cdef bint ok

    cdef int* ti = <int*>malloc((nt if nt else 1) * sizeof(int))
    cdef int* tj = <int*>malloc((nt if nt else 1) * sizeof(int))
    cdef int* sig = <int*>malloc(d * sizeof(int))
    cdef int* base = <int*>malloc(d * sizeof(int))
    cdef int* parent = <int*>malloc(d * sizeof(int))
    cdef int* seen = <int*>malloc(d * sizeof(int))
    cdef int* full = <int*>malloc(d * sizeof(int))
    # pref[k] = tau_1 o ... o tau_k, k = 0..s (row-major, (s+1) x d)
    cdef int* pref = <int*>malloc((s + 1) * d * sizeof(int))
    cdef int* idx = <int*>malloc((s if s else 1) * sizeof(int))

    try:
        k = 0
        for i in range(d):
            for j in range(i + 1, d):
                ti[k] = i
                tj[k] = j
                k += 1
        for x in range(d):
            sig[x] = sigma_inf[x]
            pref[x] = x  # pref[0] = identity

        for x in range(d):
            base[x] = x
        for x in range(d):
            i = _find(base, x)
            j = _find(base, sig[x])
            if i != j:
                base[i] = j

        if s == 0:
            ok = _type_all_r(sig, seen, d, r)
            if ok:
                root = _find(base, 0)
                for x in range(1, d):
                    if _find(base, x) != root:
                        ok = False
                        break
            return 1 if ok else 0

        if nt == 0:
            return 0

        for k in range(s):
            idx[k] = 0
        lev = 0  # recompute pref rows lev+1 .. s
        while True:
            for k in range(lev, s):
                # pref[k+1] = pref[k] o tau_{idx[k]}: swap the two entries
                memcpy(pref + (k + 1) * d, pref + k * d, d * sizeof(int))
                i = ti[idx[k]]
                j = tj[idx[k]]
                x = pref[(k + 1) * d + i]
                pref[(k + 1) * d + i] = pref[(k + 1) * d + j]
                pref[(k + 1) * d + j] = x

            # full product tau_1 ... tau_s sigma_inf
            for x in range(d):
                full[x] = pref[s * d + sig[x]]
            ok = _type_all_r(full, seen, d, r)
            if ok:
                for x in range(d):
                    parent[x] = base[x]
                for k in range(s):
                    i = _find(parent, ti[idx[k]])
                    j = _find(parent, tj[idx[k]])
                    if i != j:
                        parent[i] = j
                root = _find(parent, 0)
                for x in range(1, d):
                    if _find(parent, x) != root:
                        ok = False
                        break
                if ok:
                    count += 1

            k = s - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < nt:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break
            lev = k
        return count
    finally:
        free(ti); free(tj); free(sig); free(base)
        free(parent); free(seen); free(full); free(pref); free(idx)
