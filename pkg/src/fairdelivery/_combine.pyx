# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled frontier combination kernel.

Same contract as ``_combine_py.combine_profiles``. Candidate profiles are
packed into int64 keys (base ``max_entry + 1``, first entry most significant)
so lexicographic order is numeric order; candidates are generated in chunks,
deduplicated with a stable numpy sort and filtered by a compiled skyline scan.
"""
import numpy as np
from libc.stdint cimport int64_t

cdef enum:
    MAXN = 16


cdef inline bint _canonical(const int64_t[:, ::1] left, Py_ssize_t ia,
                            const int64_t[:, ::1] right, Py_ssize_t ib,
                            const int64_t[:, ::1] perms, Py_ssize_t ip,
                            Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef int64_t ri, rj
    for i in range(n):
        ri = right[ib, perms[ip, i]]
        for j in range(i + 1, n):
            rj = right[ib, perms[ip, j]]
            if left[ia, i] == left[ia, j] and ri < rj:
                return False
            if ri == rj and perms[ip, i] > perms[ip, j]:
                return False
    return True


cdef Py_ssize_t _expand(const int64_t[:, ::1] left, const int64_t[:, ::1] right,
                        const int64_t[:, ::1] perms, Py_ssize_t lo, Py_ssize_t hi,
                        int64_t base, int64_t[::1] keys, int64_t[::1] gens) noexcept nogil:
    cdef Py_ssize_t n = left.shape[1], nb = right.shape[0], npm = perms.shape[0]
    cdef Py_ssize_t ia, ib, ip, i, j, count = 0
    cdef int64_t s[MAXN]
    cdef int64_t x, key
    for ia in range(lo, hi):
        for ib in range(nb):
            for ip in range(npm):
                if not _canonical(left, ia, right, ib, perms, ip, n):
                    continue
                for i in range(n):
                    x = left[ia, i] + right[ib, perms[ip, i]]
                    j = i
                    while j > 0 and s[j - 1] < x:
                        s[j] = s[j - 1]
                        j -= 1
                    s[j] = x
                key = 0
                for i in range(n):
                    key = key * base + s[i]
                keys[count] = key
                gens[count] = (ia * nb + ib) * npm + ip
                count += 1
    return count


cdef Py_ssize_t _skyline(const int64_t[::1] keys, Py_ssize_t n, int64_t base,
                         int64_t[::1] selected, int64_t[:, ::1] accepted) noexcept nogil:
    cdef Py_ssize_t idx, k, i, count = 0
    cdef int64_t cur[MAXN]
    cdef int64_t key
    cdef bint dominated
    for idx in range(keys.shape[0]):
        key = keys[idx]
        for i in range(n - 1, -1, -1):
            cur[i] = key % base
            key = key // base
        dominated = False
        k = count - 1
        while k >= 0:
            dominated = True
            for i in range(n):
                if accepted[k, i] > cur[i]:
                    dominated = False
                    break
            if dominated:
                break
            k -= 1
        if not dominated:
            for i in range(n):
                accepted[count, i] = cur[i]
            selected[count] = idx
            count += 1
    return count


def combine_profiles(left, right, perms, Py_ssize_t chunk=1 << 20):
    left = np.ascontiguousarray(left, dtype=np.int64)
    right = np.ascontiguousarray(right, dtype=np.int64)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    cdef Py_ssize_t na = left.shape[0], n = left.shape[1]
    cdef Py_ssize_t nb = right.shape[0], npm = perms.shape[0]
    if n > MAXN:
        raise OverflowError(f"compiled kernel supports at most {MAXN} agents")
    base = int(left.max(initial=0)) + int(right.max(initial=0)) + 1
    if base ** n >= 2 ** 62:
        raise OverflowError("profile keys do not fit in 64 bits")
    cdef int64_t cbase = base
    cdef Py_ssize_t per_row = max(1, nb * npm)
    cdef Py_ssize_t rows = max(1, chunk // per_row)
    cdef Py_ssize_t lo, hi, count, kept
    kept_keys = np.empty(0, dtype=np.int64)
    kept_gens = np.empty(0, dtype=np.int64)
    profiles = np.empty((0, n), dtype=np.int64)
    if nb == 0:
        na = 0
    for lo in range(0, na, rows):
        hi = min(na, lo + rows)
        keys = np.empty((hi - lo) * per_row, dtype=np.int64)
        gens = np.empty((hi - lo) * per_row, dtype=np.int64)
        count = _expand(left, right, perms, lo, hi, cbase, keys, gens)
        keys = np.concatenate([kept_keys, keys[:count]])
        gens = np.concatenate([kept_gens, gens[:count]])
        order = np.argsort(keys, kind="stable")
        keys, gens = keys[order], gens[order]
        if keys.shape[0] > 1:
            first = np.empty(keys.shape[0], dtype=bool)
            first[0] = True
            np.not_equal(keys[1:], keys[:-1], out=first[1:])
            keys, gens = keys[first], gens[first]
        selected = np.empty(keys.shape[0], dtype=np.int64)
        accepted = np.empty((keys.shape[0], n), dtype=np.int64)
        kept = _skyline(keys, n, cbase, selected, accepted)
        kept_keys = keys[selected[:kept]]
        kept_gens = gens[selected[:kept]]
        profiles = accepted[:kept].copy()
    provenance = np.empty((kept_gens.shape[0], 3), dtype=np.int64)
    provenance[:, 0] = kept_gens // (nb * npm)
    provenance[:, 1] = (kept_gens // npm) % nb
    provenance[:, 2] = kept_gens % npm
    return profiles, provenance
