"""Pure-Python frontier combination kernel (fallback for ``_combine``).

Both kernels share one contract, see :func:`combine_profiles`.
"""
import numpy as np


def canonical(a, b, p, n):
    """True for exactly one permutation per distinct way of pairing ``a`` with ``b``.

    Within a run of equal entries of ``a`` the paired values of ``b`` must be
    non-increasing, and equal values of ``b`` must keep their original order.
    Every pairing that is skipped produces the same multiset of sums as a
    pairing that is kept.
    """
    for i in range(n):
        ri = b[p[i]]
        for j in range(i + 1, n):
            rj = b[p[j]]
            if a[i] == a[j] and ri < rj:
                return False
            if ri == rj and p[i] > p[j]:
                return False
    return True


def combine_profiles(left, right, perms):
    """Undominated sorted sums of ``left[ia] + permuted(right[ib])``.

    ``left``/``right`` are ``(rows, n)`` integer arrays of non-increasing
    profiles and ``perms`` a ``(k, n)`` array of permutations of ``range(n)``.
    Returns ``(profiles, provenance)``: the distinct minimal profiles in
    ascending lexicographic order, and for each one the ``(ia, ib, perm)``
    triple that produced it first in ``ia, ib, perm`` enumeration order.
    """
    n = left.shape[1]
    L, R, P = left.tolist(), right.tolist(), perms.tolist()
    first = {}
    for ia, a in enumerate(L):
        for ib, b in enumerate(R):
            for ip, p in enumerate(P):
                if not canonical(a, b, p, n):
                    continue
                c = tuple(sorted([a[i] + b[p[i]] for i in range(n)], reverse=True))
                if c not in first:
                    first[c] = (ia, ib, ip)
    kept = []
    for c in sorted(first):
        for k in reversed(kept):
            if all(k[i] <= c[i] for i in range(n)):
                break
        else:
            kept.append(c)
    profiles = np.array(kept, dtype=np.int64).reshape(-1, n)
    provenance = np.array([first[c] for c in kept], dtype=np.int64).reshape(-1, 3)
    return profiles, provenance
