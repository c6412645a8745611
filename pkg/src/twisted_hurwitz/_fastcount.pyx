# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled tuple-search kernel.

Same contract as ``_slowcount.count_for_sigma`` (see ``_kernel``): an
explicit depth-first walk over transposition choices keeping the partial
sandwich product and, for connected counting, a union-find partition of
the points.  Points are stored as unsigned bytes, so the leaf product can
be handed to the precomputed ``bytes -> alphas`` lookup without copying
through Python lists.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.dict cimport PyDict_GetItem
from cpython.object cimport PyObject
from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef inline int _find(unsigned char* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline void _union(unsigned char* parent, int a, int b) nogil:
    cdef int ra = _find(parent, a)
    cdef int rb = _find(parent, b)
    if ra != rb:
        parent[ra] = <unsigned char> rb


cdef inline bint _single_block(unsigned char* parent, int n) nogil:
    cdef int root = _find(parent, 0)
    cdef int i
    for i in range(1, n):
        if _find(parent, i) != root:
            return False
    return True


def count_for_sigma(sigma, etas, eta_taus, alphas, dict lookup, int depth, bint connected):
    """Number of (eta_1..eta_depth, alpha) completions for this sigma."""
    cdef int n = len(sigma)
    cdef int n_eta = len(etas)
    cdef int n_alpha = len(alphas)
    cdef int levels = depth + 1
    cdef long long count = 0

    # one block: eta tables, alpha tables, merge pairs, per-level cur/parent,
    # per-level branch index, and a scratch partition for the per-alpha check
    cdef size_t table_bytes = (
        2 * <size_t> n_eta * n      # etas, eta_taus
        + <size_t> n_alpha * n      # alphas
        + 2 * <size_t> levels * n   # cur, parent per level
        + n                          # trial partition
    )
    cdef unsigned char* block = <unsigned char*> malloc(table_bytes if table_bytes else 1)
    cdef int* pairs = <int*> malloc(4 * <size_t> n_eta * sizeof(int) if n_eta else sizeof(int))
    cdef int* idx = <int*> malloc(<size_t> levels * sizeof(int))
    if block == NULL or pairs == NULL or idx == NULL:
        free(block); free(pairs); free(idx)
        raise MemoryError()

    cdef unsigned char* eta_flat = block
    cdef unsigned char* etat_flat = eta_flat + n_eta * n
    cdef unsigned char* alpha_flat = etat_flat + n_eta * n
    cdef unsigned char* cur = alpha_flat + n_alpha * n
    cdef unsigned char* parent = cur + levels * n
    cdef unsigned char* trial = parent + levels * n

    cdef int i, e, l, moved_count
    cdef unsigned char* src
    cdef unsigned char* dst
    cdef unsigned char* child
    cdef PyObject* hit
    cdef object cand
    cdef int ai, root
    cdef long long cand_len

    try:
        for e in range(n_eta):
            row = etas[e]
            for i in range(n):
                eta_flat[e * n + i] = <unsigned char> row[i]
            row = eta_taus[e]
            for i in range(n):
                etat_flat[e * n + i] = <unsigned char> row[i]
            # supports of the sandwich: the two points eta moves and the two
            # points (tau eta tau) moves, merged pairwise into the partition
            moved_count = 0
            for i in range(n):
                if eta_flat[e * n + i] != i:
                    pairs[4 * e + moved_count] = i
                    moved_count += 1
                    if moved_count == 2:
                        break
            moved_count = 0
            for i in range(n):
                if etat_flat[e * n + i] != i:
                    pairs[4 * e + 2 + moved_count] = i
                    moved_count += 1
                    if moved_count == 2:
                        break
        for ai in range(n_alpha):
            row = alphas[ai]
            for i in range(n):
                alpha_flat[ai * n + i] = <unsigned char> row[i]

        for i in range(n):
            cur[i] = <unsigned char> sigma[i]
            parent[i] = <unsigned char> i
        if connected:
            for i in range(n):
                _union(parent, i, cur[i])

        l = 0
        idx[0] = 0
        while l >= 0:
            if l == depth:
                hit = PyDict_GetItem(lookup, PyBytes_FromStringAndSize(<char*> (cur + l * n), n))
                if hit != NULL:
                    cand = <object> hit
                    cand_len = len(cand)
                    if not connected:
                        count += cand_len
                    elif _single_block(parent + l * n, n):
                        count += cand_len
                    else:
                        for item in cand:
                            ai = <int> item
                            src = parent + l * n
                            for i in range(n):
                                trial[i] = src[i]
                            for i in range(n):
                                _union(trial, i, alpha_flat[ai * n + i])
                            if _single_block(trial, n):
                                count += 1
                l -= 1
                continue
            e = idx[l]
            if e == n_eta:
                l -= 1
                continue
            idx[l] = e + 1
            src = cur + l * n
            child = cur + (l + 1) * n
            for i in range(n):
                child[i] = eta_flat[e * n + src[etat_flat[e * n + i]]]
            src = parent + l * n
            dst = parent + (l + 1) * n
            if connected:
                for i in range(n):
                    dst[i] = src[i]
                _union(dst, pairs[4 * e], pairs[4 * e + 1])
                _union(dst, pairs[4 * e + 2], pairs[4 * e + 3])
            idx[l + 1] = 0
            l += 1
    finally:
        free(block)
        free(pairs)
        free(idx)
    return count
