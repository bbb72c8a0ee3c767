# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels. Mirrors ``_pykernels`` function for function."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def first_nonassoc(const int[:, ::1] op):
    cdef Py_ssize_t n = op.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if op[op[x, y], z] != op[x, op[y, z]]:
                    return (x, y, z)
    return None


def first_noncommut(const int[:, ::1] op):
    cdef Py_ssize_t n = op.shape[0], x, y
    for x in range(n):
        for y in range(x + 1, n):
            if op[x, y] != op[y, x]:
                return (x, y)
    return None


def first_nondistrib(const int[:, ::1] add, const int[:, ::1] mul):
    cdef Py_ssize_t n = add.shape[0], x, y, z
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
                    return (x, y, z)
    return None


def meet_from_leq(const unsigned char[:, ::1] leq):
    """Greatest lower bounds from a partial order matrix, or None if one is missing."""
    cdef Py_ssize_t n = leq.shape[0], x, y, z, best
    out = np.empty((n, n), dtype=np.intc)
    cdef int[:, ::1] m = out
    for x in range(n):
        for y in range(x, n):
            best = -1
            for z in range(n):
                if leq[z, x] and leq[z, y]:
                    if best < 0 or leq[best, z]:
                        best = z
            if best < 0:
                return None
            # best must dominate every common lower bound
            for z in range(n):
                if leq[z, x] and leq[z, y] and not leq[z, best]:
                    return None
            m[x, y] = <int>best
            m[y, x] = <int>best
    return out


def min_relabeled(const int[:, ::1] table, const int[:, ::1] perms,
                  const int[:, ::1] inverses):
    """Index of the relabeling giving the lexicographically least table, and that table.

    Row ``b`` of ``perms`` maps new labels to old; ``inverses`` maps old to new.
    """
    cdef Py_ssize_t nb = perms.shape[0], n = table.shape[0]
    cdef Py_ssize_t b, a, c, best_b = 0
    cdef int v
    cdef bint decided
    best = np.empty((n, n), dtype=np.intc)
    cdef int[:, ::1] bt = best
    for a in range(n):
        for c in range(n):
            bt[a, c] = inverses[0, table[perms[0, a], perms[0, c]]]
    for b in range(1, nb):
        decided = False
        for a in range(n):
            for c in range(n):
                v = inverses[b, table[perms[b, a], perms[b, c]]]
                if v < bt[a, c]:
                    decided = True
                    break
                if v > bt[a, c]:
                    break
            else:
                continue
            break
        if decided:
            best_b = b
            for a in range(n):
                for c in range(n):
                    bt[a, c] = inverses[b, table[perms[b, a], perms[b, c]]]
    return best_b, best
