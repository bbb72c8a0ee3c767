"""Numpy fallback for the compiled kernels; same signatures and results."""

import numpy as np


def _first(mask):
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(v) for v in hits[0])


def first_nonassoc(op):
    left = op[op[:, :, None], np.arange(op.shape[0])[None, None, :]]
    right = op[np.arange(op.shape[0])[:, None, None], op[None, :, :]]
    return _first(left != right)


def first_noncommut(op):
    return _first(np.triu(op != op.T, k=1))


def first_nondistrib(add, mul):
    n = add.shape[0]
    xs = np.arange(n)[:, None, None]
    left = mul[xs, add[None, :, :]]
    right = add[mul[:, :, None], mul[:, None, :]]
    return _first(left != right)


def meet_from_leq(leq):
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    out = np.empty((n, n), dtype=np.intc)
    for x in range(n):
        for y in range(x, n):
            lower = np.flatnonzero(leq[:, x] & leq[:, y])
            if lower.size == 0:
                return None
            # the meet is the common lower bound above all the others
            top = [z for z in lower if leq[lower, z].all()]
            if not top:
                return None
            out[x, y] = out[y, x] = top[0]
    return out


def min_relabeled(table, perms, inverses):
    rel = inverses[np.arange(perms.shape[0])[:, None, None],
                   table[perms[:, :, None], perms[:, None, :]]]
    flat = rel.reshape(rel.shape[0], -1)
    order = np.lexsort(flat.T[::-1])
    b = int(order[0])
    return b, np.ascontiguousarray(rel[b], dtype=np.intc)
