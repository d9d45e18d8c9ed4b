"""Pure numpy versions of the law-checking loops in ``_ckernels.pyx``.

Same signatures and same witness order (lexicographic), so either backend can
serve as the oracle for the other.
"""

import numpy as np


def _take(mask, limit):
    hits = np.argwhere(mask)
    if limit is not None and limit >= 0:
        hits = hits[:limit]
    return [tuple(int(v) for v in row) for row in hits]


def transitivity_violations(a, tensor, leq, limit=-1):
    lhs = tensor[a[:, :, None], a[None, :, :]]  # (x, y, z)
    rhs = a[:, None, :]
    return _take(~leq[lhs, np.broadcast_to(rhs, lhs.shape)].astype(bool), limit)


def addition_violations(add, a, tensor, leq, limit=-1):
    n = a.shape[0]
    lhs = tensor[a[:, :, None, None], a[None, None, :, :]]  # (x, x', y, y')
    x = np.arange(n)
    sx = add[x[:, None, None, None], x[None, None, :, None]]
    sxp = add[x[None, :, None, None], x[None, None, None, :]]
    rhs = a[sx, sxp]
    return _take(~leq[lhs, rhs].astype(bool), limit)


def vfunctor_violations(f, a, b, leq, limit=-1):
    return _take(~leq[a, b[np.ix_(f, f)]].astype(bool), limit)
