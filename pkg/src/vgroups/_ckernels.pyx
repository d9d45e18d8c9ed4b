# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled law-checking loops.

All tables are C-contiguous int64 arrays; ``leq`` is a uint8 matrix over
quantale indices.  Every function returns at most ``limit`` witnesses
(``limit < 0`` means no limit), in lexicographic order of the witness tuple.
"""

ctypedef long long idx_t


def transitivity_violations(const idx_t[:, ::1] a, const idx_t[:, ::1] tensor,
                            const unsigned char[:, ::1] leq, Py_ssize_t limit=-1):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t x, y, z
    cdef idx_t axy
    out = []
    if limit == 0:
        return out
    for x in range(n):
        for y in range(n):
            axy = a[x, y]
            for z in range(n):
                if not leq[tensor[axy, a[y, z]], a[x, z]]:
                    out.append((x, y, z))
                    if limit > 0 and len(out) >= limit:
                        return out
    return out


def addition_violations(const idx_t[:, ::1] add, const idx_t[:, ::1] a,
                        const idx_t[:, ::1] tensor, const unsigned char[:, ::1] leq,
                        Py_ssize_t limit=-1):
    """Witnesses (x, x', y, y') with a(x,x') (x) a(y,y') not <= a(x+y, x'+y')."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t x, xp, y, yp
    cdef idx_t axx
    out = []
    if limit == 0:
        return out
    for x in range(n):
        for xp in range(n):
            axx = a[x, xp]
            for y in range(n):
                for yp in range(n):
                    if not leq[tensor[axx, a[y, yp]], a[add[x, y], add[xp, yp]]]:
                        out.append((x, xp, y, yp))
                        if limit > 0 and len(out) >= limit:
                            return out
    return out


def vfunctor_violations(const idx_t[:] f, const idx_t[:, ::1] a, const idx_t[:, ::1] b,
                        const unsigned char[:, ::1] leq, Py_ssize_t limit=-1):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t x, xp
    out = []
    if limit == 0:
        return out
    for x in range(n):
        for xp in range(n):
            if not leq[a[x, xp], b[f[x], f[xp]]]:
                out.append((x, xp))
                if limit > 0 and len(out) >= limit:
                    return out
    return out
