"""V-valued matrices and V-category structures.

``StructureMatrix.entries[x, x']`` holds the quantale index of a(x, x').
Product carriers are always indexed x-major: pair (x, y) sits at
``x * len(Y) + y``.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .report import CapExceeded, MalformedError, ValidationReport

DEFAULT_CAP = 10**6


@dataclass(frozen=True, eq=False)
class StructureMatrix:
    quantale: object
    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int64)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise MalformedError(f"structure matrix must be square, got shape {e.shape}")
        if e.size and (e.min() < 0 or e.max() >= len(self.quantale)):
            raise MalformedError("structure entry out of quantale range")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def carrier_size(self):
        return self.entries.shape[0]

    def __getitem__(self, key):
        return int(self.entries[key])

    def __eq__(self, other):
        if not isinstance(other, StructureMatrix):
            return NotImplemented
        return self.quantale is other.quantale and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((id(self.quantale), self.entries.tobytes()))

    def key(self):
        return tuple(self.entries.ravel().tolist())

    def __le__(self, other):
        return leq_entrywise(self, other)


def _same_quantale(*structs):
    q = structs[0].quantale
    for s in structs[1:]:
        if s.quantale is not q:
            raise ValueError("structures live over different quantales")
    return q


def discrete(q, n):
    e = np.full((n, n), q.bottom, dtype=np.int64)
    np.fill_diagonal(e, q.unit)
    return StructureMatrix(q, e)


def codiscrete(q, n):
    return StructureMatrix(q, np.full((n, n), q.top, dtype=np.int64))


def leq_entrywise(a, b):
    q = _same_quantale(a, b)
    if a.carrier_size != b.carrier_size:
        raise ValueError("carrier sizes differ")
    return bool(q.leq[a.entries, b.entries].all())


def check_structure(q, a, limit=-1):
    """(R)/(T) report; ``limit`` bounds the witnesses kept per law (-1 keeps all)."""
    if a.quantale is not q:
        raise MalformedError("structure is over a different quantale")
    rep = ValidationReport("V-category structure")
    n = a.carrier_size
    refl = [(x,) for x in range(n) if not q.leq[q.unit, a.entries[x, x]]]
    rep.add("(R)", refl if limit < 0 else refl[:limit])
    rep.add("(T)", kernels.transitivity_violations(a.entries, q.tensor, q.leq, limit))
    return rep


def is_structure(a):
    q = a.quantale
    if not q.leq[q.unit, np.diag(a.entries)].all():
        return False
    return not kernels.transitivity_violations(a.entries, q.tensor, q.leq, limit=1)


def check_vfunctor(f, a, b):
    """True iff a(x, x') <= b(f x, f x') for all x, x'."""
    q = _same_quantale(a, b)
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (a.carrier_size,):
        raise MalformedError("map length does not match source carrier")
    return not kernels.vfunctor_violations(f, a.entries, b.entries, q.leq, limit=1)


def tensor_structure(a, b):
    q = _same_quantale(a, b)
    n, m = a.carrier_size, b.carrier_size
    e = q.tensor[a.entries[:, None, :, None], b.entries[None, :, None, :]]
    return StructureMatrix(q, e.reshape(n * m, n * m))


def meet_structure(a, b):
    """Categorical product structure: entrywise meet on the product carrier."""
    q = _same_quantale(a, b)
    n, m = a.carrier_size, b.carrier_size
    e = q.meet[a.entries[:, None, :, None], b.entries[None, :, None, :]]
    return StructureMatrix(q, e.reshape(n * m, n * m))


def exponential_structure(maps, b):
    """Structure on a list of maps X -> Y: entry (f, g) = meet over x of b(f x, g x).

    An empty X gives the all-top matrix.
    """
    q = b.quantale
    maps = np.asarray(maps, dtype=np.int64)
    k = len(maps)
    maps = maps.reshape(k, -1) if k else np.zeros((0, 0), dtype=np.int64)
    e = np.full((k, k), q.top, dtype=np.int64)
    for col in range(maps.shape[1]):
        e = q.meet[e, b.entries[np.ix_(maps[:, col], maps[:, col])]]
    return StructureMatrix(q, e)


def restrict(a, idx):
    idx = np.asarray(idx, dtype=np.int64)
    return StructureMatrix(a.quantale, a.entries[np.ix_(idx, idx)])


def transport(a, bij):
    """Pull ``a`` back along the carrier map ``bij``: entry (i, j) = a(bij i, bij j)."""
    return restrict(a, bij)


def enumerate_structures(q, n, lower=None, upper=None, cap=DEFAULT_CAP):
    """Yield every (R)/(T) structure on n points between the bounds.

    Entries are filled row-major with candidates in index order, so output is
    lexicographic in the flattened entry tuple.  Transitivity is checked as soon
    as all three entries of a triple are fixed.  ``cap`` bounds the number of
    search nodes; exceeding it raises CapExceeded.
    """
    if n < 1:
        raise ValueError("carrier size must be positive")
    for bound in (lower, upper):
        if bound is not None and (bound.quantale is not q or bound.carrier_size != n):
            raise MalformedError("bound does not match quantale or carrier size")
    m = len(q)
    leq, t = q.leq, q.tensor
    cands = []
    for x, y in product(range(n), repeat=2):
        allowed = [v for v in range(m)
                   if (x != y or leq[q.unit, v])
                   and (lower is None or leq[lower[x, y], v])
                   and (upper is None or leq[v, upper[x, y]])]
        cands.append(allowed)
    e = np.zeros((n, n), dtype=np.int64)
    nodes = 0

    def ok(p):
        x, y = divmod(p, n)
        # triples (x, y, z), (w, x, y), (x, z, y) with all entries at positions <= p
        for z in range(n):
            if x * n + z <= p and y * n + z <= p:
                if not leq[t[e[x, y], e[y, z]], e[x, z]]:
                    return False
            if z * n + x <= p and z * n + y <= p:
                if not leq[t[e[z, x], e[x, y]], e[z, y]]:
                    return False
            if x * n + z <= p and z * n + y <= p:
                if not leq[t[e[x, z], e[z, y]], e[x, y]]:
                    return False
        return True

    def rec(p):
        nonlocal nodes
        if p == n * n:
            yield StructureMatrix(q, e.copy())
            return
        x, y = divmod(p, n)
        for v in cands[p]:
            nodes += 1
            if nodes > cap:
                raise CapExceeded("enumerate_structures", cap)
            e[x, y] = v
            if ok(p):
                yield from rec(p + 1)

    yield from rec(0)


def is_symmetric(a):
    return bool(np.array_equal(a.entries, a.entries.T))
