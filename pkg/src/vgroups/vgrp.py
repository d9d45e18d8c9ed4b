"""V-groups, V-homomorphisms and the automorphism V-group."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .grp import FiniteGroup, automorphism_array, automorphisms, generators, group_homs, is_hom
from .report import CapExceeded, CheckResult, MalformedError, ValidationReport
from .vstruct import (DEFAULT_CAP, StructureMatrix, check_structure, check_vfunctor,
                      codiscrete, discrete, exponential_structure, is_structure)


@dataclass(frozen=True, eq=False)
class VGroup:
    group: FiniteGroup
    structure: StructureMatrix
    name: str = ""

    def __post_init__(self):
        if self.structure.carrier_size != len(self.group):
            raise MalformedError("structure size does not match the group order")

    @property
    def quantale(self):
        return self.structure.quantale

    @property
    def a(self):
        return self.structure.entries

    def __len__(self):
        return len(self.group)

    def __repr__(self):
        return f"VGroup({self.name or self.group.name}, |X|={len(self)})"


@dataclass(frozen=True, eq=False)
class VHom:
    source: VGroup
    target: VGroup
    map: np.ndarray

    def __post_init__(self):
        m = np.array(self.map, dtype=np.int64)
        if m.shape != (len(self.source),) or (m.size and (m.min() < 0 or m.max() >= len(self.target))):
            raise MalformedError("map does not fit source and target")
        m.flags.writeable = False
        object.__setattr__(self, "map", m)

    def __call__(self, x):
        return int(self.map[x])


def discrete_vgroup(group, q):
    return VGroup(group, discrete(q, len(group)), f"({group.name},disc)")


def codiscrete_vgroup(group, q):
    return VGroup(group, codiscrete(q, len(group)), f"({group.name},codisc)")


def addition_violations(group, a, limit=-1):
    q = a.quantale
    return kernels.addition_violations(group.table, a.entries, q.tensor, q.leq, limit)


def check_vgroup(group, a, limit=-1):
    if a.carrier_size != len(group):
        raise MalformedError("structure size does not match the group order")
    rep = check_structure(a.quantale, a, limit)
    rep.subject = "V-group"
    rep.add("addition is a V-functor", addition_violations(group, a, limit))
    return rep


def is_vgroup(group, a):
    return (a.carrier_size == len(group) and is_structure(a)
            and not addition_violations(group, a, limit=1))


def check_vhom(f, A, B):
    if A.quantale is not B.quantale:
        raise ValueError("V-groups over different quantales")
    f = np.asarray(f, dtype=np.int64)
    return is_hom(f, A.group, B.group) and check_vfunctor(f, A.structure, B.structure)


def vhoms(A, B):
    """All V-homomorphisms A -> B, lexicographically ordered."""
    return [f for f in group_homs(A.group, B.group) if check_vfunctor(f, A.structure, B.structure)]


def is_idempotent_structure(A):
    t = A.quantale.tensor
    return bool(np.array_equal(t[A.a, A.a], A.a))


def is_symmetric(A):
    return bool(np.array_equal(A.a, A.a.T))


@dataclass(frozen=True, eq=False)
class VAut:
    """The automorphism V-group together with the permutation behind each element."""
    vgroup: VGroup
    maps: np.ndarray

    def index(self, perm):
        hits = np.flatnonzero((self.maps == np.asarray(perm)).all(axis=1))
        return int(hits[0]) if len(hits) else None

    def __len__(self):
        return len(self.maps)


def _chunks(k, n):
    step = max(1, (1 << 22) // max(1, n * n))
    for lo in range(0, k, step):
        yield slice(lo, lo + step)


def vautomorphisms(A, allowed=None):
    """Carrier of VAut(A): group automorphisms f with f and its inverse V-functors.

    ``allowed`` restricts generator images as in ``group_homs``.  When a is left
    invariant, a(f x, f x') = a(0, f(-x + x')) and only the row of 0 is compared.
    """
    n, a, leq = len(A), A.a, A.quantale.leq
    maps = automorphism_array(A.group, allowed)
    inv = np.argsort(maps, axis=1)
    t = A.group.table
    if (a[t[:, :, None], t[:, None, :]] == a[None]).all():
        p = a[A.group.identity]
        keep = leq[p[None], p[maps]].all(axis=1) & leq[p[None], p[inv]].all(axis=1)
    else:
        keep = np.zeros(len(maps), dtype=bool)
        for sl in _chunks(len(maps), n):
            m, r = maps[sl], inv[sl]
            fwd = leq[a[None], a[m[:, :, None], m[:, None, :]]].all(axis=(1, 2))
            back = leq[a[None], a[r[:, :, None], r[:, None, :]]].all(axis=(1, 2))
            keep[sl] = fwd & back
    return maps[keep]


def vaut(A):
    """Automorphisms f of A with f and its inverse V-functors, composed as (f.g)(x) = f(g(x)).

    The structure is c(f, g) = meet over x of a(f x, g x).
    """
    maps = vautomorphisms(A)
    # an automorphism is determined by its generator images, encoded base |A|
    gens = generators(A.group)
    weights = len(A) ** np.arange(len(gens), dtype=np.int64)
    codes = maps[:, gens] @ weights
    order = np.argsort(codes)
    k = len(maps)
    composed = maps[np.arange(k)[:, None, None], maps[None, :, gens]]   # (f.g) on generators
    table = order[np.searchsorted(codes[order], composed @ weights)]
    labels = ["[" + " ".join(A.group.labels[v] for v in p) + "]" for p in maps]
    grp = FiniteGroup(table, labels, f"VAut({A.group.name})")
    return VAut(VGroup(grp, exponential_structure(maps, A.structure), f"VAut{A.name}"), maps)


def check_evaluation_vfunctor(A, aut=None):
    """ev(x, f) = f(x) from X (x) VAut(X) to X is a V-functor.

    Without ``aut`` the reduced form is checked, which needs no composition table:
    every f is a V-isomorphism, so a(f x, g x') = a(x, h x') and c(f, g) = c(1, h)
    with h = f^-1 g, and the condition becomes c(1, h) (x) a(x, x') <= a(x, h x').
    Terms with c(1, h) = bottom hold trivially, so only h with a(x, h x) above
    bottom on the generators are enumerated; a constant-top structure always passes.
    """
    if aut is None:
        q, a = A.quantale, A.a
        if (a == q.top).all():
            return True
        if len(A) ** len(generators(A.group)) <= 10**5:
            return check_evaluation_reduced(A, vautomorphisms(A))
        maps = vautomorphisms(A, lambda x: np.flatnonzero(a[x] != q.bottom).tolist())
        return check_evaluation_reduced(A, maps)
    q, a = A.quantale, A.a
    c = aut.vgroup.a
    maps = aut.maps
    lhs = q.tensor[a[:, None, :, None], c[None, :, None, :]]          # (x, f, x', g)
    rhs = a[maps.T[:, :, None, None], maps.T[None, None, :, :]]       # a(f x, g x')
    return bool(q.leq[lhs, rhs].all())


def check_evaluation_reduced(A, maps):
    q, a = A.quantale, A.a
    n = len(A)
    maps = np.asarray(maps, dtype=np.int64).reshape(-1, n)
    rows = np.arange(n)
    for sl in _chunks(len(maps), n):
        m = maps[sl]
        c1 = np.full(len(m), q.top, dtype=np.int64)   # c(1, h) = meet over x of a(x, h x)
        for x in range(n):
            c1 = q.meet[c1, a[x, m[:, x]]]
        lhs = q.tensor[c1[:, None, None], a[None]]     # (h, x, x')
        rhs = a[rows[None, :, None], m[:, None, :]]    # a(x, h x')
        if not q.leq[lhs, rhs].all():
            return False
    return True


def shift_invariance_check(A):
    """a(x', x'') = a(x'+x, x''+x) = a(x+x', x+x'') for all x, x', x''."""
    t, a = A.group.table, A.a
    right = a[t.T[:, :, None], t.T[:, None, :]]  # [x, x', x''] -> a(x'+x, x''+x)
    left = a[t[:, :, None], t[:, None, :]]       # [x, x', x''] -> a(x+x', x+x'')
    base = np.broadcast_to(a[None, :, :], right.shape)
    witnesses = [("right", *map(int, w)) for w in np.argwhere(right != base)]
    witnesses += [("left", *map(int, w)) for w in np.argwhere(left != base)]
    return CheckResult("shift invariance", not witnesses, witnesses)


def vgroup_structures(group, q, lower=None, upper=None, cap=DEFAULT_CAP):
    """Every V-group structure on ``group`` between the optional bounds, sorted.

    A V-group structure is determined by p(z) = a(0, z) through
    a(x, x') = p(-x + x'), so the candidates are all p with kappa <= p(0);
    each candidate is checked in full with ``is_vgroup``.
    """
    n, m = len(group), len(q)
    e0, inv, t = group.identity, group.inverse, group.table
    diff = t[inv[:, None], np.arange(n)[None, :]]  # -x + x'
    choices = []
    for z in range(n):
        vals = [v for v in range(m) if z != e0 or q.leq[q.unit, v]]
        choices.append(vals)
    total = 1
    for c in choices:
        total *= len(c)
    if total > cap:
        raise CapExceeded("vgroup_structures", cap)
    cands = np.array(list(product(*choices)), dtype=np.int64).reshape(total, n)[:, diff]
    keep = np.ones(total, dtype=bool)
    if lower is not None:
        keep &= q.leq[lower.entries[None], cands].all(axis=(1, 2))
    if upper is not None:
        keep &= q.leq[cands, upper.entries[None]].all(axis=(1, 2))
    out = []
    for e in cands[keep]:
        a = StructureMatrix(q, e)
        if is_vgroup(group, a):
            out.append(a)
    out.sort(key=StructureMatrix.key)
    return out


def all_vgroups(q, max_order=4, groups=None):
    """Every V-group over q on the small groups, by group then structure order."""
    from .grp import small_groups
    out = []
    for g in groups if groups is not None else small_groups(max_order):
        for i, s in enumerate(vgroup_structures(g, q)):
            out.append(VGroup(g, s, f"({g.name},{q.name}#{i})"))
    return out
