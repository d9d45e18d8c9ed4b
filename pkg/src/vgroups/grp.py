"""Finite groups as Cayley tables, written additively (not necessarily abelian).

Conventions used everywhere downstream:

* an action ``phi`` of Y on X is a table ``maps[y, x] = phi_y(x)`` with
  ``phi_y o phi_y' = phi_(y+y')`` (left action);
* the semidirect product X x|_phi Y has carrier index ``x * |Y| + y`` and
  ``(x, y) + (x', y') = (x + phi_y(x'), y + y')``.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .report import MalformedError, ValidationReport


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    labels: tuple = None
    name: str = ""

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise MalformedError(f"group table must be square and non-empty, got {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise MalformedError("group table entry out of range")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)
        labels = tuple(str(v) for v in self.labels) if self.labels is not None \
            else tuple(str(i) for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise MalformedError("group labels must be distinct and match the table size")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.table.shape[0]

    @cached_property
    def identity(self):
        n = len(self)
        r = np.arange(n)
        for e in range(n):
            if np.array_equal(self.table[e], r) and np.array_equal(self.table[:, e], r):
                return e
        return None

    @cached_property
    def inverse(self):
        e = self.identity
        hit = (self.table == e) & (self.table.T == e)
        return np.where(hit.any(axis=1), hit.argmax(axis=1), -1).astype(np.int64)

    def add(self, x, y):
        return int(self.table[x, y])

    def neg(self, x):
        return int(self.inverse[x])

    def index(self, label):
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise MalformedError(f"group {self.name or '?'}: unknown element {label!r}") from None

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def order_of(self, x):
        k, y = 1, x
        while y != self.identity:
            y = self.table[y, x]
            k += 1
        return k

    def __repr__(self):
        return f"FiniteGroup({self.name or len(self)})"


def validate_group(g):
    rep = ValidationReport(f"group {g.name}")
    t, n = g.table, len(g)
    bad = np.argwhere(t[t, :] != t[:, t])  # (x+y)+z vs x+(y+z): index [x, y, z]
    rep.add("associativity", [tuple(int(v) for v in w) for w in bad])
    if g.identity is None:
        rep.add("identity", [()])
    else:
        rep.add("inverse", [(x,) for x in range(n) if g.inverse[x] < 0])
    return rep


# constructions

def cyclic(n):
    r = np.arange(n)
    return FiniteGroup((r[:, None] + r[None, :]) % n, name=f"Z{n}")


def trivial():
    return cyclic(1)


def direct_product(g, h):
    n, m = len(g), len(h)
    t = g.table[:, None, :, None] * m + h.table[None, :, None, :]
    labels = [f"({a},{b})" for a in g.labels for b in h.labels]
    return FiniteGroup(t.reshape(n * m, n * m), labels, f"{g.name}x{h.name}")


def klein():
    g = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(g.table, g.labels, "Z2xZ2")


def perm_group(perms, name=""):
    """Group of the given permutations under composition (p.q)(i) = p(q(i))."""
    perms = [tuple(int(v) for v in p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    t = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            c = tuple(p[k] for k in q)
            if c not in pos:
                raise ValueError("permutations are not closed under composition")
            t[i, j] = pos[c]
    return FiniteGroup(t, name=name)


def symmetric(k):
    from itertools import permutations
    return perm_group(sorted(permutations(range(k))), name=f"S{k}")


def small_groups(max_order=4):
    """Representatives of every group of order <= max_order (max_order <= 7)."""
    out = [trivial()]
    for n in range(2, max_order + 1):
        out.append(cyclic(n))
        if n == 4:
            out.append(klein())
        if n == 6:
            out.append(symmetric(3))
    return out


# homomorphisms

def is_hom(f, g, h):
    f = np.asarray(f)
    return bool(np.array_equal(f[g.table], h.table[f[:, None], f[None, :]]))


def generators(g):
    """A small generating list, chosen greedily in index order."""
    gens, span = [], {g.identity}
    for x in range(len(g)):
        if x not in span:
            gens.append(x)
            span = set(generated_subgroup(g, gens))
    return gens


def generated_subgroup(g, elems):
    span = {g.identity}
    frontier = [g.identity]
    elems = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in elems:
                c = int(g.table[a, b])
                if c not in span:
                    span.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(span)


def group_homs(g, h, allowed=None):
    """All homomorphisms g -> h as int arrays, sorted lexicographically.

    Images of a generating set are enumerated; each choice is propagated along
    right multiplication by generators and kept only if it is a homomorphism.
    ``allowed(x)``, when given, lists the admissible images of generator x.
    """
    gens = generators(g)
    out = []
    pools = [allowed(x) if allowed else range(len(h)) for x in gens]
    for imgs in product(*pools):
        f = np.full(len(g), -1, dtype=np.int64)
        f[g.identity] = h.identity
        frontier, clash = [g.identity], False
        while frontier and not clash:
            nxt = []
            for a in frontier:
                for gen, img in zip(gens, imgs):
                    c, v = g.table[a, gen], h.table[f[a], img]
                    if f[c] < 0:
                        f[c] = v
                        nxt.append(c)
                    elif f[c] != v:
                        clash = True
                        break
                if clash:
                    break
            frontier = nxt
        if not clash and is_hom(f, g, h):
            out.append(f)
    out.sort(key=lambda a: tuple(a.tolist()))
    return out


_AUTOMORPHISMS = {}


def automorphism_array(g, allowed=None):
    """Automorphisms of g as rows of a read-only array, sorted.

    The unrestricted array is cached per Cayley table.
    """
    n = len(g)
    key = g.table.tobytes() if allowed is None else None
    if key in _AUTOMORPHISMS:
        return _AUTOMORPHISMS[key]
    out = [f for f in group_homs(g, g, allowed) if len(set(f.tolist())) == n]
    arr = np.array(out, dtype=np.int64).reshape(len(out), n)
    arr.flags.writeable = False
    if key is not None:
        _AUTOMORPHISMS[key] = arr
    return arr


def automorphisms(g, allowed=None):
    return list(automorphism_array(g, allowed))


def subgroups(g):
    """Every subgroup as a sorted tuple of element indices, in sorted order."""
    found = {(g.identity,)}
    frontier = [(g.identity,)]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(len(g)):
                if x not in s:
                    t = tuple(generated_subgroup(g, list(s) + [x]))
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), s))


def subgroup(g, elems):
    """The subgroup on ``elems`` (sorted indices) re-indexed densely, plus its embedding."""
    elems = np.asarray(sorted(elems), dtype=np.int64)
    pos = {int(e): i for i, e in enumerate(elems)}
    try:
        t = [[pos[int(g.table[a, b])] for b in elems] for a in elems]
    except KeyError:
        raise ValueError("elements are not closed under the group operation") from None
    return FiniteGroup(t, [g.labels[e] for e in elems]), elems


# actions

@dataclass(frozen=True, eq=False)
class GroupAction:
    actor: FiniteGroup
    target: FiniteGroup
    maps: np.ndarray

    def __post_init__(self):
        m = np.array(self.maps, dtype=np.int64)
        if m.shape != (len(self.actor), len(self.target)):
            raise MalformedError("action table must be |actor| x |target|")
        if m.size and (m.min() < 0 or m.max() >= len(self.target)):
            raise MalformedError("action entry out of range")
        m.flags.writeable = False
        object.__setattr__(self, "maps", m)

    def __call__(self, y, x):
        return int(self.maps[y, x])

    def is_trivial(self):
        return bool((self.maps == np.arange(len(self.target))).all())


def trivial_action(y, x):
    return GroupAction(y, x, np.tile(np.arange(len(x)), (len(y), 1)))


def validate_action(phi):
    rep = ValidationReport("group action")
    Y, X, m = phi.actor, phi.target, phi.maps
    rep.add("automorphism", [(y,) for y in range(len(Y))
                             if len(set(m[y].tolist())) != len(X) or not is_hom(m[y], X, X)])
    rep.add("identity acts trivially",
            [(x,) for x in range(len(X)) if m[Y.identity, x] != x])
    comp = m[:, m]  # comp[y, y', x] = phi_y(phi_y'(x))
    rep.add("composition", [tuple(int(v) for v in w)
                            for w in np.argwhere(comp != m[Y.table][:, :, :])])
    return rep


def actions(y, x):
    """Every action of y on x, in the order of group_homs(y, Aut(x))."""
    auts = automorphisms(x)
    aut_group = perm_group(auts)
    return [GroupAction(y, x, np.array([auts[i] for i in f])) for f in group_homs(y, aut_group)]


def semidirect_group(x, y, phi):
    if phi.actor is not y or phi.target is not x:
        if not (np.array_equal(phi.actor.table, y.table) and np.array_equal(phi.target.table, x.table)):
            raise ValueError("action does not match the given groups")
    if not validate_action(phi).ok:
        raise ValueError("invalid group action")
    n, m = len(x), len(y)
    xs, ys = np.divmod(np.arange(n * m), m)
    first = x.table[xs[:, None], phi.maps[ys[:, None], xs[None, :]]]
    second = y.table[ys[:, None], ys[None, :]]
    labels = [f"({a},{b})" for a in x.labels for b in y.labels]
    return FiniteGroup(first * m + second, labels, f"{x.name}x|{y.name}")


def action_from_point(a, b, f, s):
    """Kernel, embedding and conjugation action of a split epi f: a -> b with section s.

    Returns ``(kernel_group, k, action, canonical)`` where ``canonical[x*|b| + beta]``
    is ``k(x) + s(beta)``; the canonical map is checked to be an isomorphism
    from the semidirect product onto ``a``.
    """
    f = np.asarray(f, dtype=np.int64)
    s = np.asarray(s, dtype=np.int64)
    if not np.array_equal(f[s], np.arange(len(b))):
        raise ValueError("not a point: f o s is not the identity")
    ker, k = subgroup(a, np.flatnonzero(f == b.identity))
    pos = {int(e): i for i, e in enumerate(k)}
    maps = np.empty((len(b), len(ker)), dtype=np.int64)
    for beta in range(len(b)):
        sb = s[beta]
        for xi, kx in enumerate(k):
            c = a.table[a.table[sb, kx], a.inverse[sb]]
            if int(c) not in pos:
                raise ValueError("conjugate escapes the kernel")
            maps[beta, xi] = pos[int(c)]
    phi = GroupAction(b, ker, maps)
    canonical = a.table[k[:, None], s[None, :]].reshape(-1)
    sd = semidirect_group(ker, b, phi)
    if len(set(canonical.tolist())) != len(a) or not is_hom(canonical, sd, a):
        raise ValueError("canonical map is not an isomorphism")
    return ker, k, phi, canonical
