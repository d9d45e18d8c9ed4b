"""Points (split epimorphisms with a chosen section) in VGrp and the class S.

A point lies in S when, read through the canonical bijection
X x B -> A, (x, b) -> k(x) + s(b), its total structure is exactly the tensor of
the kernel structure and the base structure.
"""

from dataclasses import dataclass

import numpy as np

from .grp import (GroupAction, action_from_point, actions, direct_product, is_hom,
                  semidirect_group, subgroup, subgroups)
from .quantale import is_cartesian, is_integral
from .report import CapExceeded, CheckResult, NotCartesian, TheoremViolation
from .vgrp import (VGroup, check_vgroup, check_vhom, is_idempotent_structure, vaut,
                   vgroup_structures, vhoms)
from .vstruct import (DEFAULT_CAP, check_vfunctor, meet_structure, restrict,
                      tensor_structure, transport)


class NotAPoint(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SplitPoint:
    total: VGroup
    base: VGroup
    f: np.ndarray
    s: np.ndarray
    kernel: VGroup
    k: np.ndarray
    action: GroupAction
    canonical: np.ndarray

    @property
    def quantale(self):
        return self.total.quantale


def make_point(A, B, f, s):
    f = np.asarray(f, dtype=np.int64)
    s = np.asarray(s, dtype=np.int64)
    if not np.array_equal(f[s], np.arange(len(B))):
        raise NotAPoint("f o s is not the identity")
    if not check_vhom(f, A, B):
        raise NotAPoint("f is not a V-homomorphism")
    if not check_vhom(s, B, A):
        raise NotAPoint("s is not a V-homomorphism")
    ker, k, phi, canonical = action_from_point(A.group, B.group, f, s)
    kernel = VGroup(ker, restrict(A.structure, k), f"ker({A.name})")
    return SplitPoint(A, B, f, s, kernel, k, phi, canonical)


def in_class_S(p):
    moved = transport(p.total.structure, p.canonical)
    return moved == tensor_structure(p.kernel.structure, p.base.structure)


# points built from actions

def _semidirect_maps(X, Y):
    n, m = len(X), len(Y)
    inj = np.arange(n) * m + Y.group.identity          # <1,0>
    proj = np.arange(n * m) % m                        # pi_2
    sec = X.group.identity * m + np.arange(m)          # <0,1>
    return inj, proj, sec


def condition_i(X, Y, phi):
    """Is <1,0>, pi_2, <0,1> with the tensor structure a split extension in VGrp?

    Returns ``(result, total)`` where ``total`` is the candidate V-group on the
    semidirect product (possibly invalid).
    """
    g = semidirect_group(X.group, Y.group, phi)
    c = tensor_structure(X.structure, Y.structure)
    total = VGroup(g, c, f"{X.name}x|{Y.name}")
    inj, proj, sec = _semidirect_maps(X, Y)
    witness = None
    rep = check_vgroup(g, c, limit=1)
    if not rep.ok:
        v = rep.violations[0]
        witness = (v.law, *v.witness)
    elif not check_vfunctor(inj, X.structure, c):
        witness = ("<1,0> is a V-functor",)
    elif not check_vfunctor(proj, c, Y.structure):
        witness = ("pi_2 is a V-functor",)
    elif not check_vfunctor(sec, Y.structure, c):
        witness = ("<0,1> is a V-functor",)
    elif restrict(c, inj) != X.structure:
        witness = ("kernel carries the restricted structure",)
    res = CheckResult("(i) tensor structure gives a split extension", witness is None,
                      [] if witness is None else [witness])
    return res, total


def action_to_point(X, Y, phi):
    """(point, result): the S-point for ``phi`` or None with the failing inequality."""
    res, total = condition_i(X, Y, phi)
    if not res.holds:
        return None, res
    inj, proj, sec = _semidirect_maps(X, Y)
    return make_point(total, Y, proj, sec), res


def phibar_witness(X, Y, phi):
    q = X.quantale
    a, b, m = X.a, Y.a, phi.maps
    lhs = q.tensor[a[:, None, :, None], b[None, :, None, :]]               # [x, y, x', y']
    moved = a[m.T[:, :, None, None], m.T[None, None, :, :]]               # a(phi_y x, phi_y' x')
    rhs = q.tensor[moved, np.broadcast_to(b[None, :, None, :], moved.shape)]
    bad = np.argwhere(~q.leq[lhs, rhs])
    return None if not len(bad) else tuple(int(v) for v in bad[0])


def check_phibar(X, Y, phi):
    """(x, y) -> (phi_y x, y) is a V-functor on the tensor structure."""
    return phibar_witness(X, Y, phi) is None


def corestriction(X, phi, aut=None):
    """Index in VAut(X) of each phi_y, or None if some phi_y is not a V-automorphism."""
    aut = aut or vaut(X)
    idx = [aut.index(phi.maps[y]) for y in range(len(phi.actor))]
    return None if any(i is None for i in idx) else np.array(idx, dtype=np.int64)


def corestricts_to_vaut(X, Y, phi, aut=None):
    aut = aut or vaut(X)
    idx = corestriction(X, phi, aut)
    return idx is not None and check_vfunctor(idx, Y.structure, aut.vgroup.structure)


def check_equivalence_prop(X, Y, phi, aut=None):
    """Evaluate (i), (ii), (iii); they must agree, (iii) only when Y is idempotent."""
    i = condition_i(X, Y, phi)[0].holds
    ii = check_phibar(X, Y, phi)
    iii = corestricts_to_vaut(X, Y, phi, aut)
    idem = is_idempotent_structure(Y)
    witnesses = []
    if i != ii:
        witnesses.append(("(i) vs (ii)", i, ii))
    if idem and ii != iii:
        witnesses.append(("(ii) vs (iii)", ii, iii))
    return CheckResult("(i), (ii) and (iii) agree", not witnesses, witnesses,
                       data={"i": i, "ii": ii, "iii": iii, "y_idempotent": idem})


# limits of points

@dataclass(frozen=True, eq=False)
class Pullback:
    point: SplitPoint
    gbar: np.ndarray          # P -> A
    kernel_iso: np.ndarray    # kernel of point -> kernel of the original point


def _sub_vgroup(G, elems, struct, name):
    grp, emb = subgroup(G, elems)
    return VGroup(grp, restrict(struct, emb), name), emb


def pullback_point(p, g):
    """Pull p back along the V-homomorphism g: C -> base(p)."""
    C, A = g.source, p.total
    na = len(A)
    gm = g.map
    pairs = [(c, al) for c in range(len(C)) for al in range(na) if gm[c] == p.f[al]]
    prod_grp = direct_product(C.group, A.group)
    prod_struct = meet_structure(C.structure, A.structure)
    elems = [c * na + al for c, al in pairs]
    P, emb = _sub_vgroup(prod_grp, elems, prod_struct, f"{C.name}x_B{A.name}")
    cs, als = np.divmod(emb, na)
    pos = {int(e): i for i, e in enumerate(emb)}
    fbar = cs
    sbar = np.array([pos[c * na + int(p.s[gm[c]])] for c in range(len(C))], dtype=np.int64)
    point = make_point(P, C, fbar, sbar)
    kpos = {int(e): i for i, e in enumerate(p.k)}
    kernel_iso = np.array([kpos[int(als[e])] for e in point.k], dtype=np.int64)
    return Pullback(point, als, kernel_iso)


def product_point(p1, p2):
    """Product of two points in the category of points (meet structures)."""
    A = VGroup(direct_product(p1.total.group, p2.total.group),
               meet_structure(p1.total.structure, p2.total.structure))
    B = VGroup(direct_product(p1.base.group, p2.base.group),
               meet_structure(p1.base.structure, p2.base.structure))
    nb2, na2 = len(p2.base), len(p2.total)
    f = (p1.f[:, None] * nb2 + p2.f[None, :]).reshape(-1)
    s = (p1.s[:, None] * na2 + p2.s[None, :]).reshape(-1)
    return make_point(A, B, f, s)


def is_strong_point(p, g, cap=DEFAULT_CAP, pullback=None):
    """gbar and s jointly extremal-epic in the pullback of p along g.

    Searches every subobject (Z, d) of the total V-group through which both
    gbar and s factor; a proper one is a witness against strength.  A
    precomputed ``pullback_point(p, g)`` may be passed in.
    """
    pb = pullback if pullback is not None else pullback_point(p, g)
    A = p.total
    q = A.quantale
    must = set(pb.gbar.tolist()) | set(p.s.tolist())
    searched = 0
    witnesses = []
    for Z in subgroups(A.group):
        if not must.issubset(Z):
            continue
        zg, emb = subgroup(A.group, Z)
        pos = {int(e): i for i, e in enumerate(emb)}
        upper = restrict(A.structure, emb)
        gz = np.array([pos[int(v)] for v in pb.gbar], dtype=np.int64)
        sz = np.array([pos[int(v)] for v in p.s], dtype=np.int64)
        for d in vgroup_structures(zg, q, upper=upper, cap=cap):
            searched += 1
            if searched > cap:
                raise CapExceeded("is_strong_point", cap)
            if not (check_vfunctor(gz, pb.point.total.structure, d)
                    and check_vfunctor(sz, p.base.structure, d)):
                continue
            if len(Z) != len(A) or d != A.structure:
                witnesses.append((list(Z), d.key()))
    return CheckResult("point is strong", not witnesses, witnesses,
                       counts={"subobjects_searched": searched})


# structures compatible with a split extension

def compatible_structures(X, Y, phi, cap=DEFAULT_CAP):
    """All V-group structures c on the semidirect product making the display a split extension.

    Every such c must dominate the tensor structure when V is integral; a
    counterexample raises TheoremViolation.
    """
    g = semidirect_group(X.group, Y.group, phi)
    inj, proj, sec = _semidirect_maps(X, Y)
    out = []
    for c in vgroup_structures(g, X.quantale, cap=cap):
        if (check_vfunctor(inj, X.structure, c) and check_vfunctor(proj, c, Y.structure)
                and check_vfunctor(sec, Y.structure, c) and restrict(c, inj) == X.structure):
            out.append(c)
    if is_integral(X.quantale):
        prod = tensor_structure(X.structure, Y.structure)
        for c in out:
            if not prod <= c:
                raise TheoremViolation("compatible structures dominate the product", c.key())
    return out


# action representability

def points_isomorphic(p1, p2):
    """Isomorphic as split extensions fixing kernel and base.

    The only candidate is k1(x) + s1(b) -> k2(x) + s2(b); it must be a group
    isomorphism and a V-isomorphism.
    """
    if len(p1.total) != len(p2.total) or len(p1.kernel) != len(p2.kernel):
        return False
    g = np.empty(len(p1.total), dtype=np.int64)
    g[p1.canonical] = p2.canonical
    a1, a2 = p1.total.a, p2.total.a
    return is_hom(g, p1.total.group, p2.total.group) and bool(np.array_equal(a1, a2[np.ix_(g, g)]))


def iso_classes_S(Y, X):
    """Representatives of the S-points with base Y and kernel X, one per iso class."""
    reps = []
    for phi in actions(Y.group, X.group):
        p, _ = action_to_point(X, Y, phi)
        if p is None or not in_class_S(p):
            continue
        if not any(points_isomorphic(p, r) for r in reps):
            reps.append(p)
    reps.sort(key=lambda r: tuple(r.action.maps.ravel().tolist()))
    return reps


def _kernel_to_x(p, X):
    """For points built over X: the kernel is X itself in index order."""
    if not np.array_equal(p.kernel.group.table, X.group.table):
        raise ValueError("kernel is not presented as X")
    return np.arange(len(X))


def representability_check(Y, X, aut=None):
    """Iso classes of S-points (Y, X) versus V-homomorphisms Y -> VAut(X)."""
    q = X.quantale
    if not is_cartesian(q):
        raise NotCartesian(f"representability needs a cartesian quantale, got {q.name}")
    aut = aut or vaut(X)
    classes = iso_classes_S(Y, X)
    homs = [tuple(f.tolist()) for f in vhoms(Y, aut.vgroup)]
    image = []
    witnesses = []
    for p in classes:
        _kernel_to_x(p, X)
        idx = corestriction(X, p.action, aut)
        key = None if idx is None else tuple(idx.tolist())
        if key not in homs:
            witnesses.append(("class does not corestrict to a V-hom", p.action.maps.tolist()))
        image.append(key)
    if len(set(image)) != len(image):
        witnesses.append(("not injective",))
    missing = [h for h in homs if h not in image]
    if missing:
        witnesses.append(("not surjective", [list(h) for h in missing]))
    return CheckResult(
        "S-split extensions with kernel X correspond to V-homs into VAut(X)",
        not witnesses, witnesses,
        counts={"classes": len(classes), "homs": len(homs)},
        data={"matching": [[p.action.maps.tolist(), list(h) if h else None]
                           for p, h in zip(classes, image)]},
    )


def representability_naturality(g, X, aut=None):
    """Pulling back along g: Y' -> Y then corestricting equals corestricting then precomposing."""
    Y = g.target
    aut = aut or vaut(X)
    witnesses = []
    for p in iso_classes_S(Y, X):
        pb = pullback_point(p, g)
        if not in_class_S(pb.point):
            witnesses.append(("pullback left S", p.action.maps.tolist()))
            continue
        # action on X through kernel_iso, which maps the pullback kernel onto X
        iso = pb.kernel_iso
        inv = np.argsort(iso)
        moved = iso[pb.point.action.maps[:, inv]]
        idx_pb = [aut.index(m) for m in moved]
        idx_p = corestriction(X, p.action, aut)
        expect = idx_p[g.map].tolist()
        if idx_pb != expect:
            witnesses.append(("square does not commute", p.action.maps.tolist()))
    return CheckResult("representability is natural in the base", not witnesses, witnesses)


__all__ = [
    "NotAPoint", "SplitPoint", "make_point", "in_class_S", "condition_i", "action_to_point",
    "check_phibar", "phibar_witness", "corestriction", "corestricts_to_vaut",
    "check_equivalence_prop", "Pullback", "pullback_point", "product_point",
    "is_strong_point", "compatible_structures", "points_isomorphic", "iso_classes_S",
    "representability_check", "representability_naturality",
]
