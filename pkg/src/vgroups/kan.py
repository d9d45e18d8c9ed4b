"""Enriched functors from a V-group into VGrp, and the right adjoint to precomposition.

A functor over a V-group Y is a V-group (Z, c) with automorphisms psi_y,
psi_y o psi_y' = psi_(y+y'), such that b(y, y') <= meet_z c(psi_y z, psi_y' z).

For h: X -> Y, ``l_h`` precomposes with h.  ``r_h`` builds the right Kan
extension: the V-group W of maps u: Y -> Z with psi_x(u(y)) = u(h(x) + y),
pointwise addition, structure omega(u, v) = meet_y c(u(y), v(y)), and
Y acting by right translation, (psi~_y0 u)(y) = u(y + y0).

By default W is further restricted to the maps u that are V-functors
(Y, b) -> (Z, c).  Without that restriction right translation can break the
enrichment inequality (for instance X trivial, Y = (Z2, codiscrete),
Z = (Z2, discrete), u = identity), so the unrestricted carrier is only
available with ``vfunctor_only=False``.  Every transpose lands in the
restricted carrier, so the adjunction is unaffected.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .grp import FiniteGroup, GroupAction, generated_subgroup, generators, group_homs
from .points import action_to_point, in_class_S, pullback_point
from .quantale import is_cartesian
from .report import CapExceeded, CheckResult, NotCartesian, ValidationReport
from .vgrp import VGroup, VHom, check_vhom, vaut
from .vstruct import StructureMatrix, check_vfunctor, exponential_structure

KAN_CAP = 10**5


class NotInS(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EnrichedFunctor:
    domain: VGroup
    value: VGroup
    assignment: np.ndarray   # assignment[y] is the permutation psi_y of the value's carrier

    def __post_init__(self):
        m = np.array(self.assignment, dtype=np.int64)
        if m.shape != (len(self.domain), len(self.value)):
            raise ValueError("assignment must be |domain| x |value|")
        m.flags.writeable = False
        object.__setattr__(self, "assignment", m)

    def psi(self, y):
        return self.assignment[y]


@dataclass(frozen=True, eq=False)
class NatTransform:
    source: EnrichedFunctor
    target: EnrichedFunctor
    component: np.ndarray

    def key(self):
        return tuple(int(v) for v in self.component)


def _is_vautomorphism(f, Z):
    if len(set(f.tolist())) != len(Z):
        return False
    inv = np.argsort(f)
    return (check_vhom(f, Z, Z) and check_vfunctor(inv, Z.structure, Z.structure))


def validate_functor(F):
    rep = ValidationReport("enriched functor")
    Y, Z, m = F.domain, F.value, F.assignment
    rep.add("psi_y is a V-automorphism",
            [(y,) for y in range(len(Y)) if not _is_vautomorphism(m[y], Z)])
    rep.add("psi_0 is the identity",
            [(z,) for z in range(len(Z)) if m[Y.group.identity, z] != z])
    comp = m[:, m]
    rep.add("psi_y o psi_y' = psi_(y+y')",
            [tuple(int(v) for v in w) for w in np.argwhere(comp != m[Y.group.table])])
    q = Y.quantale
    c = Z.a
    # enrichment: b(y, y') <= c(psi_y z, psi_y' z) for all z
    moved = c[m[:, None, :], m[None, :, :]]          # [y, y', z]
    bad = np.argwhere(~q.leq[np.broadcast_to(Y.a[:, :, None], moved.shape), moved])
    rep.add("enrichment", [tuple(int(v) for v in w) for w in bad])
    return rep


def is_natural(F, G, component):
    """component is a V-hom F.value -> G.value commuting with the assignments."""
    comp = np.asarray(component, dtype=np.int64)
    if not check_vhom(comp, F.value, G.value):
        return False
    return bool(np.array_equal(comp[F.assignment], G.assignment[:, comp]))


def nat_transforms(F, G, cap=KAN_CAP):
    """Every natural transformation F -> G, components sorted lexicographically."""
    # group_homs walks generator images, so that is what the cap bounds
    if len(G.value) ** len(generators(F.value.group)) > cap:
        raise CapExceeded("nat_transforms", cap)
    return [NatTransform(F, G, f) for f in group_homs(F.value.group, G.value.group)
            if is_natural(F, G, f)]


# points <-> functors

def point_to_functor(p):
    if not in_class_S(p):
        raise NotInS("point is not in S")
    return EnrichedFunctor(p.base, p.kernel, p.action.maps)


def functor_to_point(F):
    if not is_cartesian(F.domain.quantale):
        raise NotCartesian("functor_to_point needs a cartesian quantale")
    phi = GroupAction(F.domain.group, F.value.group, F.assignment)
    p, res = action_to_point(F.value, F.domain, phi)
    if p is None:
        raise ValueError(f"condition (i) fails for a valid functor: {res.witnesses}")
    return p


# change of base

def l_h(h, F):
    """Precompose F (over h.target) with h: x -> psi_(h x)."""
    return EnrichedFunctor(h.source, F.value, F.assignment[h.map])


@dataclass(frozen=True, eq=False)
class KanExtension:
    h: VHom
    psi: EnrichedFunctor
    functor: EnrichedFunctor
    maps: np.ndarray          # maps[i] is u_i: Y -> Z as an array over Y

    def index(self, u):
        hits = np.flatnonzero((self.maps == np.asarray(u)).all(axis=1))
        return int(hits[0]) if len(hits) else None


def equivariant_maps(h, psi):
    """Every u: Y -> Z with psi_x(u(y)) = u(h(x) + y), sorted lexicographically.

    u is pinned down by its values on one representative per coset h(X) + y; a
    representative value z is admissible when psi_x(z) = z for all x in ker h.
    """
    Y, Z = h.target.group, psi.value.group
    himg = generated_subgroup(Y, h.map.tolist())
    ker = [x for x in range(len(h.source)) if h.map[x] == Y.identity]
    fixed = [z for z in range(len(Z)) if all(psi.assignment[x, z] == z for x in ker)]
    # coset of y is {h(x) + y}; reach each element from its representative
    reps, owner, via = [], {}, {}
    for y in range(len(Y)):
        if y in owner:
            continue
        reps.append(y)
        for x in range(len(h.source)):
            w = int(Y.table[h.map[x], y])
            if w not in owner:
                owner[w], via[w] = y, x
    assert len(reps) * len(himg) == len(Y)
    out = []
    for vals in product(fixed, repeat=len(reps)):
        at = dict(zip(reps, vals))
        u = np.array([psi.assignment[via[y], at[owner[y]]] for y in range(len(Y))],
                     dtype=np.int64)
        out.append(u)
    out.sort(key=lambda u: tuple(u.tolist()))
    return out


def r_h(h, psi, vfunctor_only=True, cap=KAN_CAP):
    """Right Kan extension of psi (over h.source) along h; a functor over h.target."""
    Y, Zv = h.target, psi.value
    if len(Zv) ** len(Y) > cap:
        raise CapExceeded("r_h", cap)
    maps = equivariant_maps(h, psi)
    if vfunctor_only:
        maps = [u for u in maps if check_vfunctor(u, Y.structure, Zv.structure)]
    maps = np.array(maps, dtype=np.int64).reshape(len(maps), len(Y))
    pos = {tuple(u.tolist()): i for i, u in enumerate(maps)}
    k = len(maps)
    zt = Zv.group.table
    table = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            table[i, j] = pos[tuple(zt[maps[i], maps[j]].tolist())]
    labels = ["<" + " ".join(Zv.group.labels[v] for v in u) + ">" for u in maps]
    W = VGroup(FiniteGroup(table, labels, "W"), exponential_structure(maps, Zv.structure), "W")
    yt = Y.group.table
    assign = np.empty((len(Y), k), dtype=np.int64)
    for y0 in range(len(Y)):
        shifted = maps[:, yt[:, y0]]       # u(y + y0)
        for i in range(k):
            assign[y0, i] = pos[tuple(shifted[i].tolist())]
    return KanExtension(h, psi, EnrichedFunctor(Y, W, assign), maps)


def counit(kan):
    """epsilon: L_h R_h psi -> psi, u -> u(0_Y), with naturality and V-hom checked."""
    e0 = kan.h.target.group.identity
    comp = kan.maps[:, e0] if len(kan.maps) else np.zeros(0, dtype=np.int64)
    src = l_h(kan.h, kan.functor)
    eps = NatTransform(src, kan.psi, comp)
    ok = is_natural(src, kan.psi, comp)
    return eps, CheckResult("counit is a natural V-homomorphism", ok, [] if ok else [("counit",)])


def transpose(kan, phi, alpha):
    """alpha: L_h phi -> psi  gives  phi -> R_h psi, s -> (y -> alpha(phi_y(s)))."""
    comp = []
    for s in range(len(phi.value)):
        u = alpha.component[phi.assignment[:, s]]
        i = kan.index(u)
        if i is None:
            raise ValueError(f"transpose of s={s} is not in W")
        comp.append(i)
    return NatTransform(phi, kan.functor, np.array(comp, dtype=np.int64))


def untranspose(kan, beta):
    """beta: phi -> R_h psi  gives  epsilon o L_h(beta): L_h phi -> psi."""
    e0 = kan.h.target.group.identity
    return NatTransform(l_h(kan.h, beta.source), kan.psi, kan.maps[beta.component, e0])


def adjunction_check(h, phi, psi, kan=None, cap=KAN_CAP):
    """Hom(L_h phi, psi) and Hom(phi, R_h psi) are in bijection via transpose."""
    kan = kan or r_h(h, psi, cap=cap)
    left = nat_transforms(l_h(h, phi), psi, cap)
    right = nat_transforms(phi, kan.functor, cap)
    right_keys = {b.key() for b in right}
    witnesses = []
    for alpha in left:
        try:
            beta = transpose(kan, phi, alpha)
        except ValueError:
            witnesses.append(("transpose leaves W", alpha.key()))
            continue
        if beta.key() not in right_keys:
            witnesses.append(("transpose is not natural", alpha.key()))
        if untranspose(kan, beta).key() != alpha.key():
            witnesses.append(("triangle identity", alpha.key()))
        hits = [b for b in right if untranspose(kan, b).key() == alpha.key()]
        if len(hits) != 1:
            witnesses.append(("uniqueness", alpha.key(), len(hits)))
    for beta in right:
        back = untranspose(kan, beta)
        if not is_natural(back.source, psi, back.component):
            witnesses.append(("epsilon o L_h(beta) is not natural", beta.key()))
        elif transpose(kan, phi, back).key() != beta.key():
            witnesses.append(("transpose o untranspose", beta.key()))
    return CheckResult(
        "L_h is left adjoint to R_h", not witnesses, witnesses,
        counts={"left": len(left), "right": len(right), "W": len(kan.maps)},
        data={"pairs": [[list(a.key()), list(transpose(kan, phi, a).key())] for a in left]
              if not witnesses else []},
    )


def transpose_naturality(kan, theta, phi_target):
    """transpose(alpha o L_h theta) = transpose(alpha) o theta for theta: phi' -> phi."""
    phi = phi_target
    witnesses = []
    for alpha in nat_transforms(l_h(kan.h, phi), kan.psi):
        pre = NatTransform(l_h(kan.h, theta.source), kan.psi, alpha.component[theta.component])
        lhs = transpose(kan, theta.source, pre).component
        rhs = transpose(kan, phi, alpha).component[theta.component]
        if not np.array_equal(lhs, rhs):
            witnesses.append(alpha.key())
    return CheckResult("transpose is natural in phi", not witnesses, witnesses)


def change_of_base_correspondence(h, p):
    """Functor of the pullback of p along h equals L_h of the functor of p, up to kernel iso."""
    F = point_to_functor(p)
    pb = pullback_point(p, h)
    G = point_to_functor(pb.point)
    iso = pb.kernel_iso
    witnesses = []
    if G.value.structure != StructureMatrix(G.value.quantale, F.value.a[np.ix_(iso, iso)]):
        witnesses.append(("kernel structures differ",))
    expected = l_h(h, F).assignment
    if not np.array_equal(iso[G.assignment], expected[:, iso]):
        witnesses.append(("assignments differ",))
    return CheckResult("change of base matches precomposition", not witnesses, witnesses)


def all_functors(Y, Z, aut=None):
    """Every enriched functor over Y with value Z."""
    aut = aut or vaut(Z)
    out = []
    for f in group_homs(Y.group, aut.vgroup.group):
        if check_vfunctor(f, Y.structure, aut.vgroup.structure):
            out.append(EnrichedFunctor(Y, Z, aut.maps[f]))
    return out


__all__ = [
    "EnrichedFunctor", "NatTransform", "KanExtension", "NotInS", "validate_functor",
    "is_natural", "nat_transforms", "point_to_functor", "functor_to_point", "l_h",
    "equivariant_maps", "r_h", "counit", "transpose", "untranspose", "adjunction_check",
    "transpose_naturality", "change_of_base_correspondence", "all_functors",
]
