"""Finite commutative unital quantales given by tables.

A quantale here is a finite lattice (``leq`` as a full boolean relation) with a
commutative, associative tensor that has a unit and preserves finite joins.
Elements are referred to by index; ``elements`` holds display names.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .report import CheckResult, MalformedError, ValidationReport


def _bound(leq, i, j, upper):
    """Least upper (or greatest lower) bound of i and j, or -1 if none."""
    m = leq.shape[0]
    if upper:
        cands = [k for k in range(m) if leq[i, k] and leq[j, k]]
        best = [k for k in cands if all(leq[k, c] for c in cands)]
    else:
        cands = [k for k in range(m) if leq[k, i] and leq[k, j]]
        best = [k for k in cands if all(leq[c, k] for c in cands)]
    return best[0] if len(best) == 1 else -1


@dataclass(frozen=True, eq=False)
class Quantale:
    name: str
    elements: tuple
    leq: np.ndarray
    tensor: np.ndarray
    unit: int
    join: np.ndarray = field(init=False, repr=False)
    meet: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = len(self.elements)
        leq = np.asarray(self.leq, dtype=bool)
        tensor = np.asarray(self.tensor, dtype=np.int64)
        if leq.shape != (m, m) or tensor.shape != (m, m):
            raise MalformedError(f"quantale {self.name}: tables must be {m}x{m}")
        if m == 0:
            raise MalformedError(f"quantale {self.name}: no elements")
        if tensor.min() < 0 or tensor.max() >= m or not 0 <= self.unit < m:
            raise MalformedError(f"quantale {self.name}: index out of range")
        join = np.array([[_bound(leq, i, j, True) for j in range(m)] for i in range(m)])
        meet = np.array([[_bound(leq, i, j, False) for j in range(m)] for i in range(m)])
        leq.flags.writeable = False
        tensor.flags.writeable = False
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "tensor", tensor)
        object.__setattr__(self, "join", join)
        object.__setattr__(self, "meet", meet)

    def __len__(self):
        return len(self.elements)

    @cached_property
    def bottom(self):
        m = len(self)
        found = [k for k in range(m) if self.leq[k].all()]
        return found[0] if len(found) == 1 else None

    @cached_property
    def top(self):
        m = len(self)
        found = [k for k in range(m) if self.leq[:, k].all()]
        return found[0] if len(found) == 1 else None

    def index(self, name):
        try:
            return self.elements.index(name)
        except ValueError:
            raise MalformedError(f"quantale {self.name}: unknown element {name!r}") from None

    def meet_all(self, values):
        """Meet of an iterable of indices; the empty meet is top."""
        acc = self.top
        for v in values:
            acc = self.meet[acc, v]
        return int(acc)

    def __repr__(self):
        return f"Quantale({self.name!r}, {len(self)} elements)"


def from_names(name, elements, leq_pairs, tensor, unit):
    """Build from element names, [lo, hi] pairs, a table of names and a unit name.

    The order is closed reflexively and transitively before use.
    """
    elements = tuple(elements)
    pos = {e: i for i, e in enumerate(elements)}
    if len(pos) != len(elements):
        raise MalformedError(f"quantale {name}: duplicate element names")

    def look(e):
        if e not in pos:
            raise MalformedError(f"quantale {name}: unknown element {e!r}")
        return pos[e]

    m = len(elements)
    leq = np.eye(m, dtype=bool)
    for pair in leq_pairs:
        if len(pair) != 2:
            raise MalformedError(f"quantale {name}: leq entries must be pairs")
        leq[look(pair[0]), look(pair[1])] = True
    for k in range(m):  # Warshall
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    if len(tensor) != m or any(len(row) != m for row in tensor):
        raise MalformedError(f"quantale {name}: tensor must be {m}x{m}")
    table = [[look(e) for e in row] for row in tensor]
    return Quantale(name, elements, leq, table, look(unit))


def validate_quantale(q):
    rep = ValidationReport(f"quantale {q.name}")
    leq, t, m = q.leq, q.tensor, len(q)
    r = range(m)
    rep.add("reflexivity", [(i,) for i in r if not leq[i, i]])
    rep.add("antisymmetry", [(i, j) for i in r for j in r if i < j and leq[i, j] and leq[j, i]])
    rep.add("order transitivity",
            [(i, j, k) for i in r for j in r for k in r if leq[i, j] and leq[j, k] and not leq[i, k]])
    rep.add("join exists", [(i, j) for i in r for j in r if i <= j and q.join[i, j] < 0])
    rep.add("meet exists", [(i, j) for i in r for j in r if i <= j and q.meet[i, j] < 0])
    if q.bottom is None:
        rep.add("bottom exists", [()])
    if q.top is None:
        rep.add("top exists", [()])
    rep.add("tensor commutative", [(i, j) for i in r for j in r if i < j and t[i, j] != t[j, i]])
    rep.add("tensor associative",
            [(i, j, k) for i in r for j in r for k in r if t[t[i, j], k] != t[i, t[j, k]]])
    rep.add("tensor unit", [(i,) for i in r if t[q.unit, i] != i or t[i, q.unit] != i])
    rep.add("tensor monotone",
            [(i, ii, j, jj) for i in r for ii in r for j in r for jj in r
             if leq[i, ii] and leq[j, jj] and not leq[t[i, j], t[ii, jj]]])
    if rep.ok:
        # join-dependent laws are only meaningful once the lattice is sound
        bot = q.bottom
        rep.add("tensor preserves empty join", [(i,) for i in r if t[i, bot] != bot])
        J, M = q.join, q.meet
        rep.add("tensor preserves binary joins",
                [(i, j, k) for i in r for j in r for k in r
                 if t[i, J[j, k]] != J[t[i, j], t[i, k]]])
        rep.add("distributivity",
                [(i, j, k) for i in r for j in r for k in r
                 if M[i, J[j, k]] != J[M[i, j], M[i, k]]])
    return rep


def is_cartesian(q):
    return q.unit == q.top and bool(np.array_equal(q.tensor, q.meet))


def is_integral(q):
    return q.unit == q.top


def is_idempotent(q):
    return all(q.tensor[i, i] == i for i in range(len(q)))


def lemma_idpt_check(q):
    """Idempotent tensor with unit top forces the tensor to be the meet."""
    antecedent = is_idempotent(q) and is_integral(q)
    witnesses = []
    if antecedent:
        m = len(q)
        witnesses = [(i, j) for i in range(m) for j in range(m) if q.tensor[i, j] != q.meet[i, j]]
    return CheckResult(
        claim=f"idempotent tensor with unit top is cartesian ({q.name})",
        holds=not witnesses,
        witnesses=witnesses,
        data={"antecedent": antecedent, "cartesian": is_cartesian(q)},
    )


# built-in quantales

def _chain(name, n, tensor, unit, reverse=False):
    idx = np.arange(n)
    leq = idx[:, None] >= idx[None, :] if reverse else idx[:, None] <= idx[None, :]
    return Quantale(name, tuple(str(i) for i in range(n)), leq, tensor, unit)


def builtin(name, size=None):
    """Built-in quantales.

    ``two``             {bot, top} with meet.
    ``chain_meet``      0 < 1 < ... < n-1 with meet, unit n-1.
    ``chain_trunc_sum`` elements are distances 0..n-1 ordered by >= (0 is top),
                        tensor is addition truncated at n-1 (bottom), unit 0.
    ``diamond``         bot < a, b < top with meet.
    """
    if size is not None and size < 1:
        raise ValueError(f"quantale size must be positive, got {size}")
    if name == "two":
        if size not in (None, 2):
            raise ValueError("'two' has exactly 2 elements")
        return Quantale("two", ("bot", "top"), [[True, True], [False, True]], [[0, 0], [0, 1]], 1)
    if name == "diamond":
        if size not in (None, 4):
            raise ValueError("'diamond' has exactly 4 elements")
        leq = np.eye(4, dtype=bool)
        leq[0, :] = True
        leq[:, 3] = True
        q = Quantale("diamond", ("bot", "a", "b", "top"), leq, np.zeros((4, 4), dtype=int), 3)
        return Quantale("diamond", q.elements, leq, q.meet, 3)
    if size is None:
        raise ValueError(f"quantale {name!r} needs a size")
    idx = np.arange(size)
    if name == "chain_meet":
        return _chain(f"chain_meet{size}", size, np.minimum.outer(idx, idx), size - 1)
    if name == "chain_trunc_sum":
        return _chain(f"chain_trunc_sum{size}", size,
                      np.minimum(np.add.outer(idx, idx), size - 1), 0, reverse=True)
    raise ValueError(f"unknown quantale {name!r}")


BUILTIN_NAMES = ("two", "chain_meet", "chain_trunc_sum", "diamond")


def parse_builtin(spec):
    """'two', 'diamond', 'chain_meet3', 'chain_trunc_sum:4' -> Quantale."""
    if spec in ("two", "diamond"):
        return builtin(spec)
    for base in ("chain_trunc_sum", "chain_meet"):
        if spec.startswith(base):
            rest = spec[len(base):].lstrip(":")
            if rest.isdigit():
                return builtin(base, int(rest))
    raise ValueError(f"unknown quantale {spec!r}")


# exhaustive generation of small quantales

def _lattice_orders(m):
    """All partial orders on range(m) that are lattices (labelled)."""
    off = [(i, j) for i in range(m) for j in range(m) if i != j]
    seen = []
    for bits in product((False, True), repeat=len(off)):
        leq = np.eye(m, dtype=bool)
        for (i, j), b in zip(off, bits):
            leq[i, j] = b
        if np.any(leq & leq.T & ~np.eye(m, dtype=bool)):
            continue
        if np.any((leq.astype(int) @ leq.astype(int) > 0) & ~leq):
            continue
        if any(_bound(leq, i, j, True) < 0 or _bound(leq, i, j, False) < 0
               for i in range(m) for j in range(m)):
            continue
        seen.append(leq)
    return seen


def all_quantales(m, orders=None):
    """Every commutative unital quantale structure on every labelled m-element lattice.

    The tensor is fixed on the unit row and the bottom row; the remaining
    commutative entries are enumerated and filtered by ``validate_quantale``.
    """
    out = []
    for leq in orders if orders is not None else _lattice_orders(m):
        probe = Quantale("probe", tuple(map(str, range(m))), leq, np.zeros((m, m), dtype=int), 0)
        bot = probe.bottom
        for unit in range(m):
            if m > 1 and unit == bot:
                continue  # unit at bottom forces m == 1
            free = [(i, j) for i in range(m) for j in range(i, m)
                    if bot not in (i, j) and unit not in (i, j)]
            for vals in product(range(m), repeat=len(free)):
                t = np.zeros((m, m), dtype=np.int64)
                t[:] = bot
                t[unit, :] = np.arange(m)
                t[:, unit] = np.arange(m)
                for (i, j), v in zip(free, vals):
                    t[i, j] = t[j, i] = v
                q = Quantale(f"gen{m}", probe.elements, leq, t, unit)
                if validate_quantale(q).ok:
                    out.append(q)
    return out


def relabel(q, perm, name=None):
    """Same quantale with element i renamed to position perm[i]."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    m = len(q)
    leq = q.leq[np.ix_(inv, inv)]
    tensor = perm[q.tensor[np.ix_(inv, inv)]]
    elements = tuple(q.elements[inv[i]] for i in range(m))
    return Quantale(name or q.name, elements, leq, tensor, int(perm[q.unit]))


def random_quantales(rng, count, max_size=4):
    """``count`` randomly relabelled quantales drawn from the exhaustive lists."""
    pools = {m: all_quantales(m) for m in range(1, max_size + 1)}
    out = []
    for k in range(count):
        m = int(rng.integers(1, max_size + 1))
        base = pools[m][int(rng.integers(len(pools[m])))]
        out.append(relabel(base, rng.permutation(m), name=f"random{k}"))
    return out


__all__ = [
    "Quantale", "from_names", "validate_quantale", "is_cartesian", "is_integral",
    "is_idempotent", "lemma_idpt_check", "builtin", "parse_builtin", "all_quantales",
    "relabel", "random_quantales", "BUILTIN_NAMES",
]
