"""JSON documents for quantales, groups, V-groups, actions, maps, points and functors.

References between documents are either inline objects, paths (resolved
relative to the referring file) or built-in names:

* quantale: ``"two"``, ``"diamond"``, ``"chain_meet3"``, ``"chain_trunc_sum4"``
* group: ``"Z1"`` .. ``"Zn"``, ``"Z2xZ2"``, ``"S3"``
* structure: ``"discrete"``, ``"codiscrete"`` or a matrix of element names
"""

import json
import re
from pathlib import Path

import numpy as np

from . import grp
from .kan import EnrichedFunctor
from .points import make_point
from .quantale import from_names, parse_builtin
from .report import MalformedError
from .vgrp import VGroup, VHom
from .vstruct import StructureMatrix, codiscrete, discrete


def builtin_group(name):
    m = re.fullmatch(r"Z(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return grp.cyclic(int(m.group(1)))
    if name in ("Z2xZ2", "V4", "klein"):
        return grp.klein()
    if name == "S3":
        return grp.symmetric(3)
    if name == "trivial":
        return grp.trivial()
    raise MalformedError(f"unknown group {name!r}")


class Loader:
    """Resolves documents and caches them, so shared references give shared objects."""

    def __init__(self, default_quantale=None):
        self.cache = {}
        self.default_quantale = default_quantale

    def _read(self, ref, base):
        path = (Path(base) / ref) if base is not None else Path(ref)
        try:
            text = path.read_text()
        except OSError as exc:
            raise MalformedError(f"cannot read {path}: {exc}") from None
        try:
            return json.loads(text), path.parent
        except json.JSONDecodeError as exc:
            raise MalformedError(f"{path}: invalid JSON ({exc})") from None

    def _resolve(self, ref, base, builtin, build):
        """Shared plumbing: cache key, file lookup, inline documents."""
        if isinstance(ref, str):
            if ref.endswith(".json"):
                key = str(((Path(base) / ref) if base else Path(ref)).resolve())
                if key not in self.cache:
                    doc, where = self._read(ref, base)
                    self.cache[key] = build(doc, where)
                return self.cache[key]
            key = ("builtin", builtin.__name__, ref)
            if key not in self.cache:
                try:
                    self.cache[key] = builtin(ref)
                except ValueError as exc:
                    raise MalformedError(str(exc)) from None
            return self.cache[key]
        if isinstance(ref, dict):
            return build(ref, base)
        raise MalformedError(f"cannot resolve reference {ref!r}")

    def quantale(self, ref, base=None):
        if ref is None:
            if self.default_quantale is None:
                raise MalformedError("no quantale given")
            ref = self.default_quantale
        return self._resolve(ref, base, parse_builtin, self._build_quantale)

    def _build_quantale(self, doc, base):
        if "builtin" in doc:
            return self.quantale(doc["builtin"] + str(doc.get("size", "")), base)
        try:
            return from_names(doc.get("name", "V"), doc["elements"], doc.get("leq", []),
                              doc["tensor"], doc["unit"])
        except KeyError as exc:
            raise MalformedError(f"quantale document lacks {exc}") from None

    def group(self, ref, base=None):
        return self._resolve(ref, base, builtin_group, self._build_group)

    def _build_group(self, doc, base):
        try:
            labels = [str(e) for e in doc["elements"]]
            pos = {e: i for i, e in enumerate(labels)}
            table = [[pos[str(e)] for e in row] for row in doc["table"]]
        except KeyError as exc:
            raise MalformedError(f"group document: unknown label or field {exc}") from None
        return grp.FiniteGroup(table, labels, doc.get("name", ""))

    def vgroup(self, ref, base=None):
        return self._resolve(ref, base, self._no_builtin, self._build_vgroup)

    @staticmethod
    def _no_builtin(name):
        raise ValueError(f"{name!r} is not a file reference")

    def _build_vgroup(self, doc, base):
        q = self.quantale(doc.get("quantale"), base)
        if "group" not in doc:
            raise MalformedError("V-group document lacks 'group'")
        g = self.group(doc["group"], base)
        st = doc.get("structure", "discrete")
        if st == "discrete":
            a = discrete(q, len(g))
        elif st == "codiscrete":
            a = codiscrete(q, len(g))
        else:
            if len(st) != len(g) or any(len(row) != len(g) for row in st):
                raise MalformedError("structure matrix must be |G| x |G|")
            a = StructureMatrix(q, [[q.index(v) for v in row] for row in st])
        return VGroup(g, a, doc.get("name", ""))

    def label_map(self, mapping, src, dst):
        if not isinstance(mapping, dict):
            raise MalformedError("maps are written as {source-label: target-label}")
        out = np.empty(len(src), dtype=np.int64)
        missing = [l for l in src.labels if l not in mapping]
        if missing:
            raise MalformedError(f"map is missing labels {missing}")
        for label, img in mapping.items():
            out[src.index(label)] = dst.index(img)
        return out

    def permutation_table(self, mapping, actor, target):
        if mapping == "trivial":
            return np.tile(np.arange(len(target)), (len(actor), 1))
        if not isinstance(mapping, dict):
            raise MalformedError("assignments are written as {actor-label: [labels]}")
        out = np.empty((len(actor), len(target)), dtype=np.int64)
        missing = [l for l in actor.labels if l not in mapping]
        if missing:
            raise MalformedError(f"assignment is missing labels {missing}")
        for label, perm in mapping.items():
            if len(perm) != len(target):
                raise MalformedError(f"permutation for {label!r} has the wrong length")
            out[actor.index(label)] = [target.index(v) for v in perm]
        return out

    def action(self, ref, actor, target, base=None):
        """Action of the group ``actor`` on ``target``; document refs must agree with them."""
        if isinstance(ref, str) and ref.endswith(".json"):
            doc, base = self._read(ref, base)
        elif isinstance(ref, dict):
            doc = ref
        elif ref == "trivial":
            doc = {"maps": "trivial"}
        else:
            raise MalformedError(f"cannot resolve action {ref!r}")
        for field, g in (("actor", actor), ("target", target)):
            if field in doc and not np.array_equal(self.group(doc[field], base).table, g.table):
                raise MalformedError(f"action {field} does not match the given group")
        return grp.GroupAction(actor, target, self.permutation_table(doc["maps"], actor, target))

    def vhom(self, ref, base=None, source=None, target=None):
        if isinstance(ref, str):
            doc, base = self._read(ref, base)
        else:
            doc = ref
        src = source if source is not None and "source" not in doc else self.vgroup(doc["source"], base)
        dst = target if target is not None and "target" not in doc else self.vgroup(doc["target"], base)
        return VHom(src, dst, self.label_map(doc["map"], src.group, dst.group))

    def functor(self, ref, base=None):
        if isinstance(ref, str):
            doc, base = self._read(ref, base)
        else:
            doc = ref
        Y = self.vgroup(doc["domain"], base)
        Z = self.vgroup(doc["value"], base)
        return EnrichedFunctor(Y, Z, self.permutation_table(doc["assignment"], Y.group, Z.group))

    def point(self, ref, base=None):
        if isinstance(ref, str):
            doc, base = self._read(ref, base)
        else:
            doc = ref
        A = self.vgroup(doc["total"], base)
        B = self.vgroup(doc["base"], base)
        f = self.label_map(doc["f"], A.group, B.group)
        s = self.label_map(doc["s"], B.group, A.group)
        return make_point(A, B, f, s)


# writers

def structure_names(a):
    q = a.quantale
    return [[q.elements[v] for v in row] for row in a.entries]


def vgroup_doc(A):
    return {
        "quantale": A.quantale.name,
        "group": {"elements": list(A.group.labels),
                  "table": [[A.group.labels[v] for v in row] for row in A.group.table]},
        "structure": structure_names(A.structure),
    }


def map_doc(f, src, dst):
    return {src.labels[i]: dst.labels[int(v)] for i, v in enumerate(f)}


def assignment_doc(table, actor, target):
    return {actor.labels[y]: [target.labels[int(v)] for v in row] for y, row in enumerate(table)}


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
