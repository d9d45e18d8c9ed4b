"""Command line front end.

Every verb prints one key-sorted JSON report.  Exit status: 0 when every claim
holds, 1 when some claim fails (the report carries the witnesses), 2 for
malformed input, 3 when an enumeration cap is exceeded.
"""

import argparse
import sys

import numpy as np

from . import formats
from .grp import trivial_action, validate_action, validate_group
from .kan import adjunction_check, counit, r_h, validate_functor
from .points import (NotAPoint, action_to_point, check_equivalence_prop, compatible_structures,
                     in_class_S, is_strong_point, pullback_point, representability_check,
                     representability_naturality)
from .quantale import is_integral, lemma_idpt_check, validate_quantale
from .report import CapExceeded, CheckResult, MalformedError, NotCartesian, TheoremViolation
from .vgrp import (VHom, check_evaluation_vfunctor, check_vgroup, check_vhom,
                   shift_invariance_check, vaut)

VERBS = ("validate", "vaut", "thm72", "structures", "strong", "action-rep", "kan",
         "adjoint-check", "pullback")

DEFAULT_CAP = 10**6


class InputError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _claim(result):
    return result.to_dict()


def _vgroup_claims(A, label):
    rep = check_vgroup(A.group, A.structure)
    d = rep.to_dict()
    d["claim"] = f"{label} is a V-group"
    return [d]


def _action(loader, args, X, Y):
    if args.action is None:
        return trivial_action(Y.group, X.group)
    phi = loader.action(args.action, Y.group, X.group)
    if not validate_action(phi).ok:
        raise InputError("action file does not describe a group action")
    return phi


def _point_and_map(loader, args):
    if args.point is not None:
        p = loader.point(args.point)
    else:
        _need(args, "kernel", "base")
        X, Y = loader.vgroup(args.kernel), loader.vgroup(args.base)
        p, res = action_to_point(X, Y, _action(loader, args, X, Y))
        if p is None:
            raise InputError(f"kernel/base/action do not form an S-point: {res.witnesses}")
    _need(args, "h")
    g = loader.vhom(args.h, target=p.base)
    if not (np.array_equal(g.target.group.table, p.base.group.table)
            and np.array_equal(g.target.a, p.base.a)):
        raise InputError("--h must land in the base of the point")
    g = VHom(g.source, p.base, g.map)
    if not check_vhom(g.map, g.source, g.target):
        raise InputError("--h is not a V-homomorphism")
    return p, g


def cmd_validate(loader, args):
    if not args.inputs:
        raise InputError("validate needs at least one input file")
    claims = []
    for path in args.inputs:
        doc, base = loader._read(path, None)
        if "tensor" in doc:
            q = loader.quantale(path)
            rep = validate_quantale(q)
            claims.append(rep.to_dict())
            if rep.ok:
                lem = lemma_idpt_check(q)
                lem.data.update(integral=is_integral(q))
                claims.append(_claim(lem))
        elif "structure" in doc or "group" in doc:
            A = loader.vgroup(path)
            claims.append(validate_quantale(A.quantale).to_dict())
            claims += _vgroup_claims(A, path)
            claims.append(_claim(shift_invariance_check(A)))
        elif "table" in doc:
            claims.append(validate_group(loader.group(path)).to_dict())
        elif "assignment" in doc:
            claims.append(validate_functor(loader.functor(path)).to_dict())
        elif "f" in doc and "s" in doc:
            p = loader.point(path)
            claims.append(_claim(CheckResult("point is in S", True, data={"in_S": in_class_S(p)})))
        elif "map" in doc:
            h = loader.vhom(path)
            ok = check_vhom(h.map, h.source, h.target)
            claims.append(_claim(CheckResult("map is a V-homomorphism", ok, [] if ok else [path])))
        elif "maps" in doc and "actor" in doc and "target" in doc:
            actor, target = loader.group(doc["actor"], base), loader.group(doc["target"], base)
            claims.append(validate_action(loader.action(path, actor, target)).to_dict())
        else:
            raise InputError(f"{path}: cannot tell what kind of document this is")
    return {"claims": claims}


def cmd_vaut(loader, args):
    ref = args.kernel or (args.inputs[0] if args.inputs else None)
    if ref is None:
        raise InputError("vaut needs --kernel")
    X = loader.vgroup(ref)
    claims = _vgroup_claims(X, "X")
    aut = vaut(X)
    claims += _vgroup_claims(aut.vgroup, "VAut(X)")
    ev = check_evaluation_vfunctor(X, aut)
    claims.append(_claim(CheckResult("evaluation X (x) VAut(X) -> X is a V-functor", ev,
                                     [] if ev else [("evaluation",)])))
    claims.append(_claim(shift_invariance_check(X)))
    return {
        "claims": claims,
        "vaut": {
            "carrier": [[X.group.labels[v] for v in p] for p in aut.maps],
            "structure": formats.structure_names(aut.vgroup.structure),
        },
    }


def cmd_thm72(loader, args):
    _need(args, "kernel", "base")
    X, Y = loader.vgroup(args.kernel), loader.vgroup(args.base)
    claims = _vgroup_claims(X, "kernel") + _vgroup_claims(Y, "base")
    res = check_equivalence_prop(X, Y, _action(loader, args, X, Y))
    claims.append(_claim(res))
    return {"claims": claims}


def cmd_structures(loader, args):
    _need(args, "kernel", "base")
    X, Y = loader.vgroup(args.kernel), loader.vgroup(args.base)
    phi = _action(loader, args, X, Y)
    claims = _vgroup_claims(X, "kernel") + _vgroup_claims(Y, "base")
    try:
        found = compatible_structures(X, Y, phi, cap=args.cap)
        dom = CheckResult("compatible structures dominate the product structure", True,
                          counts={"compatible": len(found)})
    except TheoremViolation as exc:
        found = []
        dom = CheckResult("compatible structures dominate the product structure", False,
                          [list(exc.witness)])
    claims.append(_claim(dom))
    return {"claims": claims, "structures": [formats.structure_names(c) for c in found]}


def cmd_strong(loader, args):
    p, g = _point_and_map(loader, args)
    res = is_strong_point(p, g, cap=args.cap)
    res.data["in_S"] = in_class_S(p)
    return {"claims": [_claim(res)]}


def cmd_action_rep(loader, args):
    _need(args, "kernel", "base")
    X, Y = loader.vgroup(args.kernel), loader.vgroup(args.base)
    claims = _vgroup_claims(X, "kernel") + _vgroup_claims(Y, "base")
    aut = vaut(X)
    res = representability_check(Y, X, aut)
    claims.append(_claim(res))
    if args.h is not None:
        g = loader.vhom(args.h, target=Y)
        claims.append(_claim(representability_naturality(VHom(g.source, Y, g.map), X, aut)))
    return {"claims": claims, "counts": res.counts}


def _h_and_psi(loader, args):
    _need(args, "h", "psi")
    h = loader.vhom(args.h)
    psi = loader.functor(args.psi)
    if not check_vhom(h.map, h.source, h.target):
        raise InputError("--h is not a V-homomorphism")
    if not np.array_equal(psi.domain.group.table, h.source.group.table):
        raise InputError("--psi must be a functor over the source of --h")
    psi = type(psi)(h.source, psi.value, psi.assignment)
    return h, psi


def cmd_kan(loader, args):
    h, psi = _h_and_psi(loader, args)
    claims = [validate_functor(psi).to_dict()]
    kan = r_h(h, psi, vfunctor_only=not args.literal, cap=args.cap)
    rep = validate_functor(kan.functor).to_dict()
    rep["claim"] = "R_h(psi) is an enriched functor"
    claims.append(rep)
    claims.append(_claim(counit(kan)[1]))
    Y, Z = h.target.group, psi.value.group
    W = kan.functor.value
    return {
        "claims": claims,
        "kan": {
            "W": [[Z.labels[v] for v in u] for u in kan.maps],
            "omega": formats.structure_names(W.structure),
            "action": formats.assignment_doc(kan.functor.assignment, Y, W.group),
        },
    }


def cmd_adjoint(loader, args):
    h, psi = _h_and_psi(loader, args)
    _need(args, "phi")
    phi = loader.functor(args.phi)
    if not np.array_equal(phi.domain.group.table, h.target.group.table):
        raise InputError("--phi must be a functor over the target of --h")
    phi = type(phi)(h.target, phi.value, phi.assignment)
    claims = [validate_functor(psi).to_dict(), validate_functor(phi).to_dict()]
    kan = r_h(h, psi, cap=args.cap)
    res = adjunction_check(h, phi, psi, kan=kan, cap=args.cap)
    claims.append(_claim(res))
    return {"claims": claims}


def cmd_pullback(loader, args):
    p, g = _point_and_map(loader, args)
    pb = pullback_point(p, g)
    P = pb.point.total
    claims = []
    if in_class_S(p):
        ok = in_class_S(pb.point)
        claims.append(_claim(CheckResult("pullback of an S-point is in S", ok,
                                         [] if ok else [("pullback",)])))
    return {
        "claims": claims,
        "pullback": {
            "total": formats.vgroup_doc(P),
            "in_S": in_class_S(pb.point),
            "kernel_order": len(pb.point.kernel),
        },
    }


HANDLERS = {
    "validate": cmd_validate, "vaut": cmd_vaut, "thm72": cmd_thm72,
    "structures": cmd_structures, "strong": cmd_strong, "action-rep": cmd_action_rep,
    "kan": cmd_kan, "adjoint-check": cmd_adjoint, "pullback": cmd_pullback,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="vgroups", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("inputs", nargs="*", help="input documents (validate, vaut)")
    ap.add_argument("--quantale", help="default quantale for documents that name none")
    ap.add_argument("--kernel")
    ap.add_argument("--base")
    ap.add_argument("--action")
    ap.add_argument("--point", help="point document (strong, pullback)")
    ap.add_argument("--h")
    ap.add_argument("--psi")
    ap.add_argument("--phi")
    ap.add_argument("--literal", action="store_true",
                    help="kan: keep every equivariant map in W, not only V-functors")
    ap.add_argument("--cap", type=int, default=DEFAULT_CAP)
    ap.add_argument("--out")
    ap.add_argument("--format", choices=("json",), default="json")
    return ap


def _has_witness(report):
    return any(c.get("witnesses") for c in report.get("claims", []))


def run(argv=None, stdout=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    args = build_parser().parse_intermixed_args(argv)
    loader = formats.Loader(default_quantale=args.quantale)
    try:
        body = HANDLERS[args.verb](loader, args)
    except (MalformedError, InputError, NotAPoint, NotCartesian, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    failed = _has_witness(body)
    report = {"verb": args.verb, "status": "fails" if failed else "holds", **body}
    text = formats.dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 1 if failed else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
