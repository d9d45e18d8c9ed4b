"""Compare the compiled and numpy kernels on the law checks that dominate run time.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each row times one
kernel on one structure, for every available backend, and reports the speedup of
the compiled backend over the numpy one.
"""

import argparse
import timeit

import numpy as np

from vgroups import kernels
from vgroups.grp import cyclic, direct_product
from vgroups.quantale import builtin
from vgroups.vgrp import codiscrete_vgroup, discrete_vgroup


def cases():
    q = builtin("chain_meet", 3)
    trunc = builtin("chain_trunc_sum", 5)
    out = []
    for n in (8, 16, 32, 64):
        g = cyclic(n)
        for name, A in (("discrete", discrete_vgroup(g, q)), ("codiscrete", codiscrete_vgroup(g, q))):
            out.append((f"transitivity {name} Z{n}", "transitivity_violations",
                        (A.a, q.tensor, q.leq)))
            out.append((f"addition {name} Z{n}", "addition_violations",
                        (g.table, A.a, q.tensor, q.leq)))
        rng = np.random.default_rng(n)
        # random matrix over a non-cartesian chain: many violations, exercises the full scan
        a = rng.integers(0, len(trunc), size=(n, n))
        out.append((f"transitivity random Z{n}", "transitivity_violations",
                    (a, trunc.tensor, trunc.leq)))
        f = rng.integers(0, n, size=n)
        out.append((f"vfunctor random Z{n}", "vfunctor_violations", (f, a, a, trunc.leq)))
    g = direct_product(cyclic(4), cyclic(8))
    A = discrete_vgroup(g, q)
    out.append(("addition discrete Z4xZ8", "addition_violations", (g.table, A.a, q.tensor, q.leq)))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    found = kernels.backends()
    names = sorted(found)
    print(f"active backend: {kernels.BACKEND}; available: {', '.join(names)}")
    header = f"{'case':34s}" + "".join(f"{n + ' ms':>14s}" for n in names) + f"{'speedup':>10s}"
    print(header)
    for label, fn, args_ in cases():
        times = {}
        counts = set()
        for n in names:
            call = lambda impl=found[n]: getattr(kernels, fn)(*args_, impl=impl)
            counts.add(len(call()))
            number = 3
            times[n] = min(timeit.repeat(call, number=number, repeat=args.repeat)) / number * 1e3
        assert len(counts) == 1, f"backends disagree on {label}"
        speed = times["numpy"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:34s}" + "".join(f"{times[n]:14.3f}" for n in names) + f"{speed:10.1f}x")


if __name__ == "__main__":
    main()
