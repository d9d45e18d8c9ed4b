"""Backend selection for the hot law-checking loops.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``VGROUPS_PURE`` is set to a non-empty value) the numpy
fallback is loaded.  ``BACKEND`` names the active one.
"""

import os

import numpy as np

from . import _pykernels

_FORCE_PURE = bool(os.environ.get("VGROUPS_PURE"))

try:
    if _FORCE_PURE:
        raise ImportError("pure backend requested")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "numpy"


def as_table(arr):
    return np.ascontiguousarray(arr, dtype=np.int64)


def as_mask(arr):
    return np.ascontiguousarray(arr, dtype=np.uint8)


def transitivity_violations(a, tensor, leq, limit=-1, impl=None):
    impl = impl or _impl
    return impl.transitivity_violations(as_table(a), as_table(tensor), as_mask(leq), limit)


def addition_violations(add, a, tensor, leq, limit=-1, impl=None):
    impl = impl or _impl
    return impl.addition_violations(as_table(add), as_table(a), as_table(tensor),
                                    as_mask(leq), limit)


def vfunctor_violations(f, a, b, leq, limit=-1, impl=None):
    impl = impl or _impl
    return impl.vfunctor_violations(as_table(f), as_table(a), as_table(b), as_mask(leq), limit)


def backends():
    """Map of backend name to module, for differential tests and benchmarks."""
    found = {"numpy": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
