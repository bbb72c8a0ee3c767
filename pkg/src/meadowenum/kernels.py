"""Pick the compiled table kernels when available, else the numpy versions.

Set ``MEADOWENUM_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MEADOWENUM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels


def _tab(a):
    return np.ascontiguousarray(a, dtype=np.intc)


def first_nonassoc(op):
    return _impl.first_nonassoc(_tab(op))


def first_noncommut(op):
    return _impl.first_noncommut(_tab(op))


def first_nondistrib(add, mul):
    return _impl.first_nondistrib(_tab(add), _tab(mul))


def meet_from_leq(leq):
    return _impl.meet_from_leq(np.ascontiguousarray(leq, dtype=np.uint8))


def min_relabeled(table, perms, inverses):
    return _impl.min_relabeled(_tab(table), _tab(perms), _tab(inverses))


def use_backend(name):
    """Switch backend at runtime (benchmarks and parity tests)."""
    global _impl, BACKEND
    if name == "python":
        _impl = _pykernels
    elif name == "cython":
        from . import _ckernels

        _impl = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
