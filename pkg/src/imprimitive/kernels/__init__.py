"""Backend dispatch for the enumeration kernels.

``IMPRIMITIVE_BACKEND=numpy`` forces the pure-numpy path; the default uses
numba when it imports.  :func:`use_backend` switches at runtime.
"""
from __future__ import annotations

import contextlib
import os

import numpy as np

from . import _numpy

KERNELS = ("unip_mul", "unip_inv", "torus", "group_mul", "group_inv",
           "canonical", "act", "act_all_pairs", "fixed_point_counts", "central_mask")

try:  # pragma: no cover - depends on the environment
    from . import _numba
except ImportError:  # pragma: no cover
    _numba = None

_BACKENDS = {"numpy": _numpy}
if _numba is not None:
    _BACKENDS["numba"] = _numba

_active = None


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def use_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {available_backends()})")
    _active = _BACKENDS[name]


def backend_name() -> str:
    return "numba" if _active is _numba and _numba is not None else "numpy"


@contextlib.contextmanager
def backend(name: str):
    prev = backend_name()
    use_backend(name)
    try:
        yield
    finally:
        use_backend(prev)


_env = os.environ.get("IMPRIMITIVE_BACKEND", "").strip().lower()
use_backend(_env if _env in _BACKENDS else ("numba" if _numba is not None else "numpy"))


def _arr(x, cols=None):
    a = np.ascontiguousarray(x, dtype=np.int64)
    if cols is not None and a.ndim == 1:
        a = a.reshape(-1, cols)
    return a


def unip_mul(law, U, V):
    return _active.unip_mul(law.as_tuple(), _arr(U, 3), _arr(V, 3))


def unip_inv(law, U):
    return _active.unip_inv(law.as_tuple(), _arr(U, 3))


def torus(law, A, U):
    return _active.torus(law.as_tuple(), _arr(A), _arr(U, 3))


def group_mul(law, G, H):
    return _active.group_mul(law.as_tuple(), _arr(G, 4), _arr(H, 4))


def group_inv(law, G):
    return _active.group_inv(law.as_tuple(), _arr(G, 4))


def canonical(law, Z):
    return _active.canonical(law.as_tuple(), _arr(Z, 3))


def act(law, G, P):
    return _active.act(law.as_tuple(), _arr(G, 4), _arr(P, 2))


def fixed_point_counts(law, G, P):
    return _active.fixed_point_counts(law.as_tuple(), _arr(G, 4), _arr(P, 2))


def central_mask(law, U, V):
    return _active.central_mask(law.as_tuple(), _arr(U, 3), _arr(V, 3))


def act_all_pairs(law, G, P):
    """Image of every (g, P) pair, shape (len(G), len(P), 2)."""
    return _active.act_all_pairs(law.as_tuple(), _arr(G, 4), _arr(P, 2))
