"""Backend selection for the hot kernels.

Set ``HOLOBEAM_BACKEND=numpy`` to force the pure-numpy path. Any other value
(or unset) uses numba when it is importable.
"""

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

_requested = os.environ.get("HOLOBEAM_BACKEND", "numba").strip().lower()
_backend = "numba" if (HAS_NUMBA and _requested != "numpy") else "numpy"


def get_backend():
    return _backend


def set_backend(name):
    """Switch backend at runtime ('numba' or 'numpy'). Returns the previous one."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not installed")
    previous, _backend = _backend, name
    return previous


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAS_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f
