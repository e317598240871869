"""Backend selection for the hot loops.

The compiled extension is used when it was built; set
``CORIOLIS_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if os.environ.get("CORIOLIS_PURE_PYTHON") == "1" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_impl = BACKENDS[BACKEND]

sturm_count = _impl.sturm_count
bisect_eigenvalue = _impl.bisect_eigenvalue
shifted_solve = _impl.shifted_solve
compose_rodrigues = _impl.compose_rodrigues
rk4_cross = _impl.rk4_cross
