"""Backend selection for the pivoting kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used. Setting ``COMPLEXGAMES_PURE=1``
forces the fallback.
"""
import os

from . import _pykernels

OPTIMAL = _pykernels.OPTIMAL
UNBOUNDED = _pykernels.UNBOUNDED
ITERATION_LIMIT = _pykernels.ITERATION_LIMIT


def _load():
    if os.environ.get("COMPLEXGAMES_PURE", "") not in ("", "0"):
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


_impl, BACKEND = _load()

simplex_loop = _impl.simplex_loop
complex_echelon = _impl.complex_echelon
payoff_table = _impl.payoff_table
pivot = _impl.pivot
