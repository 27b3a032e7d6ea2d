"""Dispatch for the hot loops: compiled extension when built, else pure Python.

Set ``AFFSEMI_PURE_PYTHON=1`` to force the fallback. Inputs whose
magnitudes could overflow int64 always take the Python path.
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("AFFSEMI_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _ext
except ImportError:
    _ext = None

HAVE_EXTENSION = _ext is not None
BACKEND = "cython" if HAVE_EXTENSION else "python"

_SAFE = 1 << 40


def _small(gens, weights, target, cap) -> bool:
    if abs(cap) >= _SAFE:
        return False
    peak = max((abs(x) for g in gens for x in g), default=0)
    peak = max(peak, max((abs(x) for x in target), default=0), max(weights, default=0))
    # remainders drift by at most cap * peak
    return peak * (abs(cap) + 1) < _SAFE


def lex_search(gens, weights, target, cap):
    if _ext is not None and _small(gens, weights, target, cap):
        return _ext.lex_search(gens, weights, target, cap)
    return _pykernels.lex_search(gens, weights, target, cap)


def numerical_sieve(gens, limit):
    if _ext is not None:
        return _ext.numerical_sieve(gens, limit)
    return _pykernels.numerical_sieve(gens, limit)
