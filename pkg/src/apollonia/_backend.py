"""Select the compiled kernels when importable, else the pure-Python twins.

Set ``APOLLONIA_PURE=1`` to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("APOLLONIA_PURE", "") not in ("", "0"):
    kernels = _fallback
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _fallback

BACKEND = kernels.BACKEND

# int64 guard for the compiled integer loops: children reach 3x the bound
INT64_SAFE = 2**61


def census_maxima(base, bound):
    if bound >= INT64_SAFE // 4:
        return _fallback.census_maxima(base, bound)
    return kernels.census_maxima(base, bound)


def orbit_exp_sum(base, s, max_height):
    if max_height >= INT64_SAFE // 4:
        return _fallback.orbit_exp_sum(base, s, max_height)
    return kernels.orbit_exp_sum(base, s, max_height)


def classify_batch(points, max_iters):
    return kernels.classify_batch(points, max_iters)
