"""Backend selection for the enumeration kernels.

The compiled Cython extension is used when it imported cleanly; the
pure-Python twin is the fallback and can be forced with the environment
variable DETMOMENTS_PURE=1.  Calls whose intermediate values might overflow
the compiled kernel's 64-bit arithmetic are routed to the pure twin
regardless of the selection.
"""

from __future__ import annotations

import math
import os

from . import _pykernels

_compiled = None
if not os.environ.get("DETMOMENTS_PURE"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

_backend = _compiled if _compiled is not None else _pykernels


def backend_name() -> str:
    """'compiled' when the Cython kernels are active, else 'pure-python'."""
    return "compiled" if _backend is not _pykernels else "pure-python"


def has_compiled() -> bool:
    return _compiled is not None


def _fits_int64(values, n: int, permanent: bool) -> bool:
    """Conservative bound check: largest |det|/|per| must fit in 63 bits."""
    vmax = max(abs(int(v)) for v in values)
    if vmax == 0:
        vmax = 1
    if permanent:
        bound = math.factorial(n) * vmax**n
    else:
        # Hadamard: |det| <= n^(n/2) * vmax^n; compare squares to stay integral
        if n**n * vmax ** (2 * n) >= (1 << 62) ** 2:
            return False
        bound = math.isqrt(n**n * vmax ** (2 * n)) + 1
    return bound < (1 << 62)


def matrix_power_histogram(values, n, fix_first=False, permanent=False, prefix=()):
    impl = _backend
    if impl is not _pykernels:
        if n > 6 or len(values) > 8 or not _fits_int64(values, n, permanent):
            impl = _pykernels
    return impl.matrix_power_histogram(
        values, n, fix_first=fix_first, permanent=permanent, prefix=prefix
    )


def table_type_histogram(n, allow_three=False):
    return _backend.table_type_histogram(n, allow_three=allow_three)


def merge_histograms(parts) -> dict:
    """Key-wise sum of histograms from a partitioned enumeration."""
    total: dict = {}
    for part in parts:
        for key, count in part.items():
            total[key] = total.get(key, 0) + count
    return total
