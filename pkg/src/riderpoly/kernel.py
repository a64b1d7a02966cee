"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``RIDERPOLY_PURE=1`` to force the pure-Python kernel (used by the
benchmark and by tests that compare the two implementations).
"""

from __future__ import annotations

import os
from math import comb

from . import _pykernel

_speedups = None
if os.environ.get("RIDERPOLY_PURE") != "1":
    try:
        from . import _speedups
    except ImportError:
        _speedups = None

HAVE_SPEEDUPS = _speedups is not None

_I64_SAFE = 2**62


def implementation_name() -> str:
    return "compiled" if HAVE_SPEEDUPS else "pure-python"


def count_nonattacking_subsets(keys, q: int) -> int:
    """Dispatch to the compiled kernel when its 64-bit ranges suffice."""
    if _speedups is not None and q >= 2:
        npts = len(keys[0]) if keys else 0
        if comb(npts, q) < _I64_SAFE and all(
                -_I64_SAFE < k < _I64_SAFE for col in keys for k in col):
            return _speedups.count_nonattacking_subsets(keys, q)
    return _pykernel.count_nonattacking_subsets(keys, q)
