"""Selects the GF(2) kernel backend at import time.

The compiled ``_gf2`` extension is used when it was built; otherwise the numpy
implementation in ``_gf2_py`` is loaded.  Setting ``GAMMA4_PURE_PYTHON=1``
forces the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("GAMMA4_PURE_PYTHON", "") not in ("", "0"):
    from . import _gf2_py as _impl
else:
    try:
        from . import _gf2 as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _gf2_py as _impl

BACKEND: str = _impl.BACKEND
set_bits = _impl.set_bits
lowest_bit = _impl.lowest_bit
popcount = _impl.popcount
xor_gather = _impl.xor_gather
reduce_inplace = _impl.reduce_inplace
eliminate_column = _impl.eliminate_column
clear_column = _impl.clear_column
rank_inplace = _impl.rank_inplace
