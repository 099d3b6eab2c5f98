"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``CLIFFPIN_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("CLIFFPIN_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
blade_sign = _impl.blade_sign
multiply_terms = _impl.multiply_terms
matmul = _impl.matmul
reduce_rows = _impl.reduce_rows
integer_adjugate = _impl.integer_adjugate

__all__ = ["BACKEND", "blade_sign", "multiply_terms", "matmul", "reduce_rows", "integer_adjugate"]
