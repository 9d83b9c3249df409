"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python module is used.  Setting ``MOULDLAB_PURE=1`` forces the fallback.
"""

import os

from ._pykernels import MASK, ONE, SHIFT, mpq

if os.environ.get("MOULDLAB_PURE", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

p_add = _impl.p_add
p_add_into = _impl.p_add_into
p_scale = _impl.p_scale
p_mul = _impl.p_mul
p_mul_linear = _impl.p_mul_linear
p_div_linear = _impl.p_div_linear
p_substitute = _impl.p_substitute
p_shift = _impl.p_shift

__all__ = [
    "BACKEND", "MASK", "ONE", "SHIFT", "mpq",
    "p_add", "p_add_into", "p_scale", "p_mul", "p_mul_linear",
    "p_div_linear", "p_substitute", "p_shift",
]
