"""Select the compiled search kernels when available.

Set ``HYPERCOVER_PURE=1`` to force the pure-Python implementation.
"""
import os

from . import _pykernels

if os.environ.get("HYPERCOVER_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
first_separating = _impl.first_separating
multicover_search = _impl.multicover_search
