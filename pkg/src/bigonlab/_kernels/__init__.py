"""Kernel backend selection.

Prefers the compiled extension; falls back to the NumPy implementation when
the extension is unavailable.  Set ``BIGONLAB_KERNEL=python`` to force the
fallback (used by the benchmark and the cross-backend tests).
"""

import os

from . import _pykern

if os.environ.get("BIGONLAB_KERNEL", "").lower() == "python":
    _impl = _pykern
    BACKEND = "python"
else:
    try:
        from . import _ckern as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykern
        BACKEND = "python"

four_point_double_delta = _impl.four_point_double_delta
block_pair_stats = _impl.block_pair_stats
