"""Optional numba acceleration.

The hot path (secular sigma_min scans) compiles under numba when available.
Setting QGRAPH_NO_NUMBA=1 (or numba's own NUMBA_DISABLE_JIT=1) selects the
pure-numpy fallback instead; everything returns the same values either way.
"""

import os

_flag = os.environ.get("QGRAPH_NO_NUMBA", "").strip()
_disabled = _flag not in ("", "0") or os.environ.get("NUMBA_DISABLE_JIT", "0") == "1"

if not _disabled:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False
else:
    HAS_NUMBA = False

if not HAS_NUMBA:

    def njit(*args, **kwargs):
        """Pass-through decorator used when numba is absent or disabled."""
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap
