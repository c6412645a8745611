"""Select the tuple-search kernel at import time.

Prefers the compiled extension `_fastcount` (built from ``_fastcount.pyx``
when Cython and a C compiler are available); otherwise falls back to the
pure-Python `_slowcount`.  Setting the environment variable ``TH_NO_EXT``
to a non-empty value forces the fallback, which is handy for benchmarking
and for debugging the two implementations against each other.
"""

import os

if os.environ.get("TH_NO_EXT"):
    from ._slowcount import count_for_sigma, BACKEND
else:
    try:
        from ._fastcount import count_for_sigma, BACKEND
    except ImportError:
        from ._slowcount import count_for_sigma, BACKEND

KERNEL_BACKEND = BACKEND

__all__ = ["count_for_sigma", "KERNEL_BACKEND"]
