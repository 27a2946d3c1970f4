"""Select the monodromy enumeration kernel: compiled if available, else pure.

Set RLAMBERT_PURE=1 to force the pure-Python fallback (used by the backend
benchmark and by tests that compare the two implementations).
"""

import os

if os.environ.get("RLAMBERT_PURE"):
    from . import _mono_py as mono_kernel
    BACKEND = "python"
else:
    try:
        from . import _speedups as mono_kernel  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _mono_py as mono_kernel
        BACKEND = "python"

count_tuples = mono_kernel.count_tuples

__all__ = ["count_tuples", "BACKEND"]
