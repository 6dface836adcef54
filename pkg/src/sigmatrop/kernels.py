"""Kernel backend selection: compiled extension when available, pure Python otherwise.

Set SIGMATROP_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that cross-check the two backends).
"""

import os

if os.environ.get("SIGMATROP_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

term_add = _impl.term_add
term_mul = _impl.term_mul
term_scale = _impl.term_scale
