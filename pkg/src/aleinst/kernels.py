"""Select the compiled kernels when built, otherwise the pure-Python ones.

Set ALEINST_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os

BACKEND = "python"

if os.environ.get("ALEINST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from aleinst._kernels import conjugate, fund_pairs, partitions, vertex_pairs  # type: ignore

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from aleinst._kernels_py import conjugate, fund_pairs, partitions, vertex_pairs

__all__ = ["BACKEND", "conjugate", "fund_pairs", "partitions", "vertex_pairs"]
