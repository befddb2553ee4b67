"""Kernel selection: compiled extension when available, else pure Python."""

from __future__ import annotations

import os

if os.environ.get("UETUCT_PURE_PYTHON"):
    from ._kernels_py import first_non_neighbors, oracle_search, scan_shared_non_neighbor

    BACKEND = "python"
else:
    try:
        from ._kernels import (  # type: ignore[import-not-found]
            first_non_neighbors,
            oracle_search,
            scan_shared_non_neighbor,
        )

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import first_non_neighbors, oracle_search, scan_shared_non_neighbor

        BACKEND = "python"

__all__ = ["BACKEND", "first_non_neighbors", "oracle_search", "scan_shared_non_neighbor"]
