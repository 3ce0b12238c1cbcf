"""Kernel backend selection.

The compiled extension is used when it imports; setting ``DSFORGE_PURE=1``
forces the pure-Python twin.  ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

if os.environ.get("DSFORGE_PURE") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

find_embedding = _impl.find_embedding
max_alternation = _impl.max_alternation
greedy_rounds = _impl.greedy_rounds
pair_runs = _impl.pair_runs

__all__ = ["BACKEND", "find_embedding", "max_alternation", "greedy_rounds", "pair_runs"]
