"""Kernel backend selection.

``STABLE_LAB_BACKEND`` picks the implementation at import time:
``auto`` (default) prefers the compiled extension and falls back to the
NumPy one, ``cython`` requires the extension, ``python`` forces the
fallback. Both expose the same functions with identical stream
semantics.
"""

from __future__ import annotations

import os

_requested = os.environ.get("STABLE_LAB_BACKEND", "auto").strip().lower()
if _requested not in {"auto", "cython", "python"}:
    raise ImportError(
        f"STABLE_LAB_BACKEND={_requested!r}: expected auto, cython or python")

if _requested in {"auto", "cython"}:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise
        from . import _kernels_py as _impl
        BACKEND = "python"
else:
    from . import _kernels_py as _impl
    BACKEND = "python"

derive_key = _impl.derive_key
uniform_pairs = _impl.uniform_pairs
uniform_draws = _impl.uniform_draws
exp_draws = _impl.exp_draws
stable_draws = _impl.stable_draws
kanter_v_draws = _impl.kanter_v_draws
gamma_draws = _impl.gamma_draws

__all__ = [
    "BACKEND",
    "derive_key",
    "uniform_pairs",
    "uniform_draws",
    "exp_draws",
    "stable_draws",
    "kanter_v_draws",
    "gamma_draws",
]
