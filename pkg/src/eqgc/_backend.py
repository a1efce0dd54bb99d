"""Kernel backend selection.

Prefers the compiled ``eqgc._kernels`` extension and falls back to the
NumPy implementation when it is missing.  Set ``EQGC_KERNELS=python`` or
``EQGC_KERNELS=compiled`` to force a backend (the latter raises if the
extension is unavailable).
"""

from __future__ import annotations

import os

_forced = os.environ.get("EQGC_KERNELS", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as kernels
elif _forced == "compiled":
    from . import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

COMPILED: bool = bool(kernels.COMPILED)

apply_1q = kernels.apply_1q
apply_2q = kernels.apply_2q
apply_diag2 = kernels.apply_diag2
apply_kq = kernels.apply_kq
