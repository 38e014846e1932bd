"""Kernel backend selection.

Imports the compiled Cython kernels when available, otherwise the pure-Python
implementation.  Set ``ZETADET_PURE=1`` to force the pure backend (used by
the parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("ZETADET_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

hurwitz_zeta_raw = _impl.hurwitz_zeta
log_gamma = _impl.log_gamma
