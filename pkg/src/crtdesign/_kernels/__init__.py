"""Grid-sweep kernel selection.

The compiled extension is preferred when present; the pure-Python twin is
used otherwise, or when ``CRT_KERNEL=py`` is set (useful for parity testing
and benchmarking).  Both expose the same ``criterion_matrix`` contract.
"""

from __future__ import annotations

import os

from ._pykern import KIND_ATE, KIND_COMPOUND, KIND_HTE

if os.environ.get("CRT_KERNEL", "").strip().lower() in {"py", "python"}:
    from . import _pykern as _impl

    BACKEND = "python"
else:
    try:
        from . import _cykern as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build environment
        from . import _pykern as _impl

        BACKEND = "python"

criterion_matrix = _impl.criterion_matrix

__all__ = [
    "BACKEND",
    "KIND_ATE",
    "KIND_COMPOUND",
    "KIND_HTE",
    "criterion_matrix",
]
