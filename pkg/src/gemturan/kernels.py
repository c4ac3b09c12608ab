"""Kernel backend selection.

The compiled extension is preferred; set ``GEMTURAN_PURE_PYTHON=1`` to
force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("GEMTURAN_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
canon_label = _impl.canon_label
has_gem = _impl.has_gem
gem_through_edge = _impl.gem_through_edge
perron_iterate = _impl.perron_iterate


def available_backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
