"""Backend selection for the property kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``TEAMLOGIC_PURE`` is set to a non-empty value other
than ``0``, the pure-Python module is used. Both expose ``down_closure``,
``up_closure`` and ``split_or`` with identical results.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load() -> ModuleType:
    if os.environ.get("TEAMLOGIC_PURE", "") not in ("", "0"):
        return _kernels_py
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        return _kernels_py
    return _ckernels


_impl = _load()
BACKEND: str = _impl.BACKEND
down_closure = _impl.down_closure
up_closure = _impl.up_closure
split_or = _impl.split_or
point_masks = _kernels_py.point_masks


def available_backends() -> dict[str, ModuleType]:
    out = {"python": _kernels_py}
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
