"""Kernel backend selection.

The compiled extension is used when it imports; ``CHARLIER_BACKEND=python``
forces the pure-Python fallback.  The choice is made once, at import.
"""
import os
from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def kernels(name: str) -> ModuleType:
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _fallback
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not available; build the extension")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def available() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


if os.environ.get("CHARLIER_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_impl = kernels(BACKEND)
eval_f64 = _impl.eval_f64
eval_mp = _impl.eval_mp
aberth_sums = _impl.aberth_sums
