"""Kernel selection: compiled extension when importable, pure Python
otherwise.  Set EPIREACH_PURE=1 to force the fallback (used by the
benchmark and the engine-equivalence tests)."""

import os

if os.environ.get("EPIREACH_PURE"):
    from . import _pykernels as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as kernels

COMPILED: bool = kernels.COMPILED
