"""Sampler backend selection.

The compiled extension is preferred when importable; the pure-Python twin is
the fallback.  SKYBLIGHT_BACKEND=py|cy forces one side (cy raises if the
extension is missing).  Both backends produce bit-identical streams, so the
choice only affects speed.
"""

from __future__ import annotations

import os

from . import pykernels

try:
    from . import _kernels as cykernels

    HAVE_COMPILED = True
except ImportError:
    cykernels = None
    HAVE_COMPILED = False

_forced = os.environ.get("SKYBLIGHT_BACKEND", "auto").strip().lower()
if _forced in ("py", "python"):
    _active = pykernels
elif _forced in ("cy", "cython", "compiled"):
    if not HAVE_COMPILED:
        raise ImportError(
            "SKYBLIGHT_BACKEND requests the compiled backend but "
            "skyblight.backend._kernels is not built"
        )
    _active = cykernels
elif _forced in ("auto", ""):
    _active = cykernels if HAVE_COMPILED else pykernels
else:
    raise ValueError(f"SKYBLIGHT_BACKEND must be auto, py or cy, got {_forced!r}")

BACKEND_NAME = "cython" if _active is cykernels else "python"

uniform_fill = _active.uniform_fill
normal_fill = _active.normal_fill
poisson_fill = _active.poisson_fill

__all__ = [
    "BACKEND_NAME",
    "HAVE_COMPILED",
    "cykernels",
    "normal_fill",
    "poisson_fill",
    "pykernels",
    "uniform_fill",
]
