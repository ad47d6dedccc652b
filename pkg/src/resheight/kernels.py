"""Backend selection for the determinant kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``RESHEIGHT_PURE_PYTHON`` is set, the pure-Python ``_pykernels`` run.
The compiled kernels use checked 64-bit arithmetic and raise
``OverflowError`` rather than wrap, in which case the call is transparently
redone with Python ints.
"""

from __future__ import annotations

import logging
import os

from . import _pykernels

log = logging.getLogger(__name__)

_ext = None
if not os.environ.get("RESHEIGHT_PURE_PYTHON"):
    try:
        from . import _ckernels as _ext  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on build
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def band_minor(m, n, removed, backend=None):
    if _use_ext(backend):
        try:
            return _ext.band_minor(m, n, list(removed))
        except OverflowError:
            log.info("band_minor(%d, %d) overflowed int64; using exact fallback", m, n)
    return _pykernels.band_minor(m, n, removed)


def laplace_expand(m, n, backend=None):
    if _use_ext(backend):
        try:
            return _ext.laplace_expand(m, n)
        except OverflowError:
            log.info("laplace_expand(%d, %d) overflowed int64; using exact fallback", m, n)
        except MemoryError:
            log.info("laplace_expand(%d, %d) accumulator too large; using sparse fallback", m, n)
    return _pykernels.laplace_expand(m, n)


def _use_ext(backend):
    if backend is None:
        return _ext is not None
    if backend == "python":
        return False
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not built")
        return True
    raise ValueError(f"unknown backend {backend!r}")
