"""Select the compiled elimination kernels, falling back to pure Python.

Set ``MONOSTAB_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_c = None

if not os.environ.get("MONOSTAB_PURE_PYTHON"):
    try:
        from . import _ckernels as _c  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _c = None


def rank_mod_p(nrows, ncols, indptr, indices, data, p, backend=None):
    mod = _pick(backend)
    return mod.rank_mod_p(nrows, ncols, indptr, indices, data, p)


def rank_int(nrows, ncols, indptr, indices, data, backend=None):
    mod = _pick(backend)
    if mod is _c:
        try:
            return _c.rank_int(nrows, ncols, indptr, indices, data)
        except OverflowError:
            # int64 ran out; Python ints are unbounded
            pass
    return _pykernels.rank_int(nrows, ncols, indptr, indices, data)


def _pick(backend):
    if backend is None:
        return _c if _c is not None else _pykernels
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _c is None:
            raise RuntimeError("compiled kernels are not available")
        return _c
    raise ValueError(f"unknown backend {backend!r}")
