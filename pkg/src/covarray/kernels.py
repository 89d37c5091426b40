"""Backend selection for the hot loops.

The compiled extension ``covarray._kernels`` is used when it was built;
otherwise the numpy implementation in ``covarray._pykernels`` is loaded.
Set ``COVARRAY_BACKEND=python`` to force the fallback.

All kernels take letters in ``1..alpha`` stored as ``uint8``.
"""

import os

import numpy as np

from covarray import _pykernels

if os.environ.get("COVARRAY_BACKEND", "").lower() == "python":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from covarray import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

BACKENDS = {"python": _pykernels}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl


def _prep(mat, combos):
    return (
        np.ascontiguousarray(mat, dtype=np.uint8),
        np.ascontiguousarray(combos, dtype=np.intp).reshape(len(combos), -1),
    )


def witness_counts(mat, combos, alpha, backend=None):
    """Per row-set histogram of column vectors.

    Returns a ``uint32`` array of shape ``(len(combos), alpha**t)`` whose
    entry ``[c, code]`` counts the columns whose restriction to the rows in
    ``combos[c]`` spells the vector with base-``alpha`` index ``code``.
    """
    impl = BACKENDS[backend] if backend else _impl
    mat, combos = _prep(mat, combos)
    return impl.witness_counts(mat, combos, int(alpha))


def first_witness(mat, combos, alpha, backend=None):
    """Like :func:`witness_counts` but returns the first witnessing column, or -1."""
    impl = BACKENDS[backend] if backend else _impl
    mat, combos = _prep(mat, combos)
    return impl.first_witness(mat, combos, int(alpha))


def stack_hits(stacks, target, backend=None):
    """For each ``(t, w)`` stack, whether some column equals ``target``."""
    impl = BACKENDS[backend] if backend else _impl
    stacks = np.ascontiguousarray(stacks, dtype=np.uint8)
    target = np.ascontiguousarray(target, dtype=np.uint8)
    return impl.stack_hits(stacks, target)
