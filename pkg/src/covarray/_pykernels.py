"""Numpy fallback for the compiled kernels in ``_kernels.pyx``."""

import numpy as np

# Cap on the (combos x columns) code block materialised at once.
_BLOCK = 1 << 22


def _codes(mat, combos, alpha):
    t = combos.shape[1]
    codes = np.zeros((combos.shape[0], mat.shape[1]), dtype=np.int64)
    for j in range(t):
        codes *= alpha
        codes += mat[combos[:, j]].astype(np.int64) - 1
    return codes


def _blocks(ncomb, n):
    step = max(1, _BLOCK // max(n, 1))
    for lo in range(0, ncomb, step):
        yield lo, min(ncomb, lo + step)


def witness_counts(mat, combos, alpha):
    ncomb, t = combos.shape
    nvec = alpha**t
    counts = np.zeros((ncomb, nvec), dtype=np.uint32)
    for lo, hi in _blocks(ncomb, mat.shape[1]):
        codes = _codes(mat, combos[lo:hi], alpha)
        codes += (np.arange(hi - lo, dtype=np.int64) * nvec)[:, None]
        block = np.bincount(codes.ravel(), minlength=(hi - lo) * nvec)
        counts[lo:hi] = block.reshape(hi - lo, nvec)
    return counts


def first_witness(mat, combos, alpha):
    ncomb, t = combos.shape
    n = mat.shape[1]
    nvec = alpha**t
    first = np.full((ncomb, nvec), n, dtype=np.int64)
    cols = np.arange(n, dtype=np.int64)
    for lo, hi in _blocks(ncomb, n):
        codes = _codes(mat, combos[lo:hi], alpha)
        rows = np.broadcast_to(np.arange(lo, hi)[:, None], codes.shape)
        np.minimum.at(first, (rows.ravel(), codes.ravel()), np.tile(cols, hi - lo))
    first[first == n] = -1
    return first


def stack_hits(stacks, target):
    match = (stacks == target[None, :, None]).all(axis=1)
    return match.any(axis=1)
