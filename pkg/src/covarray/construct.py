"""Moser-Tardos resampling over the tiled model.

Bad events are (row set, vector) pairs with no witnessing column. While one
exists, the lexicographically first is taken and every core tile of its
``t`` rows is redrawn. The constant augmentation columns are never touched.
"""

import json
import time
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from covarray import kernels
from covarray.bounds import CoveringParams, TileSpec, sufficient_n
from covarray.model import ArrayMatrix, resample_rows, sample_array
from covarray.verify import decode_vector, is_covering, row_combinations


@dataclass
class ConstructionLog:
    seed: int
    m: int
    t: int
    alpha: int
    k: int
    n: int
    n_core: int
    max_resamples: int
    resample_count: int = 0
    success: bool = False
    best_deficiency: int = 0
    final_deficiency: int = 0
    wall_time: float = 0.0
    trace: list | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


class ConstructionFailure(RuntimeError):
    """Resampling cap reached before the matrix became covering."""

    def __init__(self, log: ConstructionLog, matrix: ArrayMatrix):
        super().__init__(
            f"no covering array after {log.resample_count} resamples "
            f"(best deficiency {log.best_deficiency}, final {log.final_deficiency})"
        )
        self.log = log
        self.matrix = matrix


def resample_stream(seed: int) -> np.random.Generator:
    # spawn_key keeps this stream disjoint from the per-row streams keyed by [seed, row]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(1,))))


def construct(
    params: CoveringParams,
    k: int,
    n: int | None = None,
    seed: int = 0,
    max_resamples: int | None = None,
    mode: str = "exact",
    record_trace: bool = False,
):
    """Build a covering array with ``n`` total columns (default: the LLL sufficient n).

    ``n`` includes the ``alpha`` constant columns, so ``n - alpha`` must be a
    multiple of ``k * alpha``. Returns ``(matrix, log)``; raises
    :class:`ConstructionFailure` once ``max_resamples`` (default
    ``100 * C(m, t)``) resamplings have not produced a covering array.
    """
    m, t, alpha = params.m, params.t, params.alpha
    if n is None:
        n = sufficient_n(params, k, mode).sufficient_n
    n_core = n - alpha
    if n_core < 0:
        raise ValueError(f"n={n} leaves no room for the {alpha} augmentation columns")
    TileSpec(k, alpha).tile_count(n_core)
    if max_resamples is None:
        max_resamples = 100 * comb(m, t)

    start = time.perf_counter()
    log = ConstructionLog(seed, m, t, alpha, k, n, n_core, max_resamples, trace=[] if record_trace else None)
    matrix = sample_array(params, n_core, k, augment=True, seed=seed)
    rng = resample_stream(seed)

    combos = row_combinations(m, t)
    touching = [np.flatnonzero((combos == r).any(axis=1)) for r in range(m)]
    counts = kernels.witness_counts(matrix.entries, combos, alpha)
    missing = (counts == 0).sum(axis=1)
    log.best_deficiency = int(missing.sum())

    while True:
        bad = np.flatnonzero(missing)
        if bad.size == 0:
            break
        if log.resample_count >= max_resamples:
            break
        c = int(bad[0])
        rows = combos[c]
        if record_trace:
            code = int(np.flatnonzero(counts[c] == 0)[0])
            log.trace.append([rows.tolist(), list(decode_vector(code, alpha, t))])
        resample_rows(matrix, rows, rng)
        affected = np.unique(np.concatenate([touching[r] for r in rows]))
        counts[affected] = kernels.witness_counts(matrix.entries, combos[affected], alpha)
        missing[affected] = (counts[affected] == 0).sum(axis=1)
        log.resample_count += 1
        log.best_deficiency = min(log.best_deficiency, int(missing.sum()))

    log.final_deficiency = int(missing.sum())
    log.wall_time = time.perf_counter() - start
    if log.final_deficiency:
        raise ConstructionFailure(log, matrix)
    if not is_covering(matrix, t):
        raise AssertionError("incremental witness counts diverged from a full verification")
    log.success = True
    return matrix, log
