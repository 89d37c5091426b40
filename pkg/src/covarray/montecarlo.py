"""Exact-enumeration and sampling oracles for the tiled model.

``enumerate_gamma`` counts, over every t-tuple of tile arrangements, the
tuples in which a fixed vector occupies some column. It shares no code
with the inclusion-exclusion sum in :mod:`covarray.bounds`.

Sampling work is split into fixed-size chunks with per-chunk seeds, so
results do not depend on how many threads run the chunks.
"""

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from covarray import kernels
from covarray.bounds import CoveringParams, TileSpec, gamma_k, sufficient_n
from covarray.exact_arith import multinomial
from covarray.model import derive_seed, sample_array, sample_iid_array, sample_tiles
from covarray.verify import row_combinations

DEFAULT_WORK_BOUND = 10**7
CHUNK = 1 << 15


class WorkBoundExceeded(ValueError):
    pass


def work_bound() -> int:
    return int(os.environ.get("COVARRAY_WORK_BOUND", DEFAULT_WORK_BOUND))


def tile_arrangements(alpha: int, k: int) -> np.ndarray:
    """Every distinct arrangement of {1^k, ..., alpha^k}, lexicographic, one per row."""
    out = []
    left = [k] * alpha
    cur = []

    def rec():
        if len(cur) == alpha * k:
            out.append(list(cur))
            return
        for letter in range(alpha):
            if left[letter]:
                left[letter] -= 1
                cur.append(letter + 1)
                rec()
                cur.pop()
                left[letter] += 1

    rec()
    return np.array(out, dtype=np.uint8)


def _position_masks(positions) -> np.ndarray:
    return np.array([sum(1 << p for p in pos) for pos in positions], dtype=np.int64)


def enumerate_gamma(alpha: int, t: int, k: int, target=None, full: bool = False, bound: int | None = None) -> Fraction:
    """Exact gamma_k by exhausting all t-tuples of tiles.

    By default a tile is represented by the positions of the target letter
    (a k-subset of the tile), giving C(ak, k)**t tuples. With ``full=True``
    every distinct arrangement of the whole letter multiset is enumerated
    instead, and ``target`` may be any vector.
    """
    w = alpha * k
    if w > 62:
        raise WorkBoundExceeded(f"tile width {w} too wide for bitmask enumeration")
    bound = work_bound() if bound is None else bound
    if target is None:
        target = (1,) * t
    if len(target) != t:
        raise ValueError(f"target {target} is not a {t}-vector")
    if full:
        size = multinomial(w, [k] * alpha)
        if size**t > bound:
            raise WorkBoundExceeded(f"{size}^{t} arrangement tuples exceed work bound {bound}")
        arr = tile_arrangements(alpha, k)
        masks = [_position_masks([np.flatnonzero(row == z) for row in arr]) for z in target]
    else:
        size = math.comb(w, k)
        if size**t > bound:
            raise WorkBoundExceeded(f"{size}^{t} tuples exceed work bound {bound}")
        subsets = _position_masks(combinations(range(w), k))
        masks = [subsets] * t
    acc = masks[0]
    for m in masks[1:]:
        acc = (acc[:, None] & m[None, :]).ravel()
    hits = int(np.count_nonzero(acc))
    return Fraction(hits, acc.size)


@dataclass
class EstimateReport:
    label: str
    alpha: int
    t: int
    k: int
    n_core: int | None
    trials: int
    hits: int
    exact: Fraction | None = None

    @property
    def estimate(self) -> float:
        return self.hits / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    @property
    def z(self) -> float | None:
        """Deviation from the exact value in units of the exact binomial sigma."""
        if self.exact is None:
            return None
        p = float(self.exact)
        sigma = math.sqrt(p * (1 - p) / self.trials)
        diff = self.estimate - p
        if sigma == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / sigma

    def row(self) -> dict:
        return {
            "label": self.label,
            "alpha": self.alpha,
            "t": self.t,
            "k": self.k,
            "n_core": "" if self.n_core is None else self.n_core,
            "trials": self.trials,
            "estimate": repr(self.estimate),
            "stderr": repr(self.stderr),
            "exact": "" if self.exact is None else repr(float(self.exact)),
            "z": "" if self.z is None else repr(self.z),
        }


CSV_FIELDS = ["label", "alpha", "t", "k", "n_core", "trials", "estimate", "stderr", "exact", "z"]


def write_csv(reports, fh, header=True) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    if header:
        writer.writeheader()
    for r in reports:
        writer.writerow(r.row())


def _chunked(trials, seed, fn, threads):
    sizes = [(i, min(CHUNK, trials - lo)) for i, lo in enumerate(range(0, trials, CHUNK))]

    def run(job):
        i, size = job
        return fn(size, np.random.default_rng(derive_seed(seed, i)))

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return sum(pool.map(run, sizes))
    return sum(map(run, sizes))


def _target(target, t):
    target = (1,) * t if target is None else tuple(target)
    if len(target) != t:
        raise ValueError(f"target {target} is not a {t}-vector")
    return np.array(target, dtype=np.uint8)


def _count_hits(trials, seed, alpha, t, k, tiles, target, threads):
    w = alpha * k

    def fn(size, rng):
        stacks = sample_tiles(size * t * tiles, alpha, k, rng).reshape(size, t, tiles * w)
        return int(kernels.stack_hits(stacks, target).sum())

    return _chunked(trials, seed, fn, threads)


def estimate_gamma(alpha: int, t: int, k: int, trials: int, seed: int = 0, target=None, threads: int = 1):
    """Sample ``t`` stacked tiles ``trials`` times; count those showing ``target`` in a column."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tgt = _target(target, t)
    hits = _count_hits(trials, seed, alpha, t, k, 1, tgt, threads)
    return EstimateReport("gamma", alpha, t, k, alpha * k, trials, hits, gamma_k(alpha, t, k))


def estimate_lambda(params: CoveringParams, k: int, n_core: int, trials: int, seed: int = 0, target=None, threads: int = 1):
    """Probability that ``target`` is absent from ``t`` tiled rows of width ``n_core``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tiles = TileSpec(k, params.alpha).tile_count(n_core)
    tgt = _target(target, params.t)
    hits = _count_hits(trials, seed, params.alpha, params.t, k, tiles, tgt, threads)
    exact = (1 - gamma_k(params.alpha, params.t, k)) ** tiles
    return EstimateReport("lambda", params.alpha, params.t, k, n_core, trials, trials - hits, exact)


@dataclass
class MinNSummary:
    values: list[int]
    sufficient_n: int

    @property
    def min(self) -> int:
        return min(self.values)

    @property
    def median(self) -> float:
        return float(np.median(self.values))

    @property
    def max(self) -> int:
        return max(self.values)

    @property
    def exceed_bound(self) -> int:
        return sum(v > self.sufficient_n for v in self.values)


def _min_columns(params, k, seed, start, combos, skip):
    block = params.alpha * k if k else 1
    cap = start
    while True:
        if k:
            mat = sample_array(params, cap, k, augment=False, seed=seed)
        else:
            mat = sample_iid_array(params, cap, seed=seed)
        first = kernels.first_witness(mat.entries, combos, params.alpha)
        if skip is not None:
            first = np.delete(first, skip, axis=1)
        if (first >= 0).all():
            need = int(first.max()) + 1
            return -(-need // block) * block
        cap *= 2


def empirical_min_n(params: CoveringParams, k: int, trials: int, seed: int = 0, bound: int = 10**6) -> MinNSummary:
    """Smallest covering width per sampled matrix, grown one tile at a time.

    Tiled matrices (k >= 1) count the ``alpha`` constant columns, whose
    vectors are then not required of the core, matching :func:`sufficient_n`.
    ``k = 0`` samples the i.i.d. model without augmentation.
    """
    work = math.comb(params.m, params.t) * params.alpha**params.t
    if work > bound:
        raise WorkBoundExceeded(f"C(m,t)*alpha^t = {work} exceeds work bound {bound}")
    report = sufficient_n(params, k)
    combos = row_combinations(params.m, params.t)
    aug = params.alpha if k else 0
    skip = None
    if aug:
        # base-alpha codes of the constant vectors (c, c, ..., c)
        skip = [c * (params.alpha**params.t - 1) // (params.alpha - 1) for c in range(params.alpha)]
    block = params.alpha * k if k else 1
    start = max(block, 2 * report.n_core)
    values = [_min_columns(params, k, derive_seed(seed, i), start, combos, skip) + aug for i in range(trials)]
    return MinNSummary(values, report.sufficient_n)


__all__ = [
    "EstimateReport",
    "MinNSummary",
    "WorkBoundExceeded",
    "empirical_min_n",
    "enumerate_gamma",
    "estimate_gamma",
    "estimate_lambda",
    "tile_arrangements",
    "write_csv",
]
