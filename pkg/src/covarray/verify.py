"""Exhaustive check of the t-alpha covering property.

For every set of ``t`` rows and every vector in ``{1..alpha}^t`` there must
be a column whose restriction to those rows equals the vector. Row sets
are enumerated in lexicographic order and vectors in lexicographic order
within a row set, so reports are reproducible.

Row indices in reports are 0-based; vector letters are 1-based.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

import numpy as np

from covarray import kernels

METHODS = ("hash", "naive")


def row_combinations(m: int, t: int) -> np.ndarray:
    """All t-subsets of range(m) in lexicographic order, shape (C(m,t), t)."""
    return np.array(list(combinations(range(m), t)), dtype=np.intp).reshape(-1, t)


def decode_vector(code: int, alpha: int, t: int) -> tuple[int, ...]:
    letters = []
    for _ in range(t):
        code, d = divmod(code, alpha)
        letters.append(d + 1)
    return tuple(reversed(letters))


def encode_vector(vector, alpha: int) -> int:
    code = 0
    for v in vector:
        code = code * alpha + (v - 1)
    return code


def _check(matrix, t):
    if t < 1 or t > matrix.rows:
        raise ValueError(f"need 1 <= t <= m, got t={t}, m={matrix.rows}")


def _naive_counts(matrix, t):
    # direct scan of every (row set, vector, column); differential oracle only
    rows = matrix.entries.tolist()
    n = matrix.cols
    combos = list(combinations(range(matrix.rows), t))
    vectors = list(product(range(1, matrix.alpha + 1), repeat=t))
    counts = np.zeros((len(combos), len(vectors)), dtype=np.uint32)
    for c, rs in enumerate(combos):
        picked = [rows[r] for r in rs]
        for v, vec in enumerate(vectors):
            counts[c, v] = sum(1 for col in range(n) if all(picked[j][col] == vec[j] for j in range(t)))
    return counts


def witness_counts(matrix, t: int, method: str = "hash") -> np.ndarray:
    """Witness count for every (row set, vector) pair, shape (C(m,t), alpha**t)."""
    _check(matrix, t)
    if method == "hash":
        return kernels.witness_counts(matrix.entries, row_combinations(matrix.rows, t), matrix.alpha)
    if method == "naive":
        return _naive_counts(matrix, t)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def is_covering(matrix, t: int, method: str = "hash") -> bool:
    return bool((witness_counts(matrix, t, method) > 0).all())


@dataclass
class DeficiencyReport:
    missing: list[tuple[tuple[int, ...], tuple[int, ...]]]
    total_checked: int

    @property
    def is_covering(self) -> bool:
        return not self.missing

    def to_json_lines(self) -> str:
        lines = [json.dumps({"row_set": list(rs), "missing_vector": list(v)}) for rs, v in self.missing]
        lines.append(
            json.dumps(
                {"total_checked": self.total_checked, "missing_count": len(self.missing), "is_covering": self.is_covering}
            )
        )
        return "\n".join(lines) + "\n"


def missing_tuples(matrix, t: int, method: str = "hash") -> DeficiencyReport:
    counts = witness_counts(matrix, t, method)
    combos = row_combinations(matrix.rows, t)
    missing = [
        (tuple(int(r) for r in combos[c]), decode_vector(int(code), matrix.alpha, t))
        for c, code in zip(*np.nonzero(counts == 0))
    ]
    return DeficiencyReport(missing, comb(matrix.rows, t) * matrix.alpha**t)


@dataclass
class CoverageStats:
    covered: int
    total: int
    min_witness_per_rowset: np.ndarray = field(repr=False)

    @property
    def min_witness(self) -> int:
        return int(self.min_witness_per_rowset.min()) if self.min_witness_per_rowset.size else 0


def coverage_stats(matrix, t: int, method: str = "hash") -> CoverageStats:
    counts = witness_counts(matrix, t, method)
    return CoverageStats(int((counts > 0).sum()), int(counts.size), counts.min(axis=1))
