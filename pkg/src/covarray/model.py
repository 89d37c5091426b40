"""Random matrices under the i.i.d. and tiled probability models.

Row ``r`` of a tiled matrix draws from its own counter-based Philox stream
keyed by ``(seed, r)``; tile ``j`` consumes the ``j``-th block of that
stream. Rows can therefore be generated in any order or in parallel, and
widening a matrix only appends tiles: the first ``n`` columns of a wider
sample equal the narrower sample with the same seed.
"""

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from covarray.bounds import CoveringParams, TileSpec


@dataclass(eq=False)
class ArrayMatrix:
    """An ``m x n`` matrix over the letters ``1..alpha``.

    ``provenance`` is ``"iid"``, ``"tiled"`` or ``"file"``. For tiled
    matrices the last ``augmentation_columns`` columns are the constant
    columns ``1, 2, ..., alpha`` and everything before them is the tiled core.
    """

    entries: np.ndarray
    alpha: int
    provenance: str = "file"
    k: int | None = None
    augmentation_columns: int = 0

    def __post_init__(self):
        raw = np.asarray(self.entries)
        if raw.ndim != 2:
            raise ValueError("entries must be a 2-D array")
        if self.alpha < 1 or self.alpha > 255:
            raise ValueError(f"alphabet size {self.alpha} outside 1..255")
        if raw.size and (raw.min() < 1 or raw.max() > self.alpha):
            raise ValueError(f"entries must lie in 1..{self.alpha}")
        self.entries = np.ascontiguousarray(raw, dtype=np.uint8)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def n_core(self) -> int:
        return self.cols - self.augmentation_columns

    @property
    def core(self) -> np.ndarray:
        return self.entries[:, : self.n_core]

    def equals(self, other: "ArrayMatrix") -> bool:
        return self.alpha == other.alpha and np.array_equal(self.entries, other.entries)

    def drop_column(self, j: int) -> "ArrayMatrix":
        return ArrayMatrix(np.delete(self.entries, j, axis=1), self.alpha)

    def __repr__(self):
        return f"ArrayMatrix(m={self.rows}, n={self.cols}, alpha={self.alpha}, provenance={self.provenance!r})"


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit seed for the sub-task identified by ``keys``."""
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1, np.uint64)[0])


def row_stream(seed: int, row: int) -> np.random.Generator:
    """Counter-based stream for one matrix row."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, row])))


def tile_letters(alpha: int, k: int) -> np.ndarray:
    return np.repeat(np.arange(1, alpha + 1, dtype=np.uint8), k)


def sample_tiles(count: int, alpha: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform arrangements of {1^k, ..., alpha^k}, shape (count, k*alpha)."""
    base = tile_letters(alpha, k)
    keys = rng.random((count, base.size))
    return base[np.argsort(keys, axis=1)]


def sample_tiled_row(n_core: int, alpha: int, k: int, rng: np.random.Generator) -> np.ndarray:
    tiles = TileSpec(k, alpha).tile_count(n_core)
    return sample_tiles(tiles, alpha, k, rng).reshape(-1)


def constant_columns(m: int, alpha: int) -> np.ndarray:
    return np.tile(np.arange(1, alpha + 1, dtype=np.uint8), (m, 1))


def sample_array(params: CoveringParams, n_core: int, k: int, augment: bool = True, seed: int = 0) -> ArrayMatrix:
    """Tiled random matrix with ``n_core`` core columns, plus ``alpha`` constant columns if ``augment``."""
    TileSpec(k, params.alpha).tile_count(n_core)
    core = np.empty((params.m, n_core), dtype=np.uint8)
    for r in range(params.m):
        core[r] = sample_tiled_row(n_core, params.alpha, k, row_stream(seed, r))
    aug = params.alpha if augment else 0
    if augment:
        core = np.hstack([core, constant_columns(params.m, params.alpha)])
    return ArrayMatrix(core, params.alpha, "tiled", k, aug)


def sample_iid_array(params: CoveringParams, n: int, seed: int = 0) -> ArrayMatrix:
    """Each entry uniform on 1..alpha, independently.

    Draws are made column by column, so widening ``n`` keeps earlier columns.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    entries = rng.integers(1, params.alpha + 1, size=(n, params.m), dtype=np.uint8).T
    return ArrayMatrix(entries, params.alpha, "iid")


def resample_rows(matrix: ArrayMatrix, rows, rng: np.random.Generator) -> None:
    """Redraw every core tile of ``rows`` in place; augmentation columns stay fixed."""
    if matrix.provenance != "tiled":
        raise ValueError("only tiled matrices can be resampled tile-wise")
    spec = TileSpec(matrix.k, matrix.alpha)
    tiles = spec.tile_count(matrix.n_core)
    for r in rows:
        matrix.entries[r, : matrix.n_core] = sample_tiles(tiles, matrix.alpha, matrix.k, rng).reshape(-1)


def tile_invariant_holds(matrix: ArrayMatrix) -> bool:
    """Every core tile of every row holds exactly ``k`` copies of each letter."""
    spec = TileSpec(matrix.k, matrix.alpha)
    tiles = spec.tile_count(matrix.n_core)
    if tiles == 0:
        return True
    blocks = matrix.core.reshape(matrix.rows, tiles, spec.width).astype(np.intp) - 1
    counts = np.zeros((matrix.rows, tiles, matrix.alpha), dtype=np.intp)
    np.add.at(counts, (np.arange(matrix.rows)[:, None, None], np.arange(tiles)[None, :, None], blocks), 1)
    return bool((counts == matrix.k).all())


def dumps_matrix(matrix: ArrayMatrix) -> str:
    out = io.StringIO()
    out.write(f"{matrix.rows} {matrix.cols} {matrix.alpha}\n")
    for row in matrix.entries:
        out.write(" ".join(map(str, row.tolist())) + "\n")
    return out.getvalue()


def loads_matrix(text: str) -> ArrayMatrix:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty matrix file")
    try:
        m, n, alpha = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}; expected 'm n alpha'") from None
    body = lines[1 : 1 + m]
    if len(body) != m:
        raise ValueError(f"expected {m} rows, found {len(body)}")
    entries = np.zeros((m, n), dtype=np.int64)
    for i, line in enumerate(body):
        vals = line.split()
        if len(vals) != n:
            raise ValueError(f"row {i} has {len(vals)} entries, expected {n}")
        entries[i] = [int(v) for v in vals]
    if entries.size and (entries.min() < 1 or entries.max() > alpha):
        raise ValueError(f"entries must lie in 1..{alpha}")
    return ArrayMatrix(entries, alpha)


def save_matrix(matrix: ArrayMatrix, path) -> None:
    Path(path).write_text(dumps_matrix(matrix))


def load_matrix(path) -> ArrayMatrix:
    return loads_matrix(Path(path).read_text())
