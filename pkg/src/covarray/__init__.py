"""Covering arrays under the tiled probability model.

Exact Lovasz Local Lemma bounds on the number of columns of a t-alpha
covering array, random tiled constructions with Moser-Tardos resampling,
an exhaustive verifier, and Monte-Carlo cross-checks.
"""

from covarray.bounds import (
    BoundReport,
    CoveringParams,
    TileSpec,
    coefficient,
    coefficient_baseline,
    coefficient_tiled,
    dependency_degree_plus_one,
    gamma_k,
    lll_check,
    paper_table,
    sufficient_n,
)
from covarray.construct import ConstructionFailure, ConstructionLog, construct
from covarray.kernels import BACKEND
from covarray.model import ArrayMatrix, load_matrix, sample_array, sample_iid_array, save_matrix
from covarray.verify import coverage_stats, is_covering, missing_tuples

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ArrayMatrix",
    "BoundReport",
    "ConstructionFailure",
    "ConstructionLog",
    "CoveringParams",
    "TileSpec",
    "coefficient",
    "coefficient_baseline",
    "coefficient_tiled",
    "construct",
    "coverage_stats",
    "dependency_degree_plus_one",
    "gamma_k",
    "is_covering",
    "lll_check",
    "load_matrix",
    "missing_tuples",
    "paper_table",
    "sample_array",
    "sample_iid_array",
    "save_matrix",
    "sufficient_n",
]
