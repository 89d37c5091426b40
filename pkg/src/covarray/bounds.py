"""Lovasz Local Lemma upper bounds on covering-array size under the tiled model.

A row of the random matrix is cut into consecutive tiles of width
``k * alpha``; each tile is an independent uniform arrangement of the
multiset holding ``k`` copies of every letter. ``gamma_k`` is the chance
that a fixed ``t``-letter vector shows up in some column of ``t`` stacked
tiles, so a fixed vector is missing from a row set with probability
``(1 - gamma_k) ** (n / (k * alpha))``.

``k = 0`` selects the i.i.d. entry model (each cell uniform on the
alphabet), which gives the older baseline bound.

All probabilities are exact ``Fraction`` values; floats appear only when
taking logarithms and in the constant ``e``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from covarray.exact_arith import binomial, multinomial, rational_to_json

LOG2_E = math.log2(math.e)

# (alpha, t, k) triples of the published comparison table; k = 0 is the i.i.d. baseline.
TABLE_TRIPLES = [
    (2, 3, 0), (2, 3, 1), (2, 3, 2), (2, 3, 3),
    (2, 4, 0), (2, 4, 1), (2, 4, 2), (2, 4, 3),
    (3, 3, 0), (3, 3, 1), (3, 3, 3), (3, 3, 5),
    (3, 4, 0), (3, 4, 1), (3, 4, 3), (3, 4, 5),
    (4, 3, 0), (4, 3, 2), (4, 3, 4), (4, 3, 6),
    (4, 4, 0), (4, 4, 2), (4, 4, 4), (4, 4, 6),
    (5, 4, 0), (5, 4, 2), (5, 4, 4), (5, 4, 6),
    (5, 5, 0), (5, 5, 2), (5, 5, 4), (5, 5, 6),
]  # fmt: skip

MODES = ("exact", "paper")


@dataclass(frozen=True)
class CoveringParams:
    """Rows ``m``, strength ``t`` and alphabet size ``alpha``."""

    m: int
    t: int
    alpha: int

    def __post_init__(self):
        if self.t < 2:
            raise ValueError(f"strength t must be >= 2, got {self.t}")
        if self.alpha < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.alpha}")
        if self.m < self.t:
            raise ValueError(f"need m >= t, got m={self.m}, t={self.t}")


@dataclass(frozen=True)
class TileSpec:
    k: int
    alpha: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"tile multiplicity k must be >= 1, got {self.k}")
        if self.alpha < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.alpha}")

    @property
    def width(self) -> int:
        return self.k * self.alpha

    def tile_count(self, n_core: int) -> int:
        if n_core < 0 or n_core % self.width:
            raise ValueError(f"core width {n_core} is not a multiple of the tile width {self.width}")
        return n_core // self.width


def _check_alpha_t(alpha, t, min_t=2):
    if alpha < 2:
        raise ValueError(f"alphabet size must be >= 2, got {alpha}")
    if t < min_t:
        raise ValueError(f"strength t must be >= {min_t}, got {t}")


def gamma_terms(alpha: int, t: int, k: int, form: str = "binomial") -> list[Fraction]:
    """The signed inclusion-exclusion terms whose sum is ``gamma_k``.

    ``form="binomial"`` uses C(ak-i, k-i) / C(ak, k); ``form="multinomial"``
    uses the ratio of multinomial coefficients over the full letter multiset.
    The two agree term by term.
    """
    if k < 1:
        raise ValueError(f"tile multiplicity k must be >= 1, got {k}")
    _check_alpha_t(alpha, t, min_t=1)
    w = alpha * k
    terms = []
    if form == "binomial":
        den = binomial(w, k) ** t
        for i in range(1, k + 1):
            num = binomial(w, i) * binomial(w - i, k - i) ** t
            terms.append(Fraction((-1) ** (i + 1) * num, den))
    elif form == "multinomial":
        den = multinomial(w, [k] * alpha) ** t
        for i in range(1, k + 1):
            num = binomial(w, i) * multinomial(w - i, [k - i] + [k] * (alpha - 1)) ** t
            terms.append(Fraction((-1) ** (i + 1) * num, den))
    else:
        raise ValueError(f"unknown form {form!r}")
    return terms


def gamma_k(alpha: int, t: int, k: int) -> Fraction:
    """Probability that a fixed t-vector appears in some column of t stacked tiles."""
    if k < 1:
        raise ValueError(f"tile multiplicity k must be >= 1, got {k}")
    _check_alpha_t(alpha, t, min_t=1)
    w = alpha * k
    num = sum((-1) ** (i + 1) * binomial(w, i) * binomial(w - i, k - i) ** t for i in range(1, k + 1))
    return Fraction(num, binomial(w, k) ** t)


def neg_log2_complement(g: Fraction) -> float:
    """-log2(1 - g) for an exact probability ``g`` in [0, 1]."""
    g = Fraction(g)
    if g == 1:
        return math.inf
    if g <= Fraction(1, 2):
        # log1p keeps full relative precision when g is tiny
        return -math.log1p(-float(g)) / math.log(2)
    q = 1 - g
    return math.log2(q.denominator) - math.log2(q.numerator)


def coefficient_baseline(alpha: int, t: int) -> float:
    """Multiplier of log2(m) in the i.i.d.-model bound: (t-1) / log2(a^t / (a^t - 1))."""
    _check_alpha_t(alpha, t)
    return (t - 1) / neg_log2_complement(Fraction(1, alpha**t))


def coefficient_tiled(alpha: int, t: int, k: int) -> float:
    """Multiplier of log2(m) in the tiled bound: k*a*(t-1) / log2(1 / (1 - gamma_k))."""
    _check_alpha_t(alpha, t)
    return k * alpha * (t - 1) / neg_log2_complement(gamma_k(alpha, t, k))


def coefficient_k1_closed_form(alpha: int, t: int) -> float:
    """a(t-1) / log2(a^(t-1) / (a^(t-1) - 1)), computed without gamma_k."""
    _check_alpha_t(alpha, t)
    return alpha * (t - 1) * math.log(2) / -math.log1p(-1.0 / alpha ** (t - 1))


def coefficient(alpha: int, t: int, k: int) -> float:
    """Tiled coefficient for k >= 1, baseline for k = 0."""
    if k == 0:
        return coefficient_baseline(alpha, t)
    return coefficient_tiled(alpha, t, k)


def dependency_degree_plus_one(m: int, t: int, mode: str = "exact"):
    """Upper bound on d + 1 where d counts row sets sharing a row with a given one.

    ``exact`` returns the integer t*C(m-1, t-1) + 1; ``paper`` returns the
    looser t*m^(t-1)/(t-1)! as a float.
    """
    if not 2 <= t <= m:
        raise ValueError(f"need 2 <= t <= m, got t={t}, m={m}")
    if mode == "exact":
        return t * binomial(m - 1, t - 1) + 1
    try:
        return float(_dependency_fraction(m, t, mode))
    except OverflowError:
        return math.inf


def _dependency_fraction(m, t, mode):
    if mode == "exact":
        return Fraction(t * binomial(m - 1, t - 1) + 1)
    if mode == "paper":
        return Fraction(t * m ** (t - 1), math.factorial(t - 1))
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class _Model:
    gamma: Fraction
    block: int  # columns per independent block
    augmentation: int
    vectors: int  # bad vectors per row set


def _model(alpha, t, k):
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return _Model(Fraction(1, alpha**t), 1, 0, alpha**t)
    return _Model(gamma_k(alpha, t, k), k * alpha, alpha, alpha**t - alpha)


def _e_interval(terms):
    s = Fraction(0)
    f = 1
    for i in range(terms + 1):
        if i:
            f *= i
        s += Fraction(1, f)
    # tail of the series is below 2/(terms+1)!
    return s, s + Fraction(2, f * (terms + 1))


def _exact_lll(q: Fraction) -> bool:
    """Decide e*q <= 1 exactly by bracketing e with rational series bounds."""
    terms = 40
    while True:
        lo, hi = _e_interval(terms)
        if q * hi <= 1:
            return True
        if q * lo > 1:
            return False
        terms *= 2


def lll_check(params: CoveringParams, k: int, n: int, mode: str = "exact"):
    """Symmetric LLL condition e*p*(d+1) <= 1 at ``n`` core columns.

    p = (a^t - a) * (1 - gamma_k)^(n/(k a)) (for k = 0: a^t * (1 - a^-t)^n).
    Returns ``(satisfied, product)``; the product is a float and may
    underflow to 0.0 or overflow to inf.
    """
    model = _model(params.alpha, params.t, k)
    if n <= 0 or n % model.block:
        raise ValueError(f"n={n} must be a positive multiple of the tile width {model.block}; round up first")
    blocks = n // model.block
    dep = _dependency_fraction(params.m, params.t, mode)
    fixed = LOG2_E + math.log2(model.vectors) + math.log2(dep.numerator) - math.log2(dep.denominator)
    decay = blocks * neg_log2_complement(model.gamma)
    log_product = fixed - decay
    if abs(log_product) < 1e-12 * max(1.0, fixed, decay):
        q = model.vectors * dep * (1 - model.gamma) ** blocks
        satisfied = _exact_lll(q)
    else:
        satisfied = log_product <= 0
    product = math.inf if log_product > 1023 else 2.0**log_product
    return satisfied, product


@dataclass
class BoundReport:
    """Finite LLL answer for one parameter set.

    ``sufficient_n`` counts all columns: ``n_core`` tiled columns (a multiple
    of the tile width) plus ``augmentation_columns`` constant columns.
    """

    params: CoveringParams
    k: int
    mode: str
    coefficient: float
    n_core: int
    augmentation_columns: int
    gamma: Fraction
    dependency_degree_plus_one: object
    lll_product: float
    _vectors: int = field(repr=False)
    _block: int = field(repr=False)

    @property
    def sufficient_n(self) -> int:
        return self.n_core + self.augmentation_columns

    @cached_property
    def p_bound(self) -> Fraction:
        return self._vectors * (1 - self.gamma) ** (self.n_core // self._block)

    def to_json(self) -> dict:
        return {
            "m": self.params.m,
            "t": self.params.t,
            "alpha": self.params.alpha,
            "k": self.k,
            "mode": self.mode,
            "gamma": rational_to_json(self.gamma),
            "coefficient": self.coefficient,
            "sufficient_n": self.sufficient_n,
            "lll_product": self.lll_product,
            "augmentation_columns": self.augmentation_columns,
        }


def sufficient_n(params: CoveringParams, k: int, mode: str = "exact") -> BoundReport:
    """Smallest tile-aligned core width satisfying the LLL condition, plus augmentation.

    Starts from the closed-form threshold and scans in whole tiles until
    the core width is the least multiple of the tile width that passes
    :func:`lll_check`.
    """
    model = _model(params.alpha, params.t, k)
    dep = _dependency_fraction(params.m, params.t, mode)
    need = LOG2_E + math.log2(model.vectors) + math.log2(dep.numerator) - math.log2(dep.denominator)
    blocks = max(1, math.ceil(need / neg_log2_complement(model.gamma)))
    while blocks > 1 and lll_check(params, k, (blocks - 1) * model.block, mode)[0]:
        blocks -= 1
    while not lll_check(params, k, blocks * model.block, mode)[0]:
        blocks += 1
    n_core = blocks * model.block
    _, product = lll_check(params, k, n_core, mode)
    return BoundReport(
        params=params,
        k=k,
        mode=mode,
        coefficient=coefficient(params.alpha, params.t, k),
        n_core=n_core,
        augmentation_columns=model.augmentation,
        gamma=model.gamma,
        dependency_degree_plus_one=dependency_degree_plus_one(params.m, params.t, mode),
        lll_product=product,
        _vectors=model.vectors,
        _block=model.block,
    )


def paper_table(rounded: bool = True) -> list[tuple[int, int, int, float]]:
    """Recompute the 32-row comparison table of N(m,t,a)/log2(m) coefficients."""
    rows = []
    for alpha, t, k in TABLE_TRIPLES:
        c = coefficient(alpha, t, k)
        rows.append((alpha, t, k, round(c, 2) if rounded else c))
    return rows


def format_table(rows) -> str:
    lines = [f"{'alpha':>5} {'t':>3} {'k':>3} {'N/log2(m)':>12}"]
    for alpha, t, k, c in rows:
        lines.append(f"{alpha:>5} {t:>3} {k:>3} {c:>12.2f}")
    return "\n".join(lines) + "\n"
