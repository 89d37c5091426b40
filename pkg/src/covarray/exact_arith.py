"""Exact integer and rational combinatorics.

Python ``int`` is arbitrary precision and ``fractions.Fraction`` keeps
itself in lowest terms with a positive denominator, so those serve as the
exact integer and rational types throughout the package. Nothing in this
module touches floating point.
"""

from fractions import Fraction
from math import comb, factorial, prod

__all__ = ["Fraction", "binomial", "multinomial", "rational_pow", "rational_to_json", "rational_from_json"]


def binomial(n: int, r: int) -> int:
    """C(n, r), with the convention C(n, r) = 0 for r < 0 or r > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if r < 0 or r > n:
        return 0
    return comb(n, r)


def multinomial(n: int, parts) -> int:
    """n! / prod(p! for p in parts)."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {parts}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts {parts} do not sum to {n}")
    return factorial(n) // prod(factorial(p) for p in parts)


def rational_pow(base, e: int) -> Fraction:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return Fraction(base) ** e


def rational_to_json(x: Fraction) -> dict:
    # decimal strings: numerators outgrow JSON number precision quickly
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))
