"""Independent oracles shared across the test suite.

Everything here deliberately avoids the library's own code paths: binomial
coefficients come from Pascal's triangle, tails from explicit enumeration,
and rounding from decimal arithmetic.
"""
import math
from decimal import ROUND_HALF_UP, Decimal


def round_sig(value: float, figs: int) -> float:
    """Round to a number of significant figures, halves away from zero."""
    if value == 0:
        return 0.0
    exponent = math.floor(math.log10(abs(value)))
    quantum = Decimal(1).scaleb(exponent - figs + 1)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def pascal_row(n: int) -> list[int]:
    """Row n of Pascal's triangle, built by addition only."""
    row = [1]
    for _ in range(n):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
    return row


def weight_tail(n: int, m: int, p: float) -> float:
    """P(at least m errors) summed over error weights."""
    coefficients = pascal_row(n)
    return sum(coefficients[w] * p**w * (1.0 - p) ** (n - w) for w in range(m, n + 1))


def pattern_tail(n: int, m: int, p: float) -> float:
    """P(at least m errors) summed over all 2^n error patterns."""
    total = 0.0
    for bits in range(1 << n):
        weight = bin(bits).count("1")
        if weight >= m:
            total += p**weight * (1.0 - p) ** (n - weight)
    return total
