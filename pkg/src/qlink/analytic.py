"""Closed-form failure probabilities for teleporting encoded blocks.

Every quantity is evaluated in one of two modes. LEADING_ORDER keeps only
the lowest failure mode, C(n, m) * p^m with m = (d + 1) / 2, which is the
approximation behind the allowable-error-rate reference table (the table3
command). EXACT_TAIL evaluates the full binomial tail P(errors >= m) and
compounds failures over teleportations without linearizing; it exists as
the independent cross-check on the approximation and as the reference the
Monte Carlo engine is tested against.

Binomial coefficients are computed in exact integer arithmetic (math.comb)
before conversion to float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .codes import CodeStack, parse_stack

# Linearizing 1 - (1 - p_e)^t to t * p_e is only honest while t * p_e is
# small; estimates past this threshold are flagged.
LINEARIZATION_LIMIT = 0.1

# Default axes of the allowable-error-rate reference table: the three
# workload sizes crossed with no coding, the two stock codes, and all four
# two-level combinations of them.
TABLE3_T_VALUES = (1e5, 1e8, 1e11)
TABLE3_STACKS = (
    "none",
    "7-1-3",
    "23-1-7",
    "7-1-3+7-1-3",
    "23-1-7+7-1-3",
    "7-1-3+23-1-7",
    "23-1-7+23-1-7",
)


class ModelMode(str, Enum):
    LEADING_ORDER = "leading"
    EXACT_TAIL = "exact"


def _check_prob(value: float, name: str, upper: float = 1.0) -> None:
    if not 0.0 <= value <= upper:
        raise ValueError(f"{name} must be in [0, {upper}], got {value}")


@dataclass(frozen=True)
class FailureQuery:
    """One whole-computation reliability question: stack, workload, rates."""

    stack: CodeStack
    t: float
    target_pf: float
    p_t: float | None = None

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"need t >= 1, got {self.t}")
        if not 0.0 < self.target_pf < 1.0:
            raise ValueError(f"target_pf must be in (0, 1), got {self.target_pf}")
        if self.p_t is not None and not 0.0 <= self.p_t < 0.5:
            raise ValueError(f"p_t must be in [0, 0.5) for inversion queries, got {self.p_t}")


def p_success_unencoded(t: float, p_t: float) -> float:
    """Probability that all t teleportations of a bare qubit succeed: (1-p_t)^t."""
    _check_prob(p_t, "p_t")
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    return (1.0 - p_t) ** t


def p_block_error(n: int, m: int, p_t: float, mode: ModelMode = ModelMode.LEADING_ORDER) -> float:
    """Probability that a block of n qubits suffers an uncorrectable error count.

    LEADING_ORDER returns C(n, m) * p_t^m, the single lowest failure mode.
    EXACT_TAIL returns P(X >= m) for X ~ Binomial(n, p_t), i.e. m or more
    errors, which is the true uncorrectable-event probability.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    _check_prob(p_t, "p_t")
    if mode is ModelMode.LEADING_ORDER:
        return math.comb(n, m) * p_t**m
    if m == 0:
        return 1.0
    total = 0.0
    for j in range(m, n + 1):
        total += math.comb(n, j) * p_t**j * (1.0 - p_t) ** (n - j)
    return min(total, 1.0)


def p_stack_block_error(stack: CodeStack, p_t: float, mode: ModelMode = ModelMode.LEADING_ORDER) -> float:
    """Logical-block failure probability under a concatenated stack.

    Recurses inner to outer: the failure probability of one level is the
    per-element error rate fed to the level above. The empty stack passes
    p_t through unchanged. Leading-order intermediates are not clamped to
    [0, 1]; they are approximations, not probabilities, and may exceed 1
    outside the small-p_t regime.
    """
    _check_prob(p_t, "p_t")
    q = p_t
    for code in stack.levels:
        if mode is ModelMode.LEADING_ORDER:
            q = math.comb(code.n, code.min_fail) * q**code.min_fail
        else:
            q = p_block_error(code.n, code.min_fail, q, mode)
    return q


@dataclass(frozen=True)
class AlgorithmFailure:
    """Whole-computation failure estimate for t logical teleportations."""

    p_f: float              # 1 - (1 - p_e)^t
    linearized: float       # t * p_e
    block_error: float      # p_e fed into both
    linearization_valid: bool


def p_algorithm_failure(
    stack: CodeStack, t: float, p_t: float, mode: ModelMode = ModelMode.LEADING_ORDER
) -> AlgorithmFailure:
    """Failure probability of a computation using t logical teleportations."""
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    p_e = p_stack_block_error(stack, p_t, mode)
    linearized = t * p_e
    p_f = 1.0 - (1.0 - min(p_e, 1.0)) ** t
    return AlgorithmFailure(
        p_f=p_f,
        linearized=linearized,
        block_error=p_e,
        linearization_valid=linearized <= LINEARIZATION_LIMIT,
    )


def allowable_pt(
    stack: CodeStack, t: float, target_pf: float = 0.1, mode: ModelMode = ModelMode.LEADING_ORDER
) -> float:
    """Largest teleportation error rate keeping the computation failure at target.

    LEADING_ORDER inverts the linearized chain in closed form, peeling levels
    outer to inner: q -> (q / C(n, m))^(1/m), starting from target_pf / t.
    EXACT_TAIL bisects the monotone map p_t -> p_f over (0, 0.5) to 1e-9
    relative width.
    """
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    if not 0.0 < target_pf < 1.0:
        raise ValueError(f"target_pf must be in (0, 1), got {target_pf}")

    if mode is ModelMode.LEADING_ORDER:
        q = target_pf / t
        for code in reversed(stack.levels):
            q = (q / math.comb(code.n, code.min_fail)) ** (1.0 / code.min_fail)
        return q

    lo, hi = 0.0, 0.5
    if p_algorithm_failure(stack, t, hi, mode).p_f <= target_pf:
        return hi
    # p_f(0) = 0 < target, p_f(hi) > target: the root is bracketed.
    while hi - lo > 1e-9 * hi:
        mid = 0.5 * (lo + hi)
        if p_algorithm_failure(stack, t, mid, mode).p_f <= target_pf:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class Table3Row:
    stack: str
    scale_up: int
    t: float
    mode: ModelMode
    allowable_pt: float


def table3(
    t_values=None,
    stacks=None,
    target_pf: float = 0.1,
    mode: ModelMode = ModelMode.LEADING_ORDER,
) -> list[Table3Row]:
    """Allowable teleportation error rate per stack and workload size.

    Defaults reproduce the reference table: seven stacks crossed with
    t in {1e5, 1e8, 1e11} at a 10% whole-computation failure budget.
    """
    if t_values is None:
        t_values = TABLE3_T_VALUES
    if stacks is None:
        stacks = [parse_stack(s) for s in TABLE3_STACKS]
    rows = []
    for stack in stacks:
        for t in t_values:
            rows.append(
                Table3Row(
                    stack=stack.spec(),
                    scale_up=stack.scale_up,
                    t=float(t),
                    mode=mode,
                    allowable_pt=allowable_pt(stack, t, target_pf, mode),
                )
            )
    return rows
