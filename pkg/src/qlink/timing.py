"""Link timing model: serial vs parallel transfer of an encoded block.

A serial link moves the block one qubit per teleportation time t_t, so the
local correction that follows the transfer starts n times later than on a
fully parallel link, but the cycle time only stretches by n * t_t against
t_t + t_lqec. When local correction dominates, the slowdown is small, and a
serial link is recommended whenever both that slowdown and the memory-error
penalty stay under configurable thresholds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .codes import QecCode
from .montecarlo import Multiplexing, combined_failure_analytic

DEFAULT_SLOWDOWN_THRESHOLD = 1.5
DEFAULT_RELIABILITY_THRESHOLD = 1.5


@dataclass(frozen=True)
class TimingParams:
    """Teleportation time, local-correction time, and block size (one unit)."""

    t_t: float
    t_lqec: float
    n: int
    lanes: int = 1

    def __post_init__(self):
        if self.t_t <= 0:
            raise ValueError(f"t_t must be > 0, got {self.t_t}")
        if self.t_lqec < 0:
            raise ValueError(f"t_lqec must be >= 0, got {self.t_lqec}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.lanes < 1:
            raise ValueError(f"lanes must be >= 1, got {self.lanes}")


@dataclass(frozen=True)
class CycleTimes:
    serial: float
    parallel: float
    slowdown: float
    start_delay_factor: int   # rounds before correction can begin, serial vs parallel


def cycle_times(params: TimingParams) -> CycleTimes:
    """Transfer-plus-correction cycle time for both link styles.

    With `lanes` channels the block crosses in ceil(n / lanes) rounds; one
    lane is the serial case, n lanes the parallel one.
    """
    rounds = math.ceil(params.n / params.lanes)
    serial = rounds * params.t_t + params.t_lqec
    parallel = params.t_t + params.t_lqec
    return CycleTimes(
        serial=serial,
        parallel=parallel,
        slowdown=serial / parallel,
        start_delay_factor=rounds,
    )


@dataclass(frozen=True)
class Recommendation:
    choice: Multiplexing
    slowdown: float
    reliability_ratio: float
    slowdown_threshold: float
    reliability_threshold: float
    reasons: tuple[str, ...]


def recommend(
    params: TimingParams,
    code: QecCode,
    p_t: float,
    p_m: float,
    slowdown_threshold: float = DEFAULT_SLOWDOWN_THRESHOLD,
    reliability_threshold: float = DEFAULT_RELIABILITY_THRESHOLD,
) -> Recommendation:
    """Pick a link style for transferring one block of the given code.

    Serial wins when both penalties are acceptable: the cycle-time slowdown
    and the ratio of combined (memory plus teleportation) block failure to
    the teleportation-only one.
    """
    times = cycle_times(params)
    combined = combined_failure_analytic(code.n, code.min_fail, p_t, p_m)
    teleport_only = combined_failure_analytic(code.n, code.min_fail, p_t, 0.0)
    if teleport_only > 0:
        ratio = combined / teleport_only
    else:
        ratio = 1.0 if combined == 0 else math.inf

    reasons = []
    if times.slowdown > slowdown_threshold:
        reasons.append(
            f"cycle slowdown {times.slowdown:.4g} exceeds threshold {slowdown_threshold:g}"
        )
    if ratio > reliability_threshold:
        reasons.append(
            f"failure-probability ratio {ratio:.4g} exceeds threshold {reliability_threshold:g}"
        )
    choice = Multiplexing.PARALLEL if reasons else Multiplexing.SERIAL
    if not reasons:
        reasons.append("slowdown and reliability penalties both within thresholds")
    return Recommendation(
        choice=choice,
        slowdown=times.slowdown,
        reliability_ratio=ratio,
        slowdown_threshold=slowdown_threshold,
        reliability_threshold=reliability_threshold,
        reasons=tuple(reasons),
    )
