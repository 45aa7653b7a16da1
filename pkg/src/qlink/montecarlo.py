"""Trial-level simulation of logical-block transfer over serial or parallel links.

Each trial teleports one logical block of N = scale_up(stack) physical
qubits. A qubit is faulty iff it suffered at least one error event: a
teleportation error (probability p_t), or, when qubits wait their turn on a
narrower link, a memory error during the wait (probability
p'_m = 1 - (1 - p_m)^slots over the wait slots). Because only the union of
the two events is observable, each qubit consumes exactly one uniform draw,
compared against the combined fault probability; serial and parallel runs
with the same seed therefore share draws, and the serial failure set
dominates the parallel one trial by trial.

Reproducibility contract: trials are grouped in fixed blocks of 2**14, and
block j draws from the Philox substream jumped(j) of the master seed. The
mapping from trial index to draws never depends on worker count, so any
partitioning of blocks across workers gives bit-identical failure counts.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .codes import CodeStack, QecCode

TRIAL_BLOCK = 1 << 14
Z_95 = 1.959963984540054   # two-sided 95% normal quantile
Z_3SIGMA = 3.0


class Multiplexing(str, Enum):
    SERIAL = "serial"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class LinkParams:
    """Physical link parameters for one block transfer.

    p_t is the per-qubit teleportation failure probability; p_m the
    per-qubit memory error probability per teleportation-slot of waiting.
    SERIAL moves one qubit per slot (lanes must be 1); PARALLEL with
    lanes >= block size has no wait slots at all, and intermediate lane
    counts wait ceil(N / lanes) - 1 slots.
    """

    p_t: float
    p_m: float = 0.0
    multiplexing: Multiplexing = Multiplexing.PARALLEL
    lanes: int = 1

    def __post_init__(self):
        for name in ("p_t", "p_m"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.lanes < 1:
            raise ValueError(f"lanes must be >= 1, got {self.lanes}")
        if self.multiplexing is Multiplexing.SERIAL and self.lanes != 1:
            raise ValueError("serial links have exactly one lane")

    def wait_slots(self, block_size: int) -> int:
        """Memory wait slots each qubit spends while the rest of the block moves."""
        if self.multiplexing is Multiplexing.SERIAL:
            return block_size - 1
        if self.lanes >= block_size:
            return 0
        return math.ceil(block_size / self.lanes) - 1

    def fault_probability(self, block_size: int) -> float:
        """Per-qubit probability of at least one error event during transfer."""
        slots = self.wait_slots(block_size)
        pm_wait = 1.0 - (1.0 - self.p_m) ** slots
        return 1.0 - (1.0 - self.p_t) * (1.0 - pm_wait)


@dataclass(frozen=True)
class McConfig:
    stack: CodeStack
    link: LinkParams
    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo outcome with a 95% Wilson score interval."""

    trials: int
    failures: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int
    elapsed: float


def wilson_interval(failures: int, trials: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval; behaves sensibly even at 0 or few failures."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= failures <= trials:
        raise ValueError("failures must be in [0, trials]")
    p_hat = failures / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (p_hat + z2n / 2.0) / denom
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2n / (4.0 * trials)) / denom
    # Clamp away float dust: the interval always contains p_hat and [0, 1].
    return min(max(0.0, center - half), p_hat), max(min(1.0, center + half), p_hat)


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(block_index))


def _decode(faulty: np.ndarray, stack: CodeStack) -> np.ndarray:
    """Hierarchical majority-of-blocks decode: True where the top level fails."""
    for code in stack.levels:
        counts = faulty.reshape(faulty.shape[0], -1, code.n).sum(axis=2)
        faulty = counts >= code.min_fail
    return faulty.any(axis=1)


def _run_blocks(config: McConfig, per_block) -> list:
    n_blocks = (config.trials + TRIAL_BLOCK - 1) // TRIAL_BLOCK
    if config.workers == 1 or n_blocks == 1:
        return [per_block(j) for j in range(n_blocks)]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(per_block, range(n_blocks)))


def simulate_block_transfer(config: McConfig) -> McEstimate:
    """Estimate the logical-block transfer failure probability by simulation."""
    start = time.perf_counter()
    block_size = config.stack.scale_up
    q = config.link.fault_probability(block_size)

    def per_block(j: int) -> int:
        rows = min(TRIAL_BLOCK, config.trials - j * TRIAL_BLOCK)
        uniforms = _block_rng(config.seed, j).random((rows, block_size))
        return int(_decode(uniforms < q, config.stack).sum())

    failures = sum(_run_blocks(config, per_block))
    ci_low, ci_high = wilson_interval(failures, config.trials)
    return McEstimate(
        trials=config.trials,
        failures=failures,
        p_hat=failures / config.trials,
        ci_low=ci_low,
        ci_high=ci_high,
        seed=config.seed,
        elapsed=time.perf_counter() - start,
    )


def simulate_fault_histogram(config: McConfig) -> np.ndarray:
    """Histogram of faulty physical-qubit counts per trial (before decoding).

    Shares the stream layout of simulate_block_transfer, so histogram[k] at
    index k counts trials in which exactly k of the block's qubits were
    faulty.
    """
    block_size = config.stack.scale_up
    q = config.link.fault_probability(block_size)

    def per_block(j: int) -> np.ndarray:
        rows = min(TRIAL_BLOCK, config.trials - j * TRIAL_BLOCK)
        uniforms = _block_rng(config.seed, j).random((rows, block_size))
        counts = (uniforms < q).sum(axis=1)
        return np.bincount(counts, minlength=block_size + 1)

    return np.sum(_run_blocks(config, per_block), axis=0)


def _exact_errors_term(n: int, j: int, p: float) -> float:
    return math.comb(n, j) * p**j * (1.0 - p) ** (n - j)


def combined_failure_analytic(n: int, m: int, p_t: float, p_m: float) -> float:
    """Probability of m total error events, memory and teleportation combined.

    Convolves the exact binomial term for i memory errors (at the aggregated
    waiting rate p'_m = 1 - (1 - p_m)^(n-1)) with the exact term for m - i
    teleportation errors. This counts events, not faulty qubits: a qubit hit
    by both error kinds contributes two events here but one faulty qubit in
    the simulation, a difference of second order in the error rates.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    for name, value in (("p_t", p_t), ("p_m", p_m)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    pm_wait = 1.0 - (1.0 - p_m) ** (n - 1)
    total = 0.0
    for i in range(m + 1):
        total += _exact_errors_term(n, i, pm_wait) * _exact_errors_term(n, m - i, p_t)
    return total


@dataclass(frozen=True)
class SerialPenaltyReport:
    """Serial-vs-parallel failure penalty for one code, analytic and simulated."""

    code: str
    p_t: float
    p_m: float
    analytic_combined: float
    analytic_teleport_only: float
    analytic_ratio: float
    serial: McEstimate
    parallel: McEstimate
    mc_ratio: float
    mc_ratio_ci: tuple[float, float]


def serial_penalty_report(
    code: QecCode,
    p_t: float,
    memory_ratio: float = 0.1,
    trials: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
) -> SerialPenaltyReport:
    """Quantify the extra failure probability a serial link costs for one code.

    The memory rate follows the p_m = p_t * memory_ratio / (n - 1)
    convention, so memory_ratio = 0.1 makes the aggregated waiting error
    roughly one tenth of the teleportation error. The analytic ratio uses
    the event-count convolution; the simulated ratio compares serial and
    parallel runs sharing the same seed, with a conservative (independence
    assumed) log-normal confidence interval.
    """
    if memory_ratio < 0:
        raise ValueError(f"memory_ratio must be >= 0, got {memory_ratio}")
    p_m = p_t * memory_ratio / (code.n - 1)
    stack = CodeStack((code,))

    combined = combined_failure_analytic(code.n, code.min_fail, p_t, p_m)
    teleport_only = combined_failure_analytic(code.n, code.min_fail, p_t, 0.0)
    analytic_ratio = combined / teleport_only if teleport_only > 0 else math.nan

    serial = simulate_block_transfer(
        McConfig(stack, LinkParams(p_t, p_m, Multiplexing.SERIAL), trials, seed, workers)
    )
    parallel = simulate_block_transfer(
        McConfig(stack, LinkParams(p_t, p_m, Multiplexing.PARALLEL, lanes=code.n), trials, seed, workers)
    )
    if serial.failures > 0 and parallel.failures > 0:
        mc_ratio = serial.p_hat / parallel.p_hat
        spread = Z_95 * math.sqrt(
            (1.0 - serial.p_hat) / serial.failures + (1.0 - parallel.p_hat) / parallel.failures
        )
        ratio_ci = (mc_ratio * math.exp(-spread), mc_ratio * math.exp(spread))
    else:
        mc_ratio = math.nan
        ratio_ci = (0.0, math.inf)

    return SerialPenaltyReport(
        code=code.spec(),
        p_t=p_t,
        p_m=p_m,
        analytic_combined=combined,
        analytic_teleport_only=teleport_only,
        analytic_ratio=analytic_ratio,
        serial=serial,
        parallel=parallel,
        mc_ratio=mc_ratio,
        mc_ratio_ci=ratio_ci,
    )
