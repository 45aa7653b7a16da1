"""Teleportation-count model for the modular exponentiation workload.

Anchored at measured counts for 16-, 128-, and 1024-bit problem sizes;
other sizes scale cubically from the nearest anchor (nearest in log size)
and are flagged as extrapolated. The low end of each anchor range belongs
to carry-ripple addition, the high end to carry-lookahead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# bits -> (carry-ripple teleportations, carry-lookahead teleportations)
ANCHORS: dict[int, tuple[float, float]] = {
    16: (14_000.0, 125_000.0),
    128: (8e6, 1e8),
    1024: (4e9, 6e10),
}


class AdderKind(str, Enum):
    CARRY_RIPPLE = "ripple"
    CARRY_LOOKAHEAD = "lookahead"


@dataclass(frozen=True)
class WorkloadSpec:
    """Problem size and adder choice; adder None asks for the full range."""

    bits: int
    adder: AdderKind | None = None

    def __post_init__(self):
        if self.bits < 2:
            raise ValueError(f"bits must be >= 2, got {self.bits}")


@dataclass(frozen=True)
class TeleportEstimate:
    """Teleportation count range; a point query fills both ends equally."""

    t_low: float
    t_high: float
    extrapolated: bool
    anchor_bits: int


def _nearest_anchor(bits: int) -> int:
    return min(ANCHORS, key=lambda a: abs(math.log(bits / a)))


def _scaled(bits: int, anchor: int, column: int) -> float:
    return ANCHORS[anchor][column] * (bits / anchor) ** 3


def teleport_count(spec: WorkloadSpec) -> TeleportEstimate:
    """Teleportations needed for a full modular exponentiation at this size."""
    anchor = _nearest_anchor(spec.bits)
    extrapolated = spec.bits not in ANCHORS
    low = _scaled(spec.bits, anchor, 0)
    high = _scaled(spec.bits, anchor, 1)
    if spec.adder is AdderKind.CARRY_RIPPLE:
        high = low
    elif spec.adder is AdderKind.CARRY_LOOKAHEAD:
        low = high
    return TeleportEstimate(t_low=low, t_high=high, extrapolated=extrapolated, anchor_bits=anchor)
