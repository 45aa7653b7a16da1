"""Failure-probability and EPR-pair-cost models for teleported logical qubits."""

from .analytic import (
    AlgorithmFailure,
    FailureQuery,
    ModelMode,
    Table3Row,
    allowable_pt,
    p_algorithm_failure,
    p_block_error,
    p_stack_block_error,
    p_success_unencoded,
    table3,
)
from .circuits import (
    CutCost,
    CutPoint,
    Direction,
    EncoderCircuit,
    EncoderValidation,
    Gate,
    GateKind,
    InMotionCost,
    TransferMethod,
    cut_table,
    default_steane_encoder,
    inmotion_dqec_cost,
    load_circuit,
    save_circuit,
    static_dqec_cycle_cost,
    steane_stabilizers,
    teledata_cost,
    telegate_cost,
    validate_encoder,
)
from .codes import CodeStack, QecCode, builtin_codes, parse_code, parse_stack
from .montecarlo import (
    LinkParams,
    McConfig,
    McEstimate,
    Multiplexing,
    SerialPenaltyReport,
    combined_failure_analytic,
    serial_penalty_report,
    simulate_block_transfer,
    simulate_fault_histogram,
    wilson_interval,
)
from .timing import CycleTimes, Recommendation, TimingParams, cycle_times, recommend
from .workload import AdderKind, TeleportEstimate, WorkloadSpec, teleport_count

__version__ = "0.1.0"

__all__ = [
    "AdderKind",
    "AlgorithmFailure",
    "CodeStack",
    "CutCost",
    "CutPoint",
    "CycleTimes",
    "Direction",
    "EncoderCircuit",
    "EncoderValidation",
    "FailureQuery",
    "Gate",
    "GateKind",
    "InMotionCost",
    "LinkParams",
    "McConfig",
    "McEstimate",
    "ModelMode",
    "Multiplexing",
    "QecCode",
    "Recommendation",
    "SerialPenaltyReport",
    "Table3Row",
    "TeleportEstimate",
    "TimingParams",
    "TransferMethod",
    "WorkloadSpec",
    "allowable_pt",
    "builtin_codes",
    "combined_failure_analytic",
    "cut_table",
    "cycle_times",
    "default_steane_encoder",
    "inmotion_dqec_cost",
    "load_circuit",
    "p_algorithm_failure",
    "p_block_error",
    "p_stack_block_error",
    "p_success_unencoded",
    "parse_code",
    "parse_stack",
    "recommend",
    "save_circuit",
    "serial_penalty_report",
    "simulate_block_transfer",
    "simulate_fault_histogram",
    "static_dqec_cycle_cost",
    "steane_stabilizers",
    "table3",
    "teledata_cost",
    "telegate_cost",
    "teleport_count",
    "validate_encoder",
    "wilson_interval",
]
