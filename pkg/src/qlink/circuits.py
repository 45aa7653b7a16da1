"""EPR-pair cost accounting for distributed logical-zero creation.

An encoder circuit here is an H/CNOT network preparing the logical zero of
a CSS code from |0...0>, together with a spatial layout (qubit_order) that
places qubits left to right. Splitting the layout at a cut assigns the left
positions to node A and the rest to node B; the two strategies for building
the state across the cut are then costed in EPR pairs:

  telegate  - build in place, teleporting every CNOT that crosses the cut
              (one EPR pair per crossing gate);
  teledata  - build on the majority side, then teleport the minority side's
              qubits over (min(index, n - index) EPR pairs).

Correctness of a circuit is checked without amplitudes: the stabilizer
group of the prepared state is tracked through the circuit as GF(2)
symplectic rows and compared, as a row space, against the code's
stabilizers plus logical Z.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from .codes import QecCode


class GateKind(str, Enum):
    H = "H"
    CNOT = "CNOT"


class Direction(str, Enum):
    A_TO_B = "A->B"
    B_TO_A = "B->A"


class TransferMethod(str, Enum):
    TELEGATE = "telegate"
    TELEDATA = "teledata"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        object.__setattr__(self, "kind", GateKind(self.kind))
        arity = 1 if self.kind is GateKind.H else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} takes {arity} qubit(s), got {self.qubits}")
        if self.kind is GateKind.CNOT and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")


@dataclass(frozen=True)
class EncoderCircuit:
    """Ordered qubit layout plus the gate list of a logical-zero encoder."""

    n_qubits: int
    qubit_order: tuple[int, ...]
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubit_order", tuple(self.qubit_order))
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")
        if sorted(self.qubit_order) != list(range(self.n_qubits)):
            raise ValueError(f"qubit_order must be a permutation of 0..{self.n_qubits - 1}")
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"gate operand {q} out of range for {self.n_qubits} qubits")

    def position(self, qubit: int) -> int:
        """Layout position of a qubit (inverse of qubit_order)."""
        return self.qubit_order.index(qubit)


@dataclass(frozen=True)
class CutPoint:
    """Split after `index` layout positions: positions < index sit on node A."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"cut index must be >= 1, got {self.index}")

    @classmethod
    def from_label(cls, label: str) -> CutPoint:
        """Breakpoint letters map a=1, b=2, ... left to right."""
        if len(label) != 1 or not label.isalpha():
            raise ValueError(f"bad breakpoint label {label!r}")
        return cls(ord(label.lower()) - ord("a") + 1)

    @property
    def label(self) -> str:
        return chr(ord("a") + self.index - 1)


@dataclass(frozen=True)
class CutCost:
    cut: CutPoint
    telegate_eprs: int
    teledata_eprs: int
    teledata_direction: Direction


def _check_cut(circuit: EncoderCircuit, cut: CutPoint) -> None:
    if not 1 <= cut.index <= circuit.n_qubits - 1:
        raise ValueError(
            f"cut index {cut.index} out of range 1..{circuit.n_qubits - 1}"
        )


def telegate_cost(circuit: EncoderCircuit, cut: CutPoint) -> int:
    """EPR pairs to build in place: one per CNOT whose ends straddle the cut."""
    _check_cut(circuit, cut)
    crossing = 0
    for gate in circuit.gates:
        if gate.kind is not GateKind.CNOT:
            continue
        sides = {circuit.position(q) < cut.index for q in gate.qubits}
        if len(sides) == 2:
            crossing += 1
    return crossing


def teledata_cost(circuit: EncoderCircuit, cut: CutPoint) -> tuple[int, Direction]:
    """EPR pairs to build on one node and ship the minority share of qubits.

    The state is created on the majority side and the minority side's qubits
    teleported toward it, so the cost is min(index, n - index). An even
    split creates on side A.
    """
    _check_cut(circuit, cut)
    n = circuit.n_qubits
    left, right = cut.index, n - cut.index
    if left < right:
        return left, Direction.B_TO_A
    return right, Direction.A_TO_B


def cut_table(circuit: EncoderCircuit) -> list[CutCost]:
    """Costs of both strategies at every cut, left to right."""
    rows = []
    for index in range(1, circuit.n_qubits):
        cut = CutPoint(index)
        data_cost, direction = teledata_cost(circuit, cut)
        rows.append(CutCost(cut, telegate_cost(circuit, cut), data_cost, direction))
    return rows


# --------------------------------------------------------------------------
# Golden seven-qubit encoder fixture
#
# Gates follow the reduced-row-echelon construction of the logical zero: an
# H on each pivot qubit, then CNOTs fanning each pivot out over its
# generator row. The layout permutation was selected by exhaustive search so
# that the telegate cost over the six cuts is (2, 3, 4, 3, 3, 2); together
# with stabilizer validity that cost vector is the fixture's contract, and
# the gate list below is frozen.
# --------------------------------------------------------------------------

_STEANE_ORDER = (2, 0, 1, 6, 4, 3, 5)
_STEANE_GATES = (
    (GateKind.H, (0,)),
    (GateKind.H, (1,)),
    (GateKind.H, (3,)),
    (GateKind.CNOT, (0, 2)),
    (GateKind.CNOT, (0, 4)),
    (GateKind.CNOT, (0, 6)),
    (GateKind.CNOT, (1, 2)),
    (GateKind.CNOT, (1, 5)),
    (GateKind.CNOT, (1, 6)),
    (GateKind.CNOT, (3, 4)),
    (GateKind.CNOT, (3, 5)),
    (GateKind.CNOT, (3, 6)),
)


def default_steane_encoder() -> EncoderCircuit:
    """The shipped seven-qubit logical-zero encoder with its layout."""
    return EncoderCircuit(
        n_qubits=7,
        qubit_order=_STEANE_ORDER,
        gates=tuple(Gate(kind, qubits) for kind, qubits in _STEANE_GATES),
    )


def steane_stabilizers() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """X checks, Z checks, and logical Z of the seven-qubit CSS code.

    Check rows are the binary representations of 1..7 read down the columns
    (the classical Hamming parity-check matrix); both Pauli types share it.
    """
    h = np.array(
        [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ],
        dtype=np.uint8,
    )
    logical_z = np.ones(7, dtype=np.uint8)
    return h.copy(), h.copy(), logical_z


def _rref_gf2(matrix: np.ndarray) -> np.ndarray:
    """Reduced row echelon form over GF(2), zero rows dropped."""
    mat = matrix.astype(np.uint8).copy() % 2
    n_rows, n_cols = mat.shape
    pivot_row = 0
    for col in range(n_cols):
        hit = np.nonzero(mat[pivot_row:, col])[0]
        if hit.size == 0:
            continue
        swap = pivot_row + hit[0]
        mat[[pivot_row, swap]] = mat[[swap, pivot_row]]
        others = np.nonzero(mat[:, col])[0]
        for r in others:
            if r != pivot_row:
                mat[r] ^= mat[pivot_row]
        pivot_row += 1
        if pivot_row == n_rows:
            break
    return mat[mat.any(axis=1)]


def _in_row_space(vector: np.ndarray, rref: np.ndarray) -> bool:
    stacked = np.vstack([rref, vector % 2])
    return _rref_gf2(stacked).shape[0] == rref.shape[0]


def _pauli_string(row: np.ndarray, n: int) -> str:
    chars = []
    for q in range(n):
        x, z = row[q], row[n + q]
        chars.append("IXZY"[x + 2 * z])
    return "".join(chars)


@dataclass(frozen=True)
class EncoderValidation:
    ok: bool
    missing: tuple[str, ...]   # expected generators absent from the prepared group
    extra: tuple[str, ...]     # prepared generators outside the expected group


def validate_encoder(
    circuit: EncoderCircuit,
    code: QecCode,
    stabilizers: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
) -> EncoderValidation:
    """Check that the circuit prepares the code's logical zero.

    Simulates the all-zeros stabilizer tableau through the gates using the
    GF(2) symplectic update rules (phases are irrelevant to group
    membership here) and compares row spaces: the prepared group must equal
    the group generated by the code's stabilizers plus logical Z. Generators
    are compared as groups, not lists, since presentations are not unique.
    """
    if stabilizers is None:
        if (code.n, code.k, code.d) != (7, 1, 3):
            raise ValueError(
                f"no stabilizer fixture for {code.spec()}; pass stabilizers explicitly"
            )
        stabilizers = steane_stabilizers()
    h_x, h_z, logical_z = (np.atleast_2d(np.asarray(m, dtype=np.uint8)) for m in stabilizers)
    n = circuit.n_qubits
    if h_x.shape[1] != n or h_z.shape[1] != n or logical_z.shape[1] != n:
        raise ValueError("stabilizer row length does not match the circuit width")

    # Start from |0...0>: generators Z_0 .. Z_{n-1}, rows laid out as (x | z).
    tableau = np.zeros((n, 2 * n), dtype=np.uint8)
    tableau[:, n:] = np.eye(n, dtype=np.uint8)
    for gate in circuit.gates:
        if gate.kind is GateKind.H:
            (q,) = gate.qubits
            tableau[:, [q, n + q]] = tableau[:, [n + q, q]]
        elif gate.kind is GateKind.CNOT:
            c, t = gate.qubits
            tableau[:, t] ^= tableau[:, c]
            tableau[:, n + c] ^= tableau[:, n + t]
        else:  # pragma: no cover - GateKind is closed
            raise ValueError(f"unsupported gate kind {gate.kind}")

    expected = np.zeros((h_x.shape[0] + h_z.shape[0] + logical_z.shape[0], 2 * n), dtype=np.uint8)
    expected[: h_x.shape[0], :n] = h_x
    expected[h_x.shape[0] : h_x.shape[0] + h_z.shape[0], n:] = h_z
    expected[h_x.shape[0] + h_z.shape[0] :, n:] = logical_z

    prepared_rref = _rref_gf2(tableau)
    expected_rref = _rref_gf2(expected)
    if prepared_rref.shape == expected_rref.shape and np.array_equal(prepared_rref, expected_rref):
        return EncoderValidation(ok=True, missing=(), extra=())

    missing = tuple(
        _pauli_string(row, n) for row in expected if not _in_row_space(row, prepared_rref)
    )
    extra = tuple(
        _pauli_string(row, n) for row in tableau if not _in_row_space(row, expected_rref)
    )
    return EncoderValidation(ok=False, missing=missing, extra=extra)


def static_dqec_cycle_cost(
    code: QecCode,
    cut: CutPoint,
    syndromes: int = 6,
    repeats: int = 2,
    method: TransferMethod = TransferMethod.TELEDATA,
    circuit: EncoderCircuit | None = None,
) -> int:
    """EPR pairs per error-correction cycle on a block split at the cut.

    Each syndrome measurement consumes one distributed logical zero, and
    each syndrome is measured `repeats` times, so a cycle costs
    syndromes * repeats logical zeros at the per-zero cost of the chosen
    strategy. Telegate pricing needs the encoder circuit; the seven-qubit
    default is used when none is given.
    """
    if syndromes < 1 or repeats < 1:
        raise ValueError("syndromes and repeats must be >= 1")
    if method is TransferMethod.TELEDATA:
        if not 1 <= cut.index <= code.n - 1:
            raise ValueError(f"cut index {cut.index} out of range 1..{code.n - 1}")
        per_zero = min(cut.index, code.n - cut.index)
    else:
        if circuit is None:
            if code.n != 7:
                raise ValueError("telegate pricing needs an encoder circuit for this code")
            circuit = default_steane_encoder()
        if circuit.n_qubits != code.n:
            raise ValueError("encoder circuit width does not match the code")
        per_zero = telegate_cost(circuit, cut)
    return syndromes * repeats * per_zero


@dataclass(frozen=True)
class InMotionCost:
    """EPR budget for correcting a block while it migrates across the link."""

    method: TransferMethod
    per_syndrome: int
    per_cycle: int
    worst_case_block_teleports: int


def inmotion_dqec_cost(
    circuit: EncoderCircuit,
    method: TransferMethod,
    syndromes: int = 6,
    repeats: int = 2,
) -> InMotionCost:
    """Cost of running distributed correction between the block's teleports.

    While a block moves one qubit at a time, the split walks through every
    cut, so a full sweep of syndrome measurements pays the chosen strategy's
    cost summed over all n - 1 cuts. The worst single correction block sits
    at the widest cut and pays its teledata cost for every measurement.
    """
    if circuit.n_qubits < 2:
        raise ValueError("in-motion correction needs at least two qubits")
    table = cut_table(circuit)
    if method is TransferMethod.TELEGATE:
        per_syndrome = sum(row.telegate_eprs for row in table)
    else:
        per_syndrome = sum(row.teledata_eprs for row in table)
    measurements = syndromes * repeats
    worst = max(row.teledata_eprs for row in table) * measurements
    return InMotionCost(
        method=method,
        per_syndrome=per_syndrome,
        per_cycle=measurements * per_syndrome,
        worst_case_block_teleports=worst,
    )


# --------------------------------------------------------------------------
# Circuit files: {"n": int, "order": [...], "gates": [{"kind": .., "q": [..]}]}
# --------------------------------------------------------------------------

def circuit_to_dict(circuit: EncoderCircuit) -> dict:
    return {
        "n": circuit.n_qubits,
        "order": list(circuit.qubit_order),
        "gates": [{"kind": g.kind.value, "q": list(g.qubits)} for g in circuit.gates],
    }


def circuit_from_dict(data: dict) -> EncoderCircuit:
    try:
        return EncoderCircuit(
            n_qubits=int(data["n"]),
            qubit_order=tuple(int(q) for q in data["order"]),
            gates=tuple(Gate(GateKind(g["kind"]), tuple(int(q) for q in g["q"])) for g in data["gates"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit JSON: {exc}") from exc


def load_circuit(path: str | Path) -> EncoderCircuit:
    with open(path, encoding="utf-8") as handle:
        return circuit_from_dict(json.load(handle))


def save_circuit(circuit: EncoderCircuit, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(circuit_to_dict(circuit), handle, indent=2)
        handle.write("\n")


def without_gate(circuit: EncoderCircuit, index: int) -> EncoderCircuit:
    """Copy of the circuit with one gate removed (mutation testing helper)."""
    if not 0 <= index < len(circuit.gates):
        raise ValueError(f"gate index {index} out of range")
    gates = circuit.gates[:index] + circuit.gates[index + 1 :]
    return replace(circuit, gates=gates)
