"""Core data model: qubit labels, layouts, parity constraints and the circuit IR.

Conventions used throughout the package:

- Logical qubits are 0-based integers.
- A physical qubit is named by the sorted tuple of logical indices whose
  joint Z-parity it stores. A single-index label is a data qubit.
- Angles are radians, double precision, canonicalized to (-2*pi, 2*pi].
- Rotation matrices: RZ(a) = exp(-i*a*Z/2), RX(a) = exp(-i*a*X/2),
  CP(a) = diag(1, 1, 1, exp(i*a)). Phase gates P_a = diag(1, exp(i*a)) are
  represented as RZ(a) plus a tracked global phase of a/2; global phase is
  circuit metadata, never a gate.
- Grid adjacency is Manhattan distance 1. Two-qubit gates may additionally
  act across the diagonal of a fully occupied unit plaquette.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

TWO_PI = 2.0 * math.pi

GATE_KINDS = ("RX", "RZ", "H", "CNOT", "CP", "X")
ROTATION_KINDS = ("RX", "RZ", "CP")
TWO_QUBIT_KINDS = ("CNOT", "CP")

LOGICAL = "logical"
PHYSICAL = "physical"


def wrap_angle(a: float) -> float:
    """Canonicalize an angle into (-2*pi, 2*pi], preserving the 4*pi period."""
    if not math.isfinite(a):
        raise ValueError(f"angle must be finite, got {a}")
    r = math.fmod(a, 2.0 * TWO_PI)
    if r > TWO_PI:
        r -= 2.0 * TWO_PI
    elif r <= -TWO_PI:
        r += 2.0 * TWO_PI
    return r


@dataclass(frozen=True, order=True)
class QubitLabel:
    """Physical qubit named by the logical indices whose parity it stores."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if len(idx) < 1:
            raise ValueError("label needs at least one logical index")
        if any(i < 0 for i in idx):
            raise ValueError(f"negative logical index in {idx}")
        if tuple(sorted(set(idx))) != idx:
            raise ValueError(f"label indices must be strictly increasing: {idx}")

    @property
    def is_data(self) -> bool:
        return len(self.indices) == 1

    def contains(self, logical: int) -> bool:
        return logical in self.indices

    def __str__(self):
        return "(" + ",".join(str(i) for i in self.indices) + ")"


def label(*indices: int) -> QubitLabel:
    """Shorthand constructor, sorts the indices."""
    return QubitLabel(tuple(sorted(indices)))


@dataclass(frozen=True)
class Constraint:
    """Z-parity stabilizer over three or four physical qubits.

    Every logical index must occur an even number of times across the
    member labels, so the product acts trivially on encoded states.
    """

    members: tuple[QubitLabel, ...]

    def __post_init__(self):
        if len(self.members) not in (3, 4):
            raise ValueError(f"constraint needs 3 or 4 members, got {len(self.members)}")
        if len(set(self.members)) != len(self.members):
            raise ValueError("constraint members must be distinct")
        for i in self._odd_indices():
            raise ValueError(f"logical index {i} occurs an odd number of times")

    def _odd_indices(self) -> list[int]:
        counts: dict[int, int] = {}
        for m in self.members:
            for i in m.indices:
                counts[i] = counts.get(i, 0) + 1
        return [i for i, c in sorted(counts.items()) if c % 2]


# A computational basis assignment: physical or logical qubit -> 0/1.
Bits = dict


@dataclass(frozen=True)
class Gate:
    """One gate from the fixed alphabet RX, RZ, H, CNOT, CP, X.

    CNOT qubits are ordered (control, target). CP is symmetric but the
    stored order is preserved. Angles are canonicalized on construction.
    """

    kind: str
    qubits: tuple
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} takes {want} qubit(s), got {len(self.qubits)}")
        if want == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind} qubits must be distinct")
        if self.kind in ROTATION_KINDS:
            if self.angle is None:
                raise ValueError(f"{self.kind} needs an angle")
            object.__setattr__(self, "angle", wrap_angle(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT_KINDS


def rx(q, a) -> Gate:
    return Gate("RX", (q,), a)


def rz(q, a) -> Gate:
    return Gate("RZ", (q,), a)


def h(q) -> Gate:
    return Gate("H", (q,))


def x(q) -> Gate:
    return Gate("X", (q,))


def cnot(control, target) -> Gate:
    return Gate("CNOT", (control, target))


def cp(q0, q1, a) -> Gate:
    return Gate("CP", (q0, q1), a)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed register, logical or physical.

    The register holds logical indices (ints) for LOGICAL circuits and
    QubitLabels for PHYSICAL ones. Gates reference register members
    directly. `global_phase` means the circuit implements
    exp(i*global_phase) times the product of its gates.
    """

    space: str
    register: tuple
    gates: tuple[Gate, ...]
    global_phase: float = 0.0

    def __post_init__(self):
        if self.space not in (LOGICAL, PHYSICAL):
            raise ValueError(f"bad space {self.space!r}")
        members = set(self.register)
        if len(members) != len(self.register):
            raise ValueError("register members must be distinct")
        for g in self.gates:
            for q in g.qubits:
                if q not in members:
                    raise ValueError(f"gate {g.kind} references {q} outside the register")

    def __len__(self):
        return len(self.gates)

    def with_gates(self, gates, global_phase=None) -> "Circuit":
        gp = self.global_phase if global_phase is None else global_phase
        return Circuit(self.space, self.register, tuple(gates), gp)

    def extended(self, other: "Circuit") -> "Circuit":
        if other.space != self.space or other.register != self.register:
            raise ValueError("can only extend with a circuit over the same register")
        return Circuit(self.space, self.register, self.gates + other.gates,
                       self.global_phase + other.global_phase)


def logical_circuit(n: int, gates=(), global_phase: float = 0.0) -> Circuit:
    return Circuit(LOGICAL, tuple(range(n)), tuple(gates), global_phase)


def adjoint(circuit: Circuit) -> Circuit:
    """Inverse circuit: reversed gate order with negated angles and phase."""
    gates = []
    for g in reversed(circuit.gates):
        if g.kind in ROTATION_KINDS:
            gates.append(Gate(g.kind, g.qubits, -g.angle))
        else:
            gates.append(g)
    return Circuit(circuit.space, circuit.register, tuple(gates), -circuit.global_phase)


@dataclass(frozen=True)
class ParityLayout:
    """Physical qubits on an integer grid, with constraints and logical lines.

    `lines[i]` is the ordered path of qubits whose label contains i;
    consecutive path members are grid neighbors. Every logical index has
    exactly one data qubit.
    """

    n_logical: int
    qubits: tuple[QubitLabel, ...]
    positions: dict[QubitLabel, tuple[int, int]]
    constraints: tuple[Constraint, ...]
    lines: dict[int, tuple[QubitLabel, ...]]

    def __post_init__(self):
        object.__setattr__(self, "_index", {q: k for k, q in enumerate(self.qubits)})

    def __contains__(self, q: QubitLabel) -> bool:
        return q in self._index

    def position_of(self, q: QubitLabel):
        return self.positions[q]

    def data_qubit(self, logical: int) -> QubitLabel:
        q = QubitLabel((logical,))
        if q not in self._index:
            raise KeyError(f"no data qubit for logical {logical}")
        return q

    def line(self, logical: int) -> tuple[QubitLabel, ...]:
        return self.lines[logical]

    def adjacent(self, a: QubitLabel, b: QubitLabel) -> bool:
        """Manhattan-distance-1 neighbors."""
        (ax, ay), (bx, by) = self.positions[a], self.positions[b]
        return abs(ax - bx) + abs(ay - by) == 1

    def gate_adjacent(self, a: QubitLabel, b: QubitLabel) -> bool:
        """Adjacency for two-qubit gates: sides, or an occupied plaquette diagonal."""
        (ax, ay), (bx, by) = self.positions[a], self.positions[b]
        dx, dy = abs(ax - bx), abs(ay - by)
        if dx + dy == 1:
            return True
        if dx == 1 and dy == 1:
            occupied = {self.positions[q] for q in self.qubits}
            return (ax, by) in occupied and (bx, ay) in occupied
        return False


def label_parity(lab: QubitLabel, logical_bits: Bits) -> int:
    """XOR of the logical bits named by the label."""
    acc = 0
    for i in lab.indices:
        if i not in logical_bits:
            raise KeyError(f"logical index {i} missing from the basis state")
        acc ^= logical_bits[i] & 1
    return acc


def code_basis_image(layout: ParityLayout, logical_bits: Bits) -> Bits:
    """Physical basis state encoding the given logical basis state."""
    for i in range(layout.n_logical):
        if i not in logical_bits:
            raise KeyError(f"logical index {i} missing from the basis state")
    return {q: label_parity(q, logical_bits) for q in layout.qubits}


def constraint_satisfied(state: Bits, c: Constraint) -> bool:
    """True iff the XOR of the member bits is zero."""
    acc = 0
    for m in c.members:
        acc ^= state[m] & 1
    return acc == 0


def check_physical_gates(circuit: Circuit, layout: ParityLayout) -> list[str]:
    """Report two-qubit gates acting on non-adjacent qubits."""
    bad = []
    for g in circuit.gates:
        if g.is_two_qubit and not layout.gate_adjacent(g.qubits[0], g.qubits[1]):
            bad.append(f"{g.kind} on non-adjacent qubits {g.qubits[0]} {g.qubits[1]}")
    return bad


def validate_layout(layout: ParityLayout) -> list[str]:
    """Collect invariant violations; an empty list means the layout is well formed.

    Checks data-qubit uniqueness, position injectivity, line membership and
    contiguity, constraint membership, locality and index evenness.
    """
    problems: list[str] = []
    seen = set()
    for q in layout.qubits:
        if q in seen:
            problems.append(f"duplicate qubit {q}")
        seen.add(q)

    for i in range(layout.n_logical):
        data = QubitLabel((i,))
        if data not in seen:
            problems.append(f"missing data qubit {i}")
    for q in layout.qubits:
        if q.is_data and q.indices[0] >= layout.n_logical:
            problems.append(f"data qubit {q} outside the logical range")
    counts: dict[QubitLabel, int] = {}
    for q in layout.qubits:
        counts[q] = counts.get(q, 0) + 1
    dupes = [q for q, c in counts.items() if q.is_data and c > 1]
    for q in dupes:
        problems.append(f"duplicate data qubit {q.indices[0]}")

    pos_seen: dict[tuple[int, int], QubitLabel] = {}
    for q in layout.qubits:
        if q not in layout.positions:
            problems.append(f"qubit {q} has no position")
            continue
        p = layout.positions[q]
        if p in pos_seen:
            problems.append(f"qubits {pos_seen[p]} and {q} share position {p}")
        pos_seen[p] = q

    for i in range(layout.n_logical):
        line = layout.lines.get(i)
        if line is None:
            problems.append(f"missing line for logical {i}")
            continue
        expected = {q for q in layout.qubits if q.contains(i)}
        if set(line) != expected:
            problems.append(f"line {i} does not match the qubits containing {i}")
        for a, b in zip(line, line[1:]):
            if a in layout.positions and b in layout.positions and not layout.adjacent(a, b):
                problems.append(f"line {i}: {a} and {b} are not grid neighbors")

    for c in layout.constraints:
        for m in c.members:
            if m not in seen:
                problems.append(f"constraint member {m} not in the layout")
        counts = {}
        for m in c.members:
            for i in m.indices:
                counts[i] = counts.get(i, 0) + 1
        for i, cnt in sorted(counts.items()):
            if cnt % 2:
                problems.append(
                    f"constraint {tuple(str(m) for m in c.members)}: "
                    f"index {i} occurs an odd number of times")
        placed = [m for m in c.members if m in layout.positions]
        if len(placed) == len(c.members):
            xs = [layout.positions[m][0] for m in placed]
            ys = [layout.positions[m][1] for m in placed]
            if max(xs) - min(xs) > 1 or max(ys) - min(ys) > 1:
                problems.append(
                    f"constraint {tuple(str(m) for m in c.members)} is not a unit plaquette")
    return problems
