"""Gate-cancellation and merge passes, ASAP layering, and resource statistics.

Scheduling uses a unit-time model: every gate occupies one layer and gates
within a layer act on pairwise-disjoint qubits. Passes move gates only
across a fixed commutation whitelist: disjoint supports, RZ with RZ or CP,
and RZ acting on a CNOT control.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import Circuit, Gate

_EPS = 1e-12


def _disjoint(g1: Gate, g2: Gate) -> bool:
    return not set(g1.qubits) & set(g2.qubits)


def _rz_commutes_past(rz_gate: Gate, other: Gate) -> bool:
    if _disjoint(rz_gate, other):
        return True
    q = rz_gate.qubits[0]
    if other.kind in ("RZ", "CP"):
        return True
    if other.kind == "CNOT" and other.qubits[0] == q and other.qubits[1] != q:
        return True
    return False


def _cnot_blocker(cnot_gate: Gate, other: Gate) -> bool:
    """True if `other` pins the CNOT in place for the cancellation pass."""
    if _disjoint(cnot_gate, other):
        return False
    if other.kind == "RZ" and other.qubits[0] == cnot_gate.qubits[0]:
        return False  # RZ on the control commutes through
    return True


def cancel_adjacent_cnots(circuit: Circuit) -> Circuit:
    """Remove identical CNOT pairs separated only by commuting gates.

    Iterates to a fixed point, so nested chains collapse from the outside in.
    """
    gates = list(circuit.gates)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(gates):
            g = gates[i]
            if g.kind != "CNOT":
                i += 1
                continue
            cancelled = False
            j = i + 1
            while j < len(gates):
                other = gates[j]
                if other.kind == "CNOT" and other.qubits == g.qubits:
                    del gates[j]
                    del gates[i]
                    changed = cancelled = True
                    break
                if _cnot_blocker(g, other):
                    break
                j += 1
            if not cancelled:
                i += 1
    return circuit.with_gates(gates)


def merge_rz(circuit: Circuit) -> Circuit:
    """Merge same-qubit RZ pairs separated only by commuting gates; drop zeros."""
    gates = list(circuit.gates)
    i = 0
    while i < len(gates):
        g = gates[i]
        if g.kind != "RZ":
            i += 1
            continue
        merged = False
        j = i + 1
        while j < len(gates):
            other = gates[j]
            if other.kind == "RZ" and other.qubits == g.qubits:
                summed = g.angle + other.angle
                del gates[j]
                if abs(summed) < _EPS or abs(abs(summed) - 4.0 * 3.141592653589793) < _EPS:
                    del gates[i]
                else:
                    gates[i] = Gate("RZ", g.qubits, summed)
                merged = True
                break
            if not _rz_commutes_past(g, other):
                break
            j += 1
        if not merged:
            if abs(g.angle) < _EPS:
                del gates[i]
            else:
                i += 1
    return circuit.with_gates(gates)


def run_passes(circuit: Circuit) -> Circuit:
    return merge_rz(cancel_adjacent_cnots(circuit))


@dataclass(frozen=True)
class ResourceStats:
    qubit_count: int
    cnot_count: int
    cp_count: int
    single_qubit_count: int
    depth: int

    @property
    def total_gates(self) -> int:
        return self.cnot_count + self.cp_count + self.single_qubit_count

    def row(self) -> dict:
        return {"qubits": self.qubit_count, "cnot": self.cnot_count,
                "cp": self.cp_count, "single_qubit": self.single_qubit_count,
                "total": self.total_gates, "depth": self.depth}


@dataclass(frozen=True)
class ScheduledCircuit:
    """Circuit partitioned into layers of qubit-disjoint gates."""

    circuit: Circuit
    layers: tuple[tuple[Gate, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def stats(self) -> ResourceStats:
        return resource_stats(self)


def schedule(circuit: Circuit) -> ScheduledCircuit:
    """Greedy earliest-layer placement respecting per-qubit gate order."""
    last_layer: dict = {}
    layers: list[list[Gate]] = []
    for g in circuit.gates:
        at = max((last_layer.get(q, 0) for q in g.qubits), default=0)
        if at == len(layers):
            layers.append([])
        layers[at].append(g)
        for q in g.qubits:
            last_layer[q] = at + 1
    for layer in layers:
        seen = set()
        for g in layer:
            for q in g.qubits:
                assert q not in seen, "layer contains overlapping gates"
                seen.add(q)
    return ScheduledCircuit(circuit, tuple(tuple(t) for t in layers))


def resource_stats(target) -> ResourceStats:
    """Exact gate counts by kind; accepts a Circuit or a ScheduledCircuit."""
    if isinstance(target, ScheduledCircuit):
        circuit, depth = target.circuit, target.depth
    else:
        circuit, depth = target, schedule(target).depth
    counts = {"CNOT": 0, "CP": 0}
    single = 0
    for g in circuit.gates:
        if g.kind in counts:
            counts[g.kind] += 1
        else:
            single += 1
    return ResourceStats(len(circuit.register), counts["CNOT"], counts["CP"], single, depth)


def cnot_depth_formula(n: int, c: int, t: int) -> int:
    """Layer count of the compiled two-qubit CNOT on the n-qubit all-pairs layout.

    `c` and `t` are 0-based logical indices; the closed form below uses the
    1-based numbering pinned against measured schedules (see the README
    conventions section).
    """
    if not (0 <= c < n and 0 <= t < n):
        raise ValueError("control and target must be logical indices")
    if c == t:
        raise ValueError("control and target must differ")
    c1, t1 = c + 1, t + 1
    ac = abs(n - 2 * c1)  # 2*|n/2 - c|
    at = abs(n - 2 * t1)
    k = 1 if ac == at else 0
    return 2 * ((n + 1) // 2 + max(ac, at) // 2 + k) + 3
