"""JSON formats for circuits and layouts.

Circuit: {"version": 1, "space": "logical"|"physical",
          "register": [[indices...], ...],
          "gates": [{"kind": ..., "qubits": [r0, r1?], "angle": f?}, ...]}
Gate qubit references are register positions. Angles serialize as decimal
floats that round-trip bit exactly.

Layout: {"n": int, "qubits": [[indices...], ...], "positions": [[x, y], ...],
         "constraints": [[refs...], ...], "lines": [[refs...], ...]}
"""

from __future__ import annotations

import json

from .code import (LOGICAL, Circuit, Constraint, Gate, ParityLayout,
                   QubitLabel)


def _register_entry(q) -> list[int]:
    if isinstance(q, QubitLabel):
        return list(q.indices)
    return [int(q)]


def circuit_to_dict(circuit: Circuit) -> dict:
    pos = {q: k for k, q in enumerate(circuit.register)}
    gates = []
    for g in circuit.gates:
        entry = {"kind": g.kind, "qubits": [pos[q] for q in g.qubits]}
        if g.angle is not None:
            entry["angle"] = g.angle
        gates.append(entry)
    return {"version": 1, "space": circuit.space,
            "register": [_register_entry(q) for q in circuit.register],
            "gates": gates}


def circuit_from_dict(data: dict) -> Circuit:
    if data.get("version") != 1:
        raise ValueError(f"unsupported circuit format version {data.get('version')}")
    space = data["space"]
    if space == LOGICAL:
        register = tuple(entry[0] for entry in data["register"])
    else:
        register = tuple(QubitLabel(tuple(entry)) for entry in data["register"])
    gates = []
    for entry in data["gates"]:
        qubits = tuple(register[r] for r in entry["qubits"])
        gates.append(Gate(entry["kind"], qubits, entry.get("angle")))
    return Circuit(space, register, tuple(gates))


def circuit_to_json(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit))


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


def layout_to_dict(layout: ParityLayout) -> dict:
    pos = {q: k for k, q in enumerate(layout.qubits)}
    return {
        "n": layout.n_logical,
        "qubits": [list(q.indices) for q in layout.qubits],
        "positions": [list(layout.positions[q]) for q in layout.qubits],
        "constraints": [[pos[m] for m in c.members] for c in layout.constraints],
        "lines": [[pos[q] for q in layout.lines[i]] for i in range(layout.n_logical)],
    }


def layout_from_dict(data: dict) -> ParityLayout:
    qubits = tuple(QubitLabel(tuple(entry)) for entry in data["qubits"])
    positions = {q: tuple(p) for q, p in zip(qubits, data["positions"])}
    constraints = tuple(Constraint(tuple(qubits[r] for r in refs))
                        for refs in data["constraints"])
    lines = {i: tuple(qubits[r] for r in refs)
             for i, refs in enumerate(data["lines"])}
    return ParityLayout(data["n"], qubits, positions, constraints, lines)


def layout_to_json(layout: ParityLayout) -> str:
    return json.dumps(layout_to_dict(layout))


def layout_from_json(text: str) -> ParityLayout:
    return layout_from_dict(json.loads(text))


def write_circuit(circuit: Circuit, path) -> None:
    with open(path, "w") as fh:
        fh.write(circuit_to_json(circuit))


def read_circuit(path) -> Circuit:
    with open(path) as fh:
        return circuit_from_json(fh.read())


def write_layout(layout: ParityLayout, path) -> None:
    with open(path, "w") as fh:
        fh.write(layout_to_json(layout))


def read_layout(path) -> ParityLayout:
    with open(path) as fh:
        return layout_from_json(fh.read())
