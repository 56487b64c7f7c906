"""Compile logical gates into physical gate sequences on a parity layout.

Multi-qubit X rotations use CNOT chains along the logical line: both line
ends fan in toward a root qubit, the rotation acts on the root, and the
chains mirror back out. Every chain CNOT has its root-side qubit as the
control, so Z rotations on the root commute through the whole chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .code import (PHYSICAL, Circuit, Gate, ParityLayout, QubitLabel, cnot, cp,
                   h, label, rx, rz, wrap_angle, x)
from .scheduler import run_passes

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class SynthesisPlan:
    """Chain structure for one logical line: root plus the two sub-chains."""

    target: int
    root: QubitLabel
    segments: tuple[tuple[QubitLabel, ...], tuple[QubitLabel, ...]]

    @property
    def line(self) -> tuple[QubitLabel, ...]:
        low, high = self.segments
        return tuple(reversed(low)) + (self.root,) + high


def plan_line(layout: ParityLayout, logical: int,
              root: QubitLabel | None = None) -> SynthesisPlan:
    """Split the logical line at the root (default: the middle qubit)."""
    line = layout.line(logical)
    if root is None:
        root = line[(len(line) - 1) // 2]
    if root not in line:
        raise ValueError(f"root {root} is not on the line of logical {logical}")
    r = line.index(root)
    low = tuple(reversed(line[:r]))
    high = line[r + 1:]
    return SynthesisPlan(logical, root, (low, high))


def _fan_in(line, r, low_first=False) -> list[Gate]:
    high = [cnot(line[p], line[p + 1]) for p in range(len(line) - 2, r - 1, -1)]
    low = [cnot(line[p + 1], line[p]) for p in range(r)]
    return low + high if low_first else high + low


def _fan_out(line, r, low_first=False) -> list[Gate]:
    high = [cnot(line[p], line[p + 1]) for p in range(r, len(line) - 1)]
    low = [cnot(line[p + 1], line[p]) for p in range(r - 1, -1, -1)]
    return low + high if low_first else high + low


def _sandwich(layout, logical, core, root=None) -> list[Gate]:
    plan = plan_line(layout, logical, root)
    line = plan.line
    r = line.index(plan.root)
    return _fan_in(line, r) + core + _fan_out(line, r)


def _physical(layout: ParityLayout, gates, global_phase=0.0) -> Circuit:
    return Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), global_phase)


def synth_rz(layout: ParityLayout, logical: int, angle: float) -> Circuit:
    """Logical Z rotation: one physical RZ on the data qubit."""
    d = layout.data_qubit(logical)
    gates = [] if wrap_angle(angle) == 0.0 else [rz(d, angle)]
    return _physical(layout, gates)


def synth_rx(layout: ParityLayout, logical: int, angle: float,
             root: QubitLabel | None = None) -> Circuit:
    """Logical X rotation: CNOT chains along the line around one RX."""
    if wrap_angle(angle) == 0.0:
        return _physical(layout, [])
    plan = plan_line(layout, logical, root)
    core = [rx(plan.root, angle)]
    return _physical(layout, _sandwich(layout, logical, core, plan.root))


def synth_unitary(layout: ParityLayout, logical: int, alpha: float, beta: float,
                  gamma: float, root: QubitLabel | None = None) -> Circuit:
    """Logical Rz(alpha) Rx(beta) Rz(gamma), gamma applied first.

    With the data qubit as root the three rotations sit together inside the
    chain sandwich; otherwise the Z rotations stay on the data qubit and run
    in parallel with the chains.
    """
    d = layout.data_qubit(logical)
    a, b, g = wrap_angle(alpha), wrap_angle(beta), wrap_angle(gamma)
    if b == 0.0:
        return synth_rz(layout, logical, g + a)
    plan = plan_line(layout, logical, root)
    if plan.root == d:
        core = [gate for gate in (rz(d, g), rx(d, b), rz(d, a)) if gate.angle != 0.0]
        gates = _sandwich(layout, logical, core, d)
    else:
        gates = [rz(d, g)] if g else []
        gates += _sandwich(layout, logical, [rx(plan.root, b)], plan.root)
        if a:
            gates.append(rz(d, a))
    return _physical(layout, gates)


def hadamard_gates(layout: ParityLayout, logical: int,
                   root: QubitLabel | None = None) -> tuple[list[Gate], float]:
    """Logical Hadamard as a chain sandwich; returns (gates, global phase).

    H = exp(i*pi/2) Rz(pi/2) Rx(pi/2) Rz(pi/2). With the data qubit as root
    the triple recombines into a single physical H.
    """
    plan = plan_line(layout, logical, root)
    d = layout.data_qubit(logical)
    if plan.root == d:
        return _sandwich(layout, logical, [h(d)], d), 0.0
    gates = [rz(d, HALF_PI)]
    gates += _sandwich(layout, logical, [rx(plan.root, HALF_PI)], plan.root)
    gates.append(rz(d, HALF_PI))
    return gates, HALF_PI


def synth_cphase(layout: ParityLayout, i: int, j: int, angle: float) -> Circuit:
    """Logical controlled phase as three RZ gates on (i), (j) and (i,j)."""
    phi = wrap_angle(angle)
    if phi == 0.0:
        return _physical(layout, [])
    pair = label(i, j)
    if pair not in layout:
        raise ValueError(f"parity qubit {pair} unavailable")
    gates = [rz(layout.data_qubit(i), phi / 2), rz(pair, -phi / 2),
             rz(layout.data_qubit(j), phi / 2)]
    return _physical(layout, gates, global_phase=phi / 4)


def synth_cnot(layout: ParityLayout, control: int, target: int,
               root: QubitLabel | None = None) -> Circuit:
    """Logical CNOT: Hadamard chains on the target around a controlled-Z.

    The two chain sandwiches share a root, so their inner halves cancel
    except on the stretch pinned between the data qubit and the crossing
    parity qubit. The default root sits at the line middle, clamped onto
    that stretch to keep the cancellation maximal.
    """
    pair = label(control, target)
    if pair not in layout:
        raise ValueError(f"parity qubit {pair} unavailable")
    line = layout.line(target)
    d = layout.data_qubit(target)
    if root is None:
        p_cross, p_data = line.index(pair), line.index(d)
        lo, hi = sorted((p_cross, p_data))
        r = min(max(len(line) // 2, lo), hi)
        if r == p_data:
            # a data-qubit root would pin the leftover rotations between the
            # chains; step toward the crossing so they merge and cancel
            r += 1 if p_cross > p_data else -1
        root = line[r]

    r = line.index(root)
    d_low = line.index(d) < r
    cz = synth_cphase(layout, control, target, math.pi)
    # emit the data-side chain first going into the middle region and last
    # coming out, so the fully-cancelling side's pairs meet without blockers
    gates = [rz(d, HALF_PI)]
    gates += _fan_in(line, r) + [rx(root, HALF_PI)] + _fan_out(line, r, low_first=d_low)
    gates += [rz(d, HALF_PI)]
    gates += list(cz.gates)
    gates += [rz(d, HALF_PI)]
    gates += _fan_in(line, r, low_first=not d_low) + [rx(root, HALF_PI)] + _fan_out(line, r)
    gates += [rz(d, HALF_PI)]
    raw = _physical(layout, gates, global_phase=math.pi + cz.global_phase)
    return run_passes(raw)


def synth_ccp(layout: ParityLayout, i: int, j: int, k: int, angle: float) -> Circuit:
    """Two-controlled phase from one physical CP against the (j,k) parity qubit.

    The physical CP between data (i) and parity (j,k), conjugated by X on
    the parity qubit, phases exactly the aligned j,k sectors with i set; two
    single-control phases and one data rotation complete the target phase.
    """
    phi = wrap_angle(angle)
    if phi == 0.0:
        return _physical(layout, [])
    di = layout.data_qubit(i)
    pjk = label(j, k)
    for pair in (label(i, j), label(i, k), pjk):
        if pair not in layout:
            raise ValueError(f"parity qubit {pair} unavailable")
    if not layout.gate_adjacent(di, pjk):
        raise ValueError(
            f"data qubit {di} and parity qubit {pjk} are not adjacent; "
            "use a layout tailored for this interaction")
    cij = synth_cphase(layout, i, j, phi / 2)
    cik = synth_cphase(layout, i, k, phi / 2)
    gates = list(cij.gates) + list(cik.gates)
    gates += [x(pjk), cp(di, pjk, phi / 2), x(pjk), rz(di, -phi / 2)]
    phase = cij.global_phase + cik.global_phase - phi / 4
    return _physical(layout, gates, global_phase=phase)


def synth_toffoli(layout: ParityLayout, i: int, j: int, k_target: int,
                  root: QubitLabel | None = None) -> Circuit:
    """Logical Toffoli: Hadamards on the target around a two-controlled Z."""
    ccz = synth_ccp(layout, i, j, k_target, math.pi)
    had, had_phase = hadamard_gates(layout, k_target, root)
    gates = had + list(ccz.gates) + had
    return _physical(layout, gates, global_phase=2 * had_phase + ccz.global_phase)


def synth_higher_order_rz(layout: ParityLayout, indices, angle: float) -> Circuit:
    """exp(i*angle * Z x Z x ... x Z) on the joint-parity qubit, as one RZ."""
    if wrap_angle(2 * angle) == 0.0 and wrap_angle(angle) == 0.0:
        return _physical(layout, [])
    q = label(*indices)
    if q not in layout:
        raise ValueError(f"parity qubit {q} unavailable")
    gates = [] if wrap_angle(-2 * angle) == 0.0 else [rz(q, -2 * angle)]
    return _physical(layout, gates)


def apply_negative_controls(circuit: Circuit, layout: ParityLayout,
                            negated, touched) -> Circuit:
    """Invert control senses by X-conjugating data and touched parity qubits.

    For each negated logical index the data qubit flips, plus every touched
    parity qubit whose label contains that index; flips on untouched line
    qubits would cancel and are omitted.
    """
    used = {q for g in circuit.gates for q in g.qubits}
    extra = set(touched) - used
    if extra:
        raise ValueError(f"touched qubits {sorted(str(q) for q in extra)} unused by the circuit")
    flips = []
    for logical in sorted(negated):
        flips.append(x(layout.data_qubit(logical)))
        for q in sorted(touched):
            if not q.is_data and q.contains(logical):
                flips.append(x(q))
    if not flips:
        return circuit
    gates = flips + list(circuit.gates) + list(reversed(flips))
    return circuit.with_gates(gates)
