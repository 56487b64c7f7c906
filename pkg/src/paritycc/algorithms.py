"""Application circuit generators, logical and parity-compiled.

The Fourier transform emits no terminal swaps: the input is read big-endian
across the wires of its block order and the output little-endian, so the
transform lands bit-reversed. Each line block interleaves with its
neighbors through the shared crossing qubits only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .code import (LOGICAL, PHYSICAL, Circuit, Constraint, Gate, ParityLayout,
                   adjoint, cnot, cp, h, label, logical_circuit, rx, rz,
                   wrap_angle, x)
from .layouts import (addition_layout, grover_layout, grover_logical_indices,
                      lhz_layout, reduced_layout)
from .scheduler import run_passes
from .synth import (_fan_in, _fan_out, hadamard_gates, plan_line,
                    synth_cphase, synth_toffoli)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IsingModel:
    """Weighted Z-product terms, each a sorted tuple of logical indices."""

    terms: tuple

    def __post_init__(self):
        seen = set()
        for idx, coef in self.terms:
            if tuple(sorted(set(idx))) != tuple(idx):
                raise ValueError(f"term indices must be sorted and distinct: {idx}")
            if idx in seen:
                raise ValueError(f"duplicate term {idx}")
            if not math.isfinite(coef):
                raise ValueError(f"non-finite coefficient for {idx}")
            seen.add(idx)


@dataclass(frozen=True)
class QaoaParams:
    betas: tuple[float, ...]
    gammas: tuple[float, ...]

    def __post_init__(self):
        if len(self.betas) != len(self.gammas) or not self.betas:
            raise ValueError("betas and gammas must have equal nonzero length")

    @property
    def depth(self) -> int:
        return len(self.betas)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("self loops are not allowed")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a},{b}) outside vertex range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted((min(a, b), max(a, b)) for a, b in self.edges)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)


# ---------------------------------------------------------------------------
# Fourier transform

def qft_logical(n: int) -> Circuit:
    """Textbook transform: one H per wire plus controlled phases, no swaps."""
    if n < 1:
        raise ValueError("need at least 1 qubit")
    gates = []
    for i in range(n):
        gates.append(h(i))
        for j in range(i + 1, n):
            gates.append(cp(i, j, TWO_PI / 2 ** (j - i + 1)))
    return logical_circuit(n, gates)


def _qft_line_block(layout, i, partners) -> tuple[list[Gate], float]:
    """One line's H block plus its controlled-phase rotations.

    The chain fans toward the data qubit; segments are emitted upper side
    first so the crossing to the next line frees as early as possible.
    """
    gates, phase = hadamard_gates(layout, i, root=layout.data_qubit(i))
    di = layout.data_qubit(i)
    for j in partners:
        phi = TWO_PI / 2 ** (abs(j - i) + 1)
        gates += [rz(di, phi / 2), rz(label(i, j), -phi / 2),
                  rz(layout.data_qubit(j), phi / 2)]
        phase += phi / 4
    return gates, phase


def _qft_gates(layout, order) -> tuple[list[Gate], float]:
    gates: list[Gate] = []
    phase = 0.0
    remaining = list(order)
    for k, i in enumerate(remaining):
        block, p = _qft_line_block(layout, i, remaining[k + 1:])
        gates += block
        phase += p
    return gates, phase


def qft_parity(n: int, passes: bool = True) -> tuple[Circuit, ParityLayout]:
    """Compiled transform on the all-pairs layout."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    layout = lhz_layout(n)
    gates, phase = _qft_gates(layout, range(n))
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), phase)
    return (run_passes(circuit) if passes else circuit), layout


# ---------------------------------------------------------------------------
# Addition

def _addition_phase_gates(layout, n) -> tuple[list[Gate], float]:
    """The conditional-rotation block between the two transforms."""
    gates: list[Gate] = []
    phase = 0.0
    for w in range(n):
        for s in range(w + 1):
            phi = TWO_PI / 2 ** (w - s + 1)
            aw, bs = w, n + s
            gates += [rz(layout.data_qubit(aw), phi / 2), rz(label(aw, bs), -phi / 2),
                      rz(layout.data_qubit(bs), phi / 2)]
            phase += phi / 4
    return gates, phase


def draper_core(n: int, r2_internal: bool = False,
                passes: bool = True) -> tuple[Circuit, ParityLayout]:
    """Just the depth-one rotation layer of the adder."""
    layout = addition_layout(n, r2_internal)
    gates, phase = _addition_phase_gates(layout, n)
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), phase)
    return (run_passes(circuit) if passes else circuit), layout


def draper_addition(n: int, r2_internal: bool = False,
                    passes: bool = True) -> tuple[Circuit, ParityLayout]:
    """In-place modular adder: transform register A, phase against B, invert.

    Register A holds bits of `a` little-endian on logical 0..n-1, register B
    on logical n..2n-1; the map is |a>|b> -> |a+b mod 2^n>|b>.
    """
    if n < 1:
        raise ValueError("need at least 1 qubit per register")
    layout = addition_layout(n, r2_internal)
    fwd_gates, fwd_phase = _qft_gates(layout, range(n - 1, -1, -1))
    fwd = Circuit(PHYSICAL, tuple(layout.qubits), tuple(fwd_gates), fwd_phase)
    core_gates, core_phase = _addition_phase_gates(layout, n)
    gates = list(fwd.gates) + core_gates + list(adjoint(fwd).gates)
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), core_phase)
    return (run_passes(circuit) if passes else circuit), layout


def addition_logical(n: int) -> Circuit:
    """Logical-register reference for the adder, same wire convention."""
    gates = []
    phase = 0.0
    for i in range(n - 1, -1, -1):
        gates.append(h(i))
        for j in range(i - 1, -1, -1):
            gates.append(cp(i, j, TWO_PI / 2 ** (i - j + 1)))
    fwd = logical_circuit(2 * n, gates)
    core = [cp(w, n + s, TWO_PI / 2 ** (w - s + 1))
            for w in range(n) for s in range(w + 1)]
    all_gates = list(fwd.gates) + core + list(adjoint(fwd).gates)
    return logical_circuit(2 * n, all_gates, phase)


# ---------------------------------------------------------------------------
# Multi-controlled phase and diffusion

def _ccz_logical_gates(a, b, c) -> list[Gate]:
    return [cp(a, c, math.pi / 2), cp(b, c, math.pi / 2), cnot(a, b),
            cp(b, c, -math.pi / 2), cnot(a, b)]


def _toffoli_logical_gates(a, b, t) -> list[Gate]:
    return [h(t)] + _ccz_logical_gates(a, b, t) + [h(t)]


def _ladder(m):
    """(controls..., ancilla target) trios of the AND ladder."""
    problem, anc = grover_logical_indices(m)
    trios = [(problem[1], problem[0], anc[0])]
    for k in range(2, m):
        trios.append((problem[k], anc[k - 2], anc[k - 1]))
    return problem, anc, trios


def multi_controlled_phase(m: int, angle: float) -> tuple[Circuit, ParityLayout]:
    """Phase on the target conditioned on m controls, via an ancilla ladder.

    Each ladder step is a Toffoli writing the running AND onto a fresh
    ancilla; the phase acts between the last ancilla and the target, then
    the ladder uncomputes, returning every ancilla to zero.
    """
    layout = grover_layout(m)
    problem, anc, trios = _ladder(m)
    up: list[Gate] = []
    phase = 0.0
    for i, j, target in trios:
        t = synth_toffoli(layout, i, j, target)
        up += list(t.gates)
        phase += t.global_phase
    central = synth_cphase(layout, anc[-1], problem[-1], angle)
    ladder_circ = Circuit(PHYSICAL, tuple(layout.qubits), tuple(up), phase)
    gates = up + list(central.gates) + list(adjoint(ladder_circ).gates)
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates),
                      central.global_phase)
    return circuit, layout


def mcp_logical(m: int, angle: float) -> Circuit:
    problem, anc, trios = _ladder(m)
    n = 2 * m
    up: list[Gate] = []
    for i, j, target in trios:
        up += _toffoli_logical_gates(i, j, target)
    ladder = logical_circuit(n, up)
    gates = up + [cp(anc[-1], problem[-1], angle)] + list(adjoint(ladder).gates)
    return logical_circuit(n, gates)


def grover_diffusion(n_total: int) -> tuple[Circuit, ParityLayout]:
    """Reflection about the uniform state on n_total logical qubits."""
    if n_total < 3:
        raise ValueError("need at least 3 qubits")
    m = n_total - 1
    mcp, layout = multi_controlled_phase(m, math.pi)
    problem, _ = grover_logical_indices(m)
    wrap: list[Gate] = []
    phase = 0.0
    for p in problem:
        had, hp = hadamard_gates(layout, p)
        wrap += had
        phase += hp
    for p in problem:
        wrap += [x(q) for q in layout.line(p)]
    wrap_circ = Circuit(PHYSICAL, tuple(layout.qubits), tuple(wrap), phase)
    gates = wrap + list(mcp.gates) + list(adjoint(wrap_circ).gates)
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), mcp.global_phase)
    return circuit, layout


def diffusion_logical(n_total: int) -> Circuit:
    m = n_total - 1
    problem, _, _ = _ladder(m)
    n = 2 * m
    wrap = [h(p) for p in problem] + [x(p) for p in problem]
    wrap_circ = logical_circuit(n, wrap)
    inner = mcp_logical(m, math.pi)
    gates = wrap + list(inner.gates) + list(adjoint(wrap_circ).gates)
    return logical_circuit(n, gates)


# ---------------------------------------------------------------------------
# Optimization steps

def qaoa_step(model: IsingModel, params: QaoaParams,
              layout: ParityLayout) -> Circuit:
    """Alternating problem-phase and driver layers on a parity layout.

    Every model term maps to one RZ on the qubit storing that parity; the
    driver is one chain-sandwiched RX per logical line, interleaved like the
    transform blocks.
    """
    for idx, _ in model.terms:
        if label(*idx) not in layout:
            raise ValueError(f"no layout qubit stores the parity {label(*idx)}")
    gates: list[Gate] = []
    n = layout.n_logical
    for gamma, beta in zip(params.gammas, params.betas):
        for idx, coef in model.terms:
            a = wrap_angle(2 * gamma * coef)
            if a != 0.0:
                gates.append(rz(label(*idx), a))
        if wrap_angle(2 * beta) != 0.0:
            for i in range(n):
                plan = plan_line(layout, i, root=layout.data_qubit(i))
                line = plan.line
                r = line.index(plan.root)
                gates += _fan_in(line, r)
                gates.append(rx(plan.root, 2 * beta))
                gates += _fan_out(line, r)
    return Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates))


def qaoa_logical(model: IsingModel, params: QaoaParams, n: int) -> Circuit:
    gates: list[Gate] = []
    for gamma, beta in zip(params.gammas, params.betas):
        for idx, coef in model.terms:
            a = wrap_angle(2 * gamma * coef)
            if a == 0.0:
                continue
            chain = [cnot(idx[k], idx[k + 1]) for k in range(len(idx) - 1)]
            gates += chain + [rz(idx[-1], a)] + list(reversed(chain))
        if wrap_angle(2 * beta) != 0.0:
            gates += [rx(i, 2 * beta) for i in range(n)]
    return logical_circuit(n, gates)


# ---------------------------------------------------------------------------
# Graph states

def _closure_pairs(edges) -> set[tuple[int, int]]:
    """Edge parities plus the sub-triangle fill needed by the encoder."""
    pairs = set()
    for a, b in edges:
        for i in range(a, b + 1):
            for j in range(i + 1, b + 1):
                pairs.add((i, j))
    return pairs


def graph_layout(g: Graph) -> ParityLayout:
    """Reduced layout for a graph state: one parity qubit per edge, plus any
    helper parities the nearest-neighbor encoder needs."""
    pairs = _closure_pairs(g.sorted_edges())
    labels = {label(a, b) for a, b in pairs}
    constraints = []
    for i in range(g.n - 1):
        if (i, i + 1) in pairs:
            constraints.append(Constraint((label(i), label(i + 1), label(i, i + 1))))
    for i in range(g.n - 2):
        tri = [(i, i + 1), (i, i + 2), (i + 1, i + 2)]
        if all(p in pairs for p in tri):
            constraints.append(Constraint(tuple(label(*p) for p in tri)))
    for j in range(2, g.n - 1):
        for i in range(j - 1):
            sq = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
            if all(p in pairs for p in sq):
                constraints.append(Constraint(tuple(label(*p) for p in sq)))
    return reduced_layout(g.n, labels, tuple(constraints))


def encoding_sequence(layout: ParityLayout) -> list[Gate]:
    """CNOT program writing every pair parity from data-register bits.

    Nearest-neighbor pairs load from their two data qubits; a longer pair
    (i,j) first receives the cascaded value of (i,i+1) from below, then the
    finished (i+1,j) from the side, leaving exactly the i,j parity. Emission
    follows the wavefront so the layering pipelines.
    """
    n = layout.n_logical
    present = {q.indices for q in layout.qubits if not q.is_data}
    gates: list[Gate] = []
    for i in range(n - 1):
        if (i, i + 1) in present:
            gates.append(cnot(label(i), label(i, i + 1)))
    for i in range(n - 1):
        if (i, i + 1) in present:
            gates.append(cnot(label(i + 1), label(i, i + 1)))
    for level in range(2, n + 1):
        if level <= n - 1:
            for i in range(n - level):
                if (i, i + level) in present:
                    gates.append(cnot(label(i, i + level - 1), label(i, i + level)))
        d = level - 1
        if d >= 2:
            for i in range(n - d):
                if (i, i + d) in present:
                    gates.append(cnot(label(i + 1, i + d), label(i, i + d)))
    return gates


def graph_state_prep(g: Graph, decode: bool = False,
                     passes: bool = True) -> tuple[Circuit, ParityLayout]:
    """Prepare the encoded graph state: plus states, encode, one CZ layer.

    With `decode` the encoding is uncomputed afterwards, leaving the logical
    graph state on the data qubits.
    """
    layout = graph_layout(g)
    gates: list[Gate] = [h(label(i)) for i in range(g.n)]
    enc = encoding_sequence(layout)
    gates += enc
    phase = 0.0
    for a, b in g.sorted_edges():
        gates += [rz(label(a), math.pi / 2), rz(label(a, b), -math.pi / 2),
                  rz(label(b), math.pi / 2)]
        phase += math.pi / 4
    if decode:
        for gate in reversed(enc):
            gates.append(gate)
    circuit = Circuit(PHYSICAL, tuple(layout.qubits), tuple(gates), phase)
    return (run_passes(circuit) if passes else circuit), layout


def graph_state_logical(g: Graph) -> Circuit:
    gates = [h(i) for i in range(g.n)]
    gates += [cp(a, b, math.pi) for a, b in g.sorted_edges()]
    return logical_circuit(g.n, gates)
