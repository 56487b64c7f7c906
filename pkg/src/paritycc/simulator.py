"""Dense statevector engine: gate application, encoding isometry,
stabilizer checks and code-subspace equivalence.

Register order fixes the bit layout: bit k of the amplitude index belongs
to register position k (little-endian).
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass

import numpy as np

from .code import Circuit, ParityLayout, QubitLabel

DEFAULT_CAP = 22
NORM_TOL = 1e-12
LEAK_TOL = 1e-10


def qubit_cap() -> int:
    return int(os.environ.get("PARITY_SIM_CAP", DEFAULT_CAP))


class ResourceCapError(RuntimeError):
    """Register larger than the configured simulation cap."""


@dataclass
class StateVector:
    """Unit-norm complex amplitudes over an ordered qubit register."""

    register: tuple
    amps: np.ndarray

    def __post_init__(self):
        k = len(self.register)
        if k > qubit_cap():
            raise ResourceCapError(f"{k} qubits exceeds the cap of {qubit_cap()}")
        self.amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if self.amps.shape != (2 ** k,):
            raise ValueError(f"expected {2 ** k} amplitudes, got {self.amps.shape}")

    @property
    def n_qubits(self) -> int:
        return len(self.register)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "StateVector":
        return StateVector(self.register, self.amps.copy())


def zero_state(register) -> StateVector:
    amps = np.zeros(2 ** len(register), dtype=complex)
    amps[0] = 1.0
    return StateVector(tuple(register), amps)


def basis_state(register, bits) -> StateVector:
    idx = 0
    for k, q in enumerate(register):
        idx |= (bits[q] & 1) << k
    amps = np.zeros(2 ** len(register), dtype=complex)
    amps[idx] = 1.0
    return StateVector(tuple(register), amps)


def random_state(register, rng) -> StateVector:
    k = len(register)
    v = rng.normal(size=2 ** k) + 1j * rng.normal(size=2 ** k)
    return StateVector(tuple(register), v / np.linalg.norm(v))


def _single_qubit_matrix(kind: str, angle):
    if kind == "RZ":
        return np.array([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]])
    if kind == "RX":
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind == "H":
        return np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    if kind == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    raise ValueError(kind)


def _apply_single(amps: np.ndarray, mat: np.ndarray, pos: int, k: int) -> np.ndarray:
    # amps reshaped so the target qubit is the last axis of a (…, 2) view
    a = amps.reshape(2 ** (k - pos - 1), 2, 2 ** pos)
    return np.einsum("ab,xby->xay", mat, a).reshape(-1)


def _apply_two(amps: np.ndarray, kind: str, angle, p0: int, p1: int, k: int) -> np.ndarray:
    idx = np.arange(amps.size)
    b0 = (idx >> p0) & 1
    b1 = (idx >> p1) & 1
    out = amps.copy()
    if kind == "CNOT":
        src = np.where(b0 == 1, idx ^ (1 << p1), idx)
        out = amps[src]
    elif kind == "CP":
        mask = (b0 & b1).astype(bool)
        out[mask] = amps[mask] * np.exp(1j * angle)
    else:
        raise ValueError(kind)
    return out


def apply(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply a circuit; gate qubits must be present in the state register."""
    pos = {q: k for k, q in enumerate(state.register)}
    k = state.n_qubits
    amps = state.amps
    for g in circuit.gates:
        if g.kind in ("CNOT", "CP"):
            amps = _apply_two(amps, g.kind, g.angle, pos[g.qubits[0]], pos[g.qubits[1]], k)
        else:
            amps = _apply_single(amps, _single_qubit_matrix(g.kind, g.angle), pos[g.qubits[0]], k)
    if circuit.global_phase:
        amps = amps * np.exp(1j * circuit.global_phase)
    return StateVector(state.register, amps)


def _physical_index_map(layout: ParityLayout) -> np.ndarray:
    """physical basis index for every logical basis index, by label parities."""
    n = layout.n_logical
    s = np.arange(2 ** n, dtype=np.int64)
    phys = np.zeros(2 ** n, dtype=np.int64)
    for pos, q in enumerate(layout.qubits):
        bit = np.zeros(2 ** n, dtype=np.int64)
        for i in q.indices:
            bit ^= (s >> i) & 1
        phys |= bit << pos
    return phys


def encode(layout: ParityLayout, logical_state: StateVector) -> StateVector:
    """Isometry sending each logical basis state to its parity image."""
    n = layout.n_logical
    if logical_state.n_qubits != n:
        raise ValueError(f"logical state has {logical_state.n_qubits} qubits, layout expects {n}")
    k = len(layout.qubits)
    if k > qubit_cap():
        raise ResourceCapError(f"{k} physical qubits exceeds the cap of {qubit_cap()}")
    amps = np.zeros(2 ** k, dtype=complex)
    amps[_physical_index_map(layout)] = logical_state.amps
    return StateVector(tuple(layout.qubits), amps)


def decode(layout: ParityLayout, physical_state: StateVector) -> StateVector:
    """Inverse of encode on its image; rejects states leaking out of the code space."""
    phys = _physical_index_map(layout)
    logical = physical_state.amps[phys]
    leak = math.sqrt(max(float(np.linalg.norm(physical_state.amps) ** 2
                               - np.linalg.norm(logical) ** 2), 0.0))
    if leak > LEAK_TOL:
        raise ValueError(f"state has weight {leak:.3e} outside the code space")
    return StateVector(tuple(range(layout.n_logical)), logical)


def check_stabilizers(layout: ParityLayout, physical_state: StateVector) -> float:
    """Max over constraints of || C|psi> - |psi> ||."""
    pos = {q: k for k, q in enumerate(layout.qubits)}
    idx = np.arange(physical_state.amps.size)
    worst = 0.0
    for c in layout.constraints:
        parity = np.zeros_like(idx)
        for m in c.members:
            parity ^= (idx >> pos[m]) & 1
        signs = 1.0 - 2.0 * parity
        dev = float(np.linalg.norm(signs * physical_state.amps - physical_state.amps))
        worst = max(worst, dev)
    return worst


def verify_equivalence(logical_circuit: Circuit, physical_circuit: Circuit,
                       layout: ParityLayout, seed: int = 0, n_random: int = 3) -> float:
    """Minimum overlap |<E U_log psi | U_phys E psi>| over logical basis
    states plus seeded random superpositions.
    """
    n = layout.n_logical
    if len(layout.qubits) > qubit_cap():
        raise ResourceCapError(f"{len(layout.qubits)} qubits exceeds the cap of {qubit_cap()}")
    rng = np.random.default_rng(seed)
    logical_register = tuple(range(n))
    states = [basis_state(logical_register, {i: (s >> i) & 1 for i in range(n)})
              for s in range(2 ** n)]
    states += [random_state(logical_register, rng) for _ in range(n_random)]
    fid = 1.0
    for psi in states:
        want = encode(layout, apply(logical_circuit, psi))
        got = apply(physical_circuit, encode(layout, psi))
        fid = min(fid, abs(complex(np.vdot(want.amps, got.amps))))
    return fid


def dump_state(state: StateVector, path) -> None:
    """Binary dump: little-endian u64 qubit count, then interleaved re/im f64."""
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", state.n_qubits))
        inter = np.empty(2 * state.amps.size, dtype="<f8")
        inter[0::2] = state.amps.real
        inter[1::2] = state.amps.imag
        fh.write(inter.tobytes())


def load_state(path, register=None) -> StateVector:
    with open(path, "rb") as fh:
        (k,) = struct.unpack("<Q", fh.read(8))
        inter = np.frombuffer(fh.read(), dtype="<f8")
    amps = inter[0::2] + 1j * inter[1::2]
    if register is None:
        register = tuple(range(k))
    return StateVector(tuple(register), amps)
