"""Compiler for logical circuits onto nearest-neighbor parity-encoded layouts."""

from .code import (LOGICAL, PHYSICAL, Circuit, Constraint, Gate, ParityLayout,
                   QubitLabel, adjoint, code_basis_image, constraint_satisfied,
                   label, label_parity, logical_circuit, validate_layout,
                   wrap_angle)
from .layouts import (addition_layout, ascii_grid, grover_ancilla_stats,
                      grover_layout, lhz_layout, reduced_layout)
from .scheduler import (ResourceStats, ScheduledCircuit, cancel_adjacent_cnots,
                        cnot_depth_formula, merge_rz, resource_stats,
                        run_passes, schedule)
from .simulator import (StateVector, apply, basis_state, check_stabilizers,
                        decode, encode, random_state, verify_equivalence,
                        zero_state)
from .synth import (SynthesisPlan, apply_negative_controls, synth_ccp,
                    synth_cnot, synth_cphase, synth_higher_order_rz, synth_rx,
                    synth_rz, synth_toffoli, synth_unitary)
from .algorithms import (Graph, IsingModel, QaoaParams, draper_addition,
                         draper_core, graph_state_prep, grover_diffusion,
                         multi_controlled_phase, qaoa_step, qft_logical,
                         qft_parity)

__version__ = "0.1.0"
