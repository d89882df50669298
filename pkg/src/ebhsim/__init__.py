"""Exact-diagonalization toolkit for the extended Bose-Hubbard chain with a
collective-mode entanglement witness and companion observables."""

from .fock import BasisTable, CapacityError, apply_hop, enumerate_basis, rank, unrank
from .model import ModelParams, apply_hamiltonian, build_hamiltonian, diagonal_energies
from .obs import (
    EntropyReport,
    GapReport,
    WitnessReport,
    collective_number_operator,
    energy_gap,
    entanglement_entropy,
    momentum_grid,
    one_body_matrix,
    site_densities,
    structure_factor,
    theta_lr,
    witness,
    witness_min_over_q,
)
from .solver import ConvergenceError, GroundState, SolverOptions, ground_state, lowest_k
from .sweep import (
    SweepRow,
    SweepSpec,
    emit,
    evaluate_point,
    fig1_spec,
    fig2_spec,
    fig3_specs,
    read_rows,
    run_sweep,
)

__version__ = "0.1.0"
