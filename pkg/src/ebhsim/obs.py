"""Observables of a ground state: densities, one-body coherence, the
collective-mode witness and its separability bound, the staggered order
parameter, bipartite entanglement entropy, the particle-hole energy gap,
and the time-of-flight structure factor.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .fock import BasisTable, enumerate_basis, hop_table
from .model import ModelParams, build_hamiltonian
from .solver import GroundState, SolverOptions, ground_state

IMAG_TOL = 1e-10


@dataclass
class WitnessReport:
    """Variance test of R = b_q^dag b_q against the separable-state bound."""

    q: float
    mean_R: float
    var_R: float
    r_sep: float
    lam: float  # var_R - r_sep; negative certifies collective entanglement


@dataclass
class EntropyReport:
    cut: int
    schmidt: np.ndarray  # squared Schmidt coefficients, descending
    S_V: float  # von Neumann entropy in nats


@dataclass
class GapReport:
    E_minus: float
    E_0: float
    E_plus: float
    delta: float


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, GroundState):
        return state.vector
    return np.asarray(state)


def momentum_grid(L: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(L) / L


def _check_momentum(basis: BasisTable, q: float) -> float:
    m = q * basis.L / (2.0 * np.pi)
    if abs(m - round(m)) > 1e-9:
        raise ValueError(f"q={q} is not on the 2*pi*m/L momentum grid for L={basis.L}")
    return q


def site_densities(state, basis: BasisTable) -> np.ndarray:
    """Expectation <n_j> per site; sums to N."""
    psi = _amplitudes(state)
    weights = np.abs(psi) ** 2
    return weights @ basis.states.astype(np.float64)


def one_body_matrix(state, basis: BasisTable) -> np.ndarray:
    """G_ij = <b+_i b_j>, complex Hermitian, trace N."""
    psi = _amplitudes(state)
    L = basis.L
    G = np.zeros((L, L), dtype=complex)
    np.fill_diagonal(G, site_densities(psi, basis))
    for i in range(L):
        for j in range(L):
            if i == j:
                continue
            targets, amps = hop_table(basis, i, j)
            ok = targets >= 0
            G[i, j] = np.sum(np.conj(psi[targets[ok]]) * amps[ok] * psi[ok])
    return G


def collective_number_operator(basis: BasisTable, q: float) -> sp.csr_matrix:
    """Sparse R = b_q^dag b_q = (1/L) sum_ij e^{iq(i-j)} b+_i b_j.

    R conserves the total boson number, so it acts within the table.
    """
    _check_momentum(basis, q)
    L, dim = basis.L, basis.dim
    phases = np.exp(1j * q * np.arange(L))
    source = np.arange(dim)
    rows = [source]
    cols = [source]
    vals = [np.full(dim, basis.N / L, dtype=complex)]
    for i in range(L):
        for j in range(L):
            if i == j:
                continue
            targets, amps = hop_table(basis, i, j)
            ok = targets >= 0
            rows.append(targets[ok])
            cols.append(source[ok])
            vals.append((phases[i] * np.conj(phases[j]) / L) * amps[ok])
    R = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    return R.tocsr()


def witness(state, basis: BasisTable, q: float) -> WitnessReport:
    """Evaluate the collective-entanglement witness at momentum q.

    var_R comes from explicitly applying R to the state; r_sep is the
    separable bound [N(L-1) + N^2 - sum <n_j>^2] / L^2.
    """
    psi = _amplitudes(state).astype(complex)
    R = collective_number_operator(basis, q)
    Rpsi = R @ psi
    mean_c = np.vdot(psi, Rpsi)
    if abs(mean_c.imag) > IMAG_TOL:
        raise ArithmeticError(f"<R> has imaginary part {mean_c.imag:.3e}")
    mean_R = float(mean_c.real)
    var_R = float(np.vdot(Rpsi, Rpsi).real - mean_R**2)
    dens = site_densities(psi, basis)
    L, N = basis.L, basis.N
    r_sep = float((N * (L - 1) + N**2 - np.sum(dens**2)) / L**2)
    return WitnessReport(q=q, mean_R=mean_R, var_R=var_R, r_sep=r_sep, lam=var_R - r_sep)


def witness_min_over_q(state, basis: BasisTable):
    """Witness at every grid momentum; returns (q*, report) with minimal lambda.

    Ties break toward the smallest grid index.
    """
    best = None
    for q in momentum_grid(basis.L):
        rep = witness(state, basis, q)
        if best is None or rep.lam < best.lam:
            best = rep
    return best.q, best


def theta_lr(state, basis: BasisTable):
    """Staggered order parameter: signed 2<D>/N and RMS 2*sqrt(<D^2>)/N,
    with D = sum_j (-1)^j n_j (first site sign -1)."""
    if basis.L % 2 != 0:
        raise ValueError("the staggered order parameter needs an even number of sites")
    psi = _amplitudes(state)
    signs = np.ones(basis.L)
    signs[0::2] = -1.0
    d_values = basis.states.astype(np.float64) @ signs
    weights = np.abs(psi) ** 2
    mean_d = float(weights @ d_values)
    mean_d2 = float(weights @ d_values**2)
    return {
        "signed": 2.0 * mean_d / basis.N,
        "rms": 2.0 * np.sqrt(mean_d2) / basis.N,
    }


def entanglement_entropy(state, basis: BasisTable, cut: int) -> EntropyReport:
    """Half-cut von Neumann entropy via blockwise Schmidt decomposition.

    Amplitudes are regrouped into blocks of fixed subsystem-A particle
    number; singular values are pooled across blocks.
    """
    if not 1 <= cut <= basis.L - 1:
        raise ValueError(f"cut must lie strictly inside the chain, got {cut} for L={basis.L}")
    psi = _amplitudes(state)
    L, N = basis.L, basis.N
    left = basis.states[:, :cut]
    right = basis.states[:, cut:]
    n_left = left.sum(axis=1).astype(int)
    probs = []
    for n_a in range(N + 1):
        sel = np.nonzero(n_left == n_a)[0]
        if sel.size == 0:
            continue
        basis_a = enumerate_basis(cut, n_a)
        basis_b = enumerate_basis(L - cut, N - n_a)
        block = np.zeros((basis_a.dim, basis_b.dim), dtype=psi.dtype)
        rows = [basis_a.index[tuple(s)] for s in left[sel].tolist()]
        cols = [basis_b.index[tuple(s)] for s in right[sel].tolist()]
        block[rows, cols] = psi[sel]
        probs.append(np.linalg.svd(block, compute_uv=False) ** 2)
    schmidt = np.sort(np.concatenate(probs))[::-1]
    positive = schmidt[schmidt > 1e-16]
    s_v = float(-np.sum(positive * np.log(positive)))
    return EntropyReport(cut=cut, schmidt=schmidt, S_V=s_v)


def energy_gap(params: ModelParams, opts: SolverOptions | None = None) -> GapReport:
    """Particle-hole gap from ground energies at N-1, N, N+1 bosons."""
    if params.N < 2:
        raise ValueError("the gap formula needs N >= 2 (the N-1 sector must be non-trivial)")
    energies = {}
    for dn in (-1, 0, 1):
        p = dataclasses.replace(params, N=params.N + dn)
        basis = enumerate_basis(p.L, p.N)
        energies[dn] = ground_state(build_hamiltonian(p, basis), opts).energy
    n = params.N
    delta = n * (energies[1] / (n + 1) + energies[-1] / (n - 1) - 2.0 * energies[0] / n)
    return GapReport(E_minus=energies[-1], E_0=energies[0], E_plus=energies[1], delta=delta)


def structure_factor(state, basis: BasisTable, k: float) -> float:
    """Time-of-flight interference S(k) = sum_ij e^{ik(i-j)} <b+_i b_j>.

    Equals L * mean_R at grid momenta.
    """
    G = one_body_matrix(state, basis)
    phases = np.exp(1j * k * np.arange(basis.L))
    value = phases @ G @ np.conj(phases)
    if abs(value.imag) > 1e-8:
        raise ArithmeticError(f"S(k) has imaginary part {value.imag:.3e}")
    return float(value.real)
