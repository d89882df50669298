"""Independent brute-force oracles used by the tests.

Everything here deliberately avoids the library's own observable code
paths: reduced density matrices are built by explicit outer products,
variances by four-index correlator sums, and the condensate state from
its closed-form amplitudes.
"""

from math import factorial

import numpy as np

from ebhsim.fock import BasisTable, enumerate_basis


def analytic_condensate(basis: BasisTable, q: float = 0.0) -> np.ndarray:
    """Closed-form N-boson condensate in the q momentum orbital."""
    L, N = basis.L, basis.N
    amps = np.empty(basis.dim, dtype=complex)
    for r, occ in enumerate(basis.states):
        weight = factorial(N)
        phase = 0.0
        for j, n in enumerate(occ):
            weight /= factorial(int(n))
            phase += q * j * int(n)
        amps[r] = np.sqrt(weight / L**N) * np.exp(1j * phase)
    return amps


def rdm_entropy(psi, basis: BasisTable, cut: int) -> float:
    """Entropy from an explicitly assembled reduced density matrix."""
    psi = np.asarray(psi)
    left_configs = {}
    right_configs = {}
    for occ in basis.states:
        left_configs.setdefault(tuple(occ[:cut]), len(left_configs))
        right_configs.setdefault(tuple(occ[cut:]), len(right_configs))
    M = np.zeros((len(left_configs), len(right_configs)), dtype=complex)
    for r, occ in enumerate(basis.states):
        M[left_configs[tuple(occ[:cut])], right_configs[tuple(occ[cut:])]] = psi[r]
    rho = M @ M.conj().T
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-16]
    return float(-np.sum(evals * np.log(evals)))


def _lower(vec, basis_n: BasisTable, basis_m: BasisTable, site: int) -> np.ndarray:
    """Apply b_site, mapping the N sector to the N-1 sector."""
    out = np.zeros(basis_m.dim, dtype=complex)
    for r, occ in enumerate(basis_n.states):
        n = int(occ[site])
        if n == 0:
            continue
        target = list(occ)
        target[site] = n - 1
        out[basis_m.index[tuple(target)]] += np.sqrt(n) * vec[r]
    return out


def _raise(vec, basis_n: BasisTable, basis_p: BasisTable, site: int) -> np.ndarray:
    """Apply b^dagger_site, mapping the N sector to the N+1 sector."""
    out = np.zeros(basis_p.dim, dtype=complex)
    for r, occ in enumerate(basis_n.states):
        n = int(occ[site])
        target = list(occ)
        target[site] = n + 1
        out[basis_p.index[tuple(target)]] += np.sqrt(n + 1) * vec[r]
    return out


def brute_force_variance(psi, basis: BasisTable, q: float):
    """(mean, variance) of R = b_q^dag b_q from four-index correlators."""
    L, N = basis.L, basis.N
    psi = np.asarray(psi, dtype=complex)
    basis_m = enumerate_basis(L, N - 1)
    basis_p = enumerate_basis(L, N + 1)
    phases = np.exp(1j * q * np.arange(L))
    mean = 0.0 + 0.0j
    for i in range(L):
        for j in range(L):
            low = _lower(psi, basis, basis_m, j)
            vec = _raise(low, basis_m, basis, i)
            mean += phases[i] * np.conj(phases[j]) * np.vdot(psi, vec)
    mean /= L
    second = 0.0 + 0.0j
    for k in range(L):
        for el in range(L):
            v1 = _lower(psi, basis, basis_m, el)
            v2 = _raise(v1, basis_m, basis, k)
            for i in range(L):
                for j in range(L):
                    v3 = _lower(v2, basis, basis_m, j)
                    v4 = _raise(v3, basis_m, basis, i)
                    second += (
                        phases[i]
                        * np.conj(phases[j])
                        * phases[k]
                        * np.conj(phases[el])
                        * np.vdot(psi, v4)
                    )
    second /= L**2
    assert abs(mean.imag) < 1e-10 and abs(second.imag) < 1e-10
    return float(mean.real), float(second.real - mean.real**2)
