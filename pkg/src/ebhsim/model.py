"""Extended Bose-Hubbard Hamiltonian over a number-conserving Fock basis.

H = -J sum_<i,j> (b+_i b_j + h.c.) + (U/2) sum_j n_j (n_j - 1)
    - (U_LR / N) (sum_j (-1)^j n_j)^2  - pin_epsilon * sum_j (-1)^j n_j

with 1-based site parity fixed so the first site carries sign -1.  The
matrix is real symmetric in the Fock basis; complex arithmetic lives in
the observable layer only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .fock import BasisTable, hop_table

BOUNDARIES = ("periodic", "open")


@dataclass(frozen=True)
class ModelParams:
    """Couplings and knobs; energies are in units of U unless stated."""

    L: int
    N: int
    J: float = 0.0
    U: float = 1.0
    U_LR: float = 0.0
    boundary: str = "periodic"
    pin_epsilon: float = 0.0  # tiny staggered field: selects one pinned CDW branch
    j_epsilon: float = 0.0  # tiny hopping added to J for J=0 recipes

    def __post_init__(self):
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        for name in ("J", "U", "U_LR", "pin_epsilon", "j_epsilon"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L}")
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")
        if self.hopping != 0.0 and self.L < 2:
            raise ValueError("hopping requires at least two sites")
        if self.U_LR != 0.0:
            if self.N < 1:
                raise ValueError("the long-range term carries a 1/N factor; need N >= 1")
            if self.L % 2 != 0 and self.boundary == "periodic":
                raise ValueError(
                    "U_LR != 0 with odd L and periodic boundary leaves the even/odd "
                    "sublattices ill-defined"
                )

    @property
    def hopping(self) -> float:
        """Effective hopping J + j_epsilon."""
        return self.J + self.j_epsilon

    def staggered_signs(self) -> np.ndarray:
        """(-1)^j per 0-based array slot; the first site has sign -1."""
        signs = np.ones(self.L)
        signs[0::2] = -1.0
        return signs

    def bonds(self):
        """Unordered nearest-neighbor pairs, each counted once."""
        pairs = [(i, i + 1) for i in range(self.L - 1)]
        if self.boundary == "periodic" and self.L > 2:
            pairs.append((self.L - 1, 0))
        return pairs


def _check_basis(params: ModelParams, basis: BasisTable):
    if basis.L != params.L or basis.N != params.N:
        raise ValueError(
            f"basis built for (L={basis.L}, N={basis.N}), params say (L={params.L}, N={params.N})"
        )


def diagonal_energies(params: ModelParams, basis: BasisTable) -> np.ndarray:
    """On-site + cavity + pinning energy of every basis state."""
    _check_basis(params, basis)
    occ = basis.states.astype(np.float64)
    diag = 0.5 * params.U * np.sum(occ * (occ - 1.0), axis=1)
    signs = params.staggered_signs()
    imbalance = occ @ signs
    if params.U_LR != 0.0:
        diag -= (params.U_LR / params.N) * imbalance**2
    if params.pin_epsilon != 0.0:
        diag -= params.pin_epsilon * imbalance
    return diag


def build_hamiltonian(params: ModelParams, basis: BasisTable) -> sp.csr_matrix:
    """Assemble the sparse real-symmetric Hamiltonian."""
    _check_basis(params, basis)
    dim = basis.dim
    diag = diagonal_energies(params, basis)
    rows = [np.arange(dim)]
    cols = [np.arange(dim)]
    vals = [diag]
    hop = params.hopping
    if hop != 0.0:
        source = np.arange(dim)
        for a, b in params.bonds():
            for dest, src in ((a, b), (b, a)):
                targets, amps = hop_table(basis, dest, src)
                ok = targets >= 0
                rows.append(targets[ok])
                cols.append(source[ok])
                vals.append(-hop * amps[ok])
    H = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    )
    return H.tocsr()


def apply_hamiltonian(params: ModelParams, basis: BasisTable, psi) -> np.ndarray:
    """Matrix-free H @ psi, bypassing explicit sparse assembly."""
    _check_basis(params, basis)
    psi = np.asarray(psi)
    if psi.shape != (basis.dim,):
        raise ValueError(f"state vector must have shape ({basis.dim},), got {psi.shape}")
    out = diagonal_energies(params, basis) * psi
    hop = params.hopping
    if hop != 0.0:
        for a, b in params.bonds():
            for dest, src in ((a, b), (b, a)):
                targets, amps = hop_table(basis, dest, src)
                ok = targets >= 0
                np.add.at(out, targets[ok], -hop * amps[ok] * psi[ok])
    return out
