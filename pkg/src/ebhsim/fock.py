"""Number-conserving bosonic Fock basis: enumeration, indexing, ladder operators.

States are occupation vectors of length L summing to N, stored in strict
lexicographic order so that ranks are deterministic across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

DEFAULT_MAX_DIM = 5_000_000


class CapacityError(RuntimeError):
    """Requested basis dimension exceeds the configured ceiling."""


def _compositions(total, parts):
    # lexicographic compositions of `total` into `parts` non-negative ints
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class BasisTable:
    """Ordered N-conserving basis with bidirectional rank <-> state maps."""

    L: int
    N: int
    states: np.ndarray  # (dim, L) uint8, lexicographic rows
    index: dict  # tuple(occupations) -> rank
    _hop_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.states.shape[0]


def basis_dimension(L: int, N: int) -> int:
    """Stars-and-bars count C(N+L-1, N)."""
    return comb(N + L - 1, N)


def enumerate_basis(L: int, N: int, max_dim: int = DEFAULT_MAX_DIM) -> BasisTable:
    """Enumerate all occupation vectors of L sites holding N bosons.

    Raises CapacityError before allocating anything if the dimension would
    exceed `max_dim`.
    """
    if L < 1:
        raise ValueError(f"need at least one site, got L={L}")
    if N < 0:
        raise ValueError(f"boson number must be non-negative, got N={N}")
    if N > 255:
        raise ValueError(f"occupations are stored as uint8, N={N} > 255")
    dim = basis_dimension(L, N)
    if dim > max_dim:
        raise CapacityError(
            f"basis dimension {dim} for (L={L}, N={N}) exceeds the ceiling {max_dim}"
        )
    states = np.empty((dim, L), dtype=np.uint8)
    index = {}
    for rank_, occ in enumerate(_compositions(N, L)):
        states[rank_] = occ
        index[occ] = rank_
    return BasisTable(L=L, N=N, states=states, index=index)


def rank(basis: BasisTable, s) -> int:
    """Rank of an occupation vector within the table."""
    key = tuple(int(x) for x in s)
    try:
        return basis.index[key]
    except KeyError:
        raise ValueError(f"state {key} is not a member of the (L={basis.L}, N={basis.N}) basis")


def unrank(basis: BasisTable, k: int):
    """Occupation vector at rank k."""
    if not 0 <= k < basis.dim:
        raise IndexError(f"rank {k} out of range for dim {basis.dim}")
    return tuple(int(x) for x in basis.states[k])


def apply_hop(s, dest: int, src: int):
    """Apply b^dagger_dest b_src to a Fock state (0-based sites).

    Returns (new_state, amplitude) with amplitude sqrt(n_src * (n_dest + 1)),
    or None when the source site is empty.
    """
    occ = list(int(x) for x in s)
    L = len(occ)
    if dest == src:
        raise ValueError("dest and src must differ")
    if not (0 <= dest < L and 0 <= src < L):
        raise ValueError(f"site out of range for L={L}: dest={dest}, src={src}")
    n_src = occ[src]
    if n_src == 0:
        return None
    n_dest = occ[dest]
    occ[src] = n_src - 1
    occ[dest] = n_dest + 1
    return tuple(occ), np.sqrt(n_src * (n_dest + 1))


def hop_table(basis: BasisTable, dest: int, src: int):
    """Vectorized b^dagger_dest b_src over the whole table.

    Returns (targets, amps): targets[r] is the rank of the hopped state
    (-1 where the source site is empty), amps[r] the matrix element.
    Cached on the table; results are read-only.
    """
    key = (dest, src)
    cached = basis._hop_cache.get(key)
    if cached is not None:
        return cached
    if dest == src or not (0 <= dest < basis.L and 0 <= src < basis.L):
        raise ValueError(f"bad site pair dest={dest}, src={src} for L={basis.L}")
    occ = basis.states.astype(np.int64)
    n_src = occ[:, src]
    n_dest = occ[:, dest]
    ok = n_src > 0
    targets = np.full(basis.dim, -1, dtype=np.int64)
    amps = np.zeros(basis.dim)
    amps[ok] = np.sqrt(n_src[ok] * (n_dest[ok] + 1.0))
    hopped = occ[ok]
    hopped[:, src] -= 1
    hopped[:, dest] += 1
    idx = basis.index
    targets[np.nonzero(ok)[0]] = [idx[tuple(row)] for row in hopped.tolist()]
    targets.setflags(write=False)
    amps.setflags(write=False)
    basis._hop_cache[key] = (targets, amps)
    return targets, amps
