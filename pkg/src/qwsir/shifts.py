"""Conditional shift operators for quantum walks.

A shift moves the walker's position register by an amount selected by the
coin basis state.  Shifts are stored as one position permutation per coin
index (an array ``destinations[c, p]`` = new position of a walker at
position ``p`` when the coin reads ``c``), which makes applying a walk
step O(dim) instead of O(dim**2).  Dense matrices are materialised only
for verification at small dimensions.

Geometries:

- cycle / line: conditional increment (coin 0) and decrement (coin 1)
  modulo the number of sites,
- 2D torus: the four coin states move one step in -x, -y, +x, +y with
  periodic wrap on both axes,
- hypercube: coin index j flips one bit of the vertex label (the walk
  moves along edge-direction j+1; bit 0 is the most significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShiftOperator",
    "cycle_permutations",
    "make_cycle_shift",
    "make_torus_shift_2d",
    "make_hypercube_shift",
    "permutation_matrix",
]


@dataclass(frozen=True)
class ShiftOperator:
    """Conditional position permutation: one bijection per coin index.

    ``destinations`` has shape (coin_dim, position_dim); each row must be
    a permutation of ``0..position_dim-1``, which guarantees the induced
    joint matrix is unitary.
    """

    destinations: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.asarray(self.destinations, dtype=np.intp)
        if d.ndim != 2:
            raise ValueError(f"destinations must be 2-D, got shape {d.shape}")
        n = d.shape[1]
        for c in range(d.shape[0]):
            if not np.array_equal(np.sort(d[c]), np.arange(n)):
                raise ValueError(f"coin index {c}: destination row is not a permutation")
        d.setflags(write=False)
        object.__setattr__(self, "destinations", d)

    @property
    def coin_dim(self) -> int:
        return self.destinations.shape[0]

    @property
    def position_dim(self) -> int:
        return self.destinations.shape[1]

    def apply(self, amps2d: np.ndarray) -> np.ndarray:
        """Permute positions per coin row of a (coin_dim, position_dim) array."""
        out = np.empty_like(amps2d)
        rows = np.arange(self.coin_dim)[:, None]
        out[rows, self.destinations] = amps2d
        return out

    def dense(self) -> np.ndarray:
        """Materialise the joint (coin tensor position) 0/1 matrix."""
        cd, pd = self.destinations.shape
        n = cd * pd
        m = np.zeros((n, n))
        for c in range(cd):
            for p in range(pd):
                m[c * pd + self.destinations[c, p], c * pd + p] = 1.0
        return m


def permutation_matrix(destinations: np.ndarray) -> np.ndarray:
    """Dense 0/1 matrix of a position permutation (column p -> row dest[p])."""
    n = len(destinations)
    m = np.zeros((n, n))
    m[np.asarray(destinations), np.arange(n)] = 1.0
    return m


def cycle_permutations(n_sites: int) -> tuple[np.ndarray, np.ndarray]:
    """Increment/decrement permutations on a cycle of ``n_sites`` vertices.

    Works for any n_sites >= 1; the qubit-encoded variant
    ``make_cycle_shift`` restricts to powers of two.
    """
    if n_sites < 1:
        raise ValueError(f"cycle needs at least one site, got {n_sites}")
    k = np.arange(n_sites)
    inc = (k + 1) % n_sites
    dec = (k - 1) % n_sites
    return inc, dec


def make_cycle_shift(n_qubits: int) -> tuple[np.ndarray, np.ndarray, ShiftOperator]:
    """Conditional increment/decrement shift on a 2**n_qubits cycle.

    Returns ``(inc, dec, s)`` where ``inc`` maps position k to k+1 (mod N),
    ``dec`` maps k to k-1 (mod N), and ``s`` applies ``inc`` when the coin
    reads 0 (spin up) and ``dec`` when it reads 1 (spin down).

    Raises
    ------
    ValueError
        If ``n_qubits`` is outside 1..20 (the statevector would not fit).
    """
    if not 1 <= n_qubits <= 20:
        raise ValueError(f"n_qubits must be in 1..20 for a dense statevector, got {n_qubits}")
    inc, dec = cycle_permutations(2**n_qubits)
    return inc, dec, ShiftOperator(np.stack([inc, dec]))


def make_torus_shift_2d(lx: int, ly: int) -> ShiftOperator:
    """Four-direction conditional shift on an lx-by-ly torus.

    Coin basis order (|00>, |01>, |10>, |11>) moves (-x, -y, +x, +y); both
    axes wrap periodically.  Positions are flattened as ``x * ly + y``.

    Raises
    ------
    ValueError
        If either extent is below 2.
    """
    if lx < 2 or ly < 2:
        raise ValueError(f"torus extents must be >= 2, got {lx}x{ly}")
    x, y = np.divmod(np.arange(lx * ly), ly)
    rows = [
        ((x - 1) % lx) * ly + y,
        x * ly + (y - 1) % ly,
        ((x + 1) % lx) * ly + y,
        x * ly + (y + 1) % ly,
    ]
    return ShiftOperator(np.stack(rows))


def make_hypercube_shift(d: int = 3, coin_dim: int | None = None) -> ShiftOperator:
    """Bit-flip shift on the d-dimensional hypercube.

    Coin index j (edge direction j+1) flips bit j of the d-bit vertex
    label, with bit 0 the most significant: direction 1 moves vertex 000
    to 100.  Each direction is an involution.  If ``coin_dim`` exceeds
    ``d`` (e.g. a 3-direction coin embedded in two qubits), the extra coin
    indices leave the position unchanged.

    Raises
    ------
    ValueError
        If ``d`` is outside 1..10, or ``coin_dim`` < d.
    """
    if not 1 <= d <= 10:
        raise ValueError(f"hypercube dimension must be in 1..10, got {d}")
    if coin_dim is None:
        coin_dim = d
    if coin_dim < d:
        raise ValueError(f"coin_dim {coin_dim} cannot address {d} directions")
    v = np.arange(2**d)
    rows = [v ^ (1 << (d - 1 - j)) for j in range(d)]
    rows += [v.copy() for _ in range(coin_dim - d)]
    return ShiftOperator(np.stack(rows))
