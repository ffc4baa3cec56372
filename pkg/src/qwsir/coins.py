"""Coin operators for discrete-time quantum walks.

A coin is a unitary matrix acting on the direction register.  The walks in
this package use three families:

- ``make_hadamard_coin(1)`` -- the 2x2 Hadamard coin for walks on a line
  or cycle (two directions).
- ``make_hadamard_coin(2)`` -- the 4x4 tensor square H (x) H for the
  two-dimensional lattice walk (four directions).
- ``make_dft_coin(d)`` -- the d x d discrete-Fourier coin, which maps any
  basis direction to an equal-probability superposition of all d
  directions; used for the degree-3 hypercube walk.

``embed_dft3_gate`` widens the 3x3 Fourier coin to a 4x4 unitary (two
qubits) by fixing the fourth basis state, so the same coin can be realised
on qubit hardware registers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tolerances import ALGEBRAIC_TOL

__all__ = [
    "CoinOperator",
    "make_hadamard_coin",
    "make_dft_coin",
    "embed_dft3_gate",
]


@dataclass(frozen=True)
class CoinOperator:
    """A unitary matrix over the direction (coin) register.

    Raises ``ValueError`` if the matrix is not square or deviates from
    unitarity by more than ``ALGEBRAIC_TOL`` entrywise.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"coin matrix must be square, got shape {m.shape}")
        dev = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if dev > ALGEBRAIC_TOL:
            raise ValueError(f"coin matrix is not unitary (max deviation {dev:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


_H2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


def make_hadamard_coin(k: int) -> CoinOperator:
    """Return the k-fold tensor power of the Hadamard matrix.

    Parameters
    ----------
    k:
        Number of coin qubits; 1 gives the 2x2 coin (entries +-1/sqrt(2)),
        2 gives the 4x4 coin H (x) H (entries +-1/2).

    Raises
    ------
    ValueError
        If ``k`` is not 1 or 2 (larger coins are not used by any walk
        geometry here).
    """
    if k not in (1, 2):
        raise ValueError(f"unsupported coin size: k must be 1 or 2, got {k}")
    m = _H2
    for _ in range(k - 1):
        m = np.kron(m, _H2)
    return CoinOperator(m)


def make_dft_coin(d: int) -> CoinOperator:
    """Return the d x d discrete-Fourier coin.

    Entry (j, k) is ``omega**(j*k) / sqrt(d)`` with ``omega = exp(2*pi*i/d)``.
    For d = 2 this is exactly the Hadamard matrix.  Each column has flat
    magnitudes, so measuring after one application yields every direction
    with probability 1/d.

    Raises
    ------
    ValueError
        If ``d < 2``.
    """
    if d < 2:
        raise ValueError(f"Fourier coin needs dimension >= 2, got {d}")
    jk = np.outer(np.arange(d), np.arange(d))
    m = np.exp(2j * np.pi / d) ** jk / np.sqrt(d)
    return CoinOperator(m)


def embed_dft3_gate() -> CoinOperator:
    """Return the 3x3 Fourier coin embedded as a 4x4 (two-qubit) unitary.

    The top-left 3x3 block is the Fourier coin; the fourth row and column
    are zero except for a 1 at (3, 3).  Acting on the first basis state it
    puts probability 1/3 on each of the first three basis states and zero
    on the fourth; the fourth basis state is a fixed point.
    """
    m = np.eye(4, dtype=np.complex128)
    m[:3, :3] = make_dft_coin(3).matrix
    return CoinOperator(m)
