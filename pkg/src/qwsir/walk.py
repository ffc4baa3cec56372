"""Discrete-time quantum walk evolution.

The walker lives on the composite space coin (x) position.  One step is
the unitary U = S (C (x) I): rotate the coin with C, then move with the
conditional shift S.  Repeating U produces the interference patterns that
distinguish quantum walks from classical ones, including the ballistic
variance growth sigma^2 ~ t^2 (compare ``spread_variance`` with
``classical_variance_series``).

State layout: amplitudes form a flat complex vector of length
coin_dim * position_dim, coin-major (entry c * position_dim + p holds the
amplitude of coin state c at position p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coins import CoinOperator, make_dft_coin, make_hadamard_coin
from .rng import generator
from .shifts import ShiftOperator, cycle_permutations, make_hypercube_shift, make_torus_shift_2d
from .tolerances import ACCUMULATED_TOL, ALGEBRAIC_TOL, DISTRIBUTION_TOL

__all__ = [
    "AmplitudeVector",
    "EvolutionOperator",
    "WalkSpec",
    "evolution_operator",
    "step",
    "position_distribution",
    "coin_distribution",
    "sample_index",
    "build_walk",
    "spread_variance",
    "classical_variance_series",
    "fit_loglog_slope",
]

# Coin basis |00>, |01>, |10>, |11> moves (-x, -y, +x, +y); every module
# that touches 2D directions uses this order.
DIRECTION_LABELS_2D = ("-x", "-y", "+x", "+y")


@dataclass
class AmplitudeVector:
    """Walker state over the coin (x) position basis.

    ``amps`` must have length ``coin_dim * position_dim`` and unit norm
    (within ``ACCUMULATED_TOL``).
    """

    coin_dim: int
    position_dim: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=np.complex128).ravel()
        if len(a) != self.coin_dim * self.position_dim:
            raise ValueError(
                f"amplitude length {len(a)} != coin_dim*position_dim "
                f"({self.coin_dim}*{self.position_dim})"
            )
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > ACCUMULATED_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond tolerance")
        self.amps = a

    @classmethod
    def localized(
        cls,
        coin_dim: int,
        position_dim: int,
        position: int,
        coin_state: np.ndarray | None = None,
    ) -> "AmplitudeVector":
        """State concentrated at one position with the given coin vector.

        ``coin_state`` defaults to the first coin basis state.
        """
        if not 0 <= position < position_dim:
            raise ValueError(f"position {position} out of range 0..{position_dim - 1}")
        if coin_state is None:
            coin = np.zeros(coin_dim, dtype=np.complex128)
            coin[0] = 1.0
        else:
            coin = np.asarray(coin_state, dtype=np.complex128).ravel()
            if len(coin) != coin_dim:
                raise ValueError(f"coin state length {len(coin)} != coin_dim {coin_dim}")
            if abs(np.linalg.norm(coin) - 1.0) > ALGEBRAIC_TOL:
                raise ValueError("initial coin state must be normalised")
        amps = np.zeros((coin_dim, position_dim), dtype=np.complex128)
        amps[:, position] = coin
        return cls(coin_dim, position_dim, amps.ravel())

    def reshaped(self) -> np.ndarray:
        return self.amps.reshape(self.coin_dim, self.position_dim)


class EvolutionOperator:
    """One walk step U = S (C (x) I), applied as a structured action.

    ``dense()`` materialises the joint matrix for verification at small
    dimensions; ``apply`` runs in O(coin_dim^2 * position_dim).
    """

    def __init__(self, coin: CoinOperator, shift: ShiftOperator):
        if coin.dim != shift.coin_dim:
            raise ValueError(
                f"coin dimension {coin.dim} incompatible with shift coin "
                f"dimension {shift.coin_dim}"
            )
        self.coin = coin
        self.shift = shift

    @property
    def coin_dim(self) -> int:
        return self.coin.dim

    @property
    def position_dim(self) -> int:
        return self.shift.position_dim

    def matvec(self, amps: np.ndarray) -> np.ndarray:
        a = amps.reshape(self.coin_dim, self.position_dim)
        return self.shift.apply(self.coin.matrix @ a).ravel()

    def dense(self) -> np.ndarray:
        return self.shift.dense() @ np.kron(
            self.coin.matrix, np.eye(self.position_dim)
        )


def evolution_operator(coin: CoinOperator, shift: ShiftOperator) -> EvolutionOperator:
    """Combine a coin and a conditional shift into one walk step."""
    return EvolutionOperator(coin, shift)


def step(state: AmplitudeVector, u: EvolutionOperator) -> AmplitudeVector:
    """Advance the walker by one step; norm is preserved by unitarity."""
    if (state.coin_dim, state.position_dim) != (u.coin_dim, u.position_dim):
        raise ValueError(
            f"state dims ({state.coin_dim}, {state.position_dim}) do not match "
            f"operator dims ({u.coin_dim}, {u.position_dim})"
        )
    return AmplitudeVector(state.coin_dim, state.position_dim, u.matvec(state.amps))


def position_distribution(state: AmplitudeVector) -> np.ndarray:
    """P(x) = sum over coin states of |amplitude|^2; sums to 1."""
    return np.sum(np.abs(state.reshaped()) ** 2, axis=0)


def coin_distribution(coin_state: np.ndarray) -> np.ndarray:
    """Direction probabilities of a coin vector (squared magnitudes).

    For the 2D coin the entries are ordered (-x, -y, +x, +y).  Rejects
    vectors whose norm deviates from 1 by more than ``DISTRIBUTION_TOL``.
    """
    c = np.asarray(coin_state, dtype=np.complex128).ravel()
    p = np.abs(c) ** 2
    if abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise ValueError(f"coin state norm^2 = {p.sum()!r}, not a valid state")
    return p


def sample_index(dist: np.ndarray, rng) -> int:
    """Draw an index i with probability dist[i].

    ``dist`` may carry slight negative round-off (clamped) and need not be
    exactly normalised (renormalised if the total is within
    ``DISTRIBUTION_TOL`` of 1).  ``rng`` needs a ``random()`` method; both
    ``SplitMix64`` and numpy ``Generator`` qualify.
    """
    d = np.asarray(dist, dtype=float)
    if np.any(d < -ALGEBRAIC_TOL):
        raise ValueError("distribution has a significantly negative entry")
    d = np.clip(d, 0.0, None)
    total = d.sum()
    if total <= 0.0:
        raise ValueError("cannot sample from an all-zero distribution")
    if abs(total - 1.0) > DISTRIBUTION_TOL:
        raise ValueError(f"distribution sums to {total!r}, not 1")
    u = rng.random() * total
    acc = 0.0
    for i, w in enumerate(d):
        acc += w
        if u < acc:
            return i
    return int(len(d) - 1)


@dataclass
class WalkSpec:
    """Recipe for a walk: geometry, coin, and initial state.

    ``geometry`` is one of:

    - ``("cycle", n_sites)`` -- n_sites ring, 2-direction coin,
    - ``("line", extent)`` -- a ring large enough that the walker never
      wraps; positions are reported as signed offsets from the start,
    - ``("torus2d", lx, ly)`` -- periodic lattice, 4-direction coin,
    - ``("hypercube", d)`` -- d-bit vertices, d-direction coin (or the
      two-qubit embedded coin when ``coin.dim == d + 1``).

    ``initial_position`` is a flat position index (for the line geometry,
    a signed offset from the centre).  ``initial_coin_state`` defaults to
    the first coin basis state.
    """

    geometry: tuple
    coin: CoinOperator | None = None
    initial_position: int = 0
    initial_coin_state: np.ndarray | None = None

    def kind(self) -> str:
        return self.geometry[0]


def _default_coin(spec: WalkSpec) -> CoinOperator:
    kind = spec.geometry[0]
    if kind in ("cycle", "line"):
        return make_hadamard_coin(1)
    if kind == "torus2d":
        return make_hadamard_coin(2)
    if kind == "hypercube":
        return make_dft_coin(spec.geometry[1])
    raise ValueError(f"unknown geometry {kind!r}")


def build_walk(spec: WalkSpec) -> tuple[EvolutionOperator, AmplitudeVector]:
    """Construct the evolution operator and initial state for a spec."""
    kind = spec.geometry[0]
    coin = spec.coin if spec.coin is not None else _default_coin(spec)
    if kind in ("cycle", "line"):
        n = int(spec.geometry[1])
        inc, dec = cycle_permutations(n)
        shift = ShiftOperator(np.stack([inc, dec]))
        start = spec.initial_position % n if kind == "line" else spec.initial_position
    elif kind == "torus2d":
        lx, ly = int(spec.geometry[1]), int(spec.geometry[2])
        shift = make_torus_shift_2d(lx, ly)
        start = spec.initial_position
    elif kind == "hypercube":
        d = int(spec.geometry[1])
        shift = make_hypercube_shift(d, coin_dim=coin.dim)
        start = spec.initial_position
    else:
        raise ValueError(f"unknown geometry {kind!r}")
    u = evolution_operator(coin, shift)
    state = AmplitudeVector.localized(coin.dim, shift.position_dim, start, spec.initial_coin_state)
    return u, state


def spread_variance(spec: WalkSpec, t_max: int) -> np.ndarray:
    """Position variance sigma^2(t) of a line walk, from exact evolution.

    Returns an array of shape (t_max + 1, 2) with rows (t, sigma^2(t)).
    The line is realised as a ring; its extent must exceed 2 * t_max so
    the wavefront never wraps.

    Raises
    ------
    ValueError
        If the geometry is not a line, the extent admits wraparound, or
        ``t_max < 10``.
    """
    if spec.geometry[0] != "line":
        raise ValueError("spread_variance expects a line geometry")
    extent = int(spec.geometry[1])
    if extent <= 2 * t_max:
        raise ValueError(
            f"extent {extent} allows wraparound within {t_max} steps; need > {2 * t_max}"
        )
    if t_max < 10:
        raise ValueError(f"t_max must be >= 10, got {t_max}")
    u, state = build_walk(spec)
    start = spec.initial_position % extent
    # signed displacement of each ring index from the start site
    x = (np.arange(extent) - start + extent // 2) % extent - extent // 2
    out = np.empty((t_max + 1, 2))
    for t in range(t_max + 1):
        p = position_distribution(state)
        mean = float(p @ x)
        out[t] = (t, float(p @ (x.astype(float) ** 2)) - mean**2)
        if t < t_max:
            state = step(state, u)
    return out


def classical_variance_series(t_max: int, n_walkers: int = 100_000, seed: int = 0) -> np.ndarray:
    """Monte-Carlo sigma^2(t) of the classical +-1 walk (rows (t, var)).

    The diffusive benchmark: variance grows linearly in t, against the
    quadratic growth of ``spread_variance``.
    """
    rng = generator(seed)
    steps = rng.choice(np.array([-1, 1]), size=(t_max, n_walkers))
    paths = np.cumsum(steps, axis=0)
    out = np.empty((t_max + 1, 2))
    out[0] = (0, 0.0)
    out[1:, 0] = np.arange(1, t_max + 1)
    out[1:, 1] = paths.var(axis=1)
    return out


def fit_loglog_slope(series: np.ndarray, t_min: int, t_max: int) -> float:
    """Least-squares slope of log sigma^2 against log t over t in [t_min, t_max]."""
    t = series[:, 0]
    keep = (t >= t_min) & (t <= t_max) & (series[:, 1] > 0)
    if keep.sum() < 2:
        raise ValueError("not enough points in the requested window")
    slope, _ = np.polyfit(np.log(t[keep]), np.log(series[keep, 1]), 1)
    return float(slope)
