"""Lattice SIR epidemic driven by walkers.

Sites on an L x L periodic grid are empty, susceptible or removed.  A
single index-case walker starts on a removed origin site; each tick every
active walker moves, the sites it touches are marked visited, and it
attempts to infect susceptible sites with probability p.  A successful
infection flips the site to removed and spawns a new walker there, which
starts moving on the next tick.  Walkers expire after tau moves; the
realization ends when no walker is active.

Movement policies
-----------------
classical
    One uniform step to a neighbouring site (4 cardinal directions by
    default; the ``moore`` neighbourhood adds the diagonals).
quantum-histogram
    A 4-state coin register evolves coherently (one coin rotation per
    tick, never collapsed); the step direction is sampled from the coin's
    direction probabilities.
quantum-collapse
    As above, but the coin is projected onto the sampled direction after
    every step.
quantum-statevector
    The walker is a full coin (x) position wavefunction on the torus,
    advanced by the walk unitary each tick; the nominal position used for
    visiting/infection is sampled fresh from the position marginal.
quantum-support
    As quantum-statevector, but the walker visits and attempts to infect
    every site its wavefunction occupies this tick (all sites with
    non-negligible probability, or the distinct sites of ``shots``
    sampled measurements), not just the nominal position.  This is the
    policy in which coherent spreading amplifies the reproduction number.

Because the wavefunction policies never collapse the position register,
the per-age position marginals are identical for every walker up to a
translation to its spawn site; they (and the coherent coin's direction
distributions) are precomputed once per realization.

Infection attempts happen in ascending walker id, so outcomes are
reproducible; all randomness comes from per-walker streams keyed by
(seed, run_index, walker_id).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coins import CoinOperator, make_hadamard_coin
from .rng import SplitMix64, derive_seed, generator
from .tolerances import ACCUMULATED_TOL, SUPPORT_EPS
from .walk import WalkSpec, build_walk, position_distribution, step as walk_step

__all__ = [
    "EMPTY",
    "SUSCEPTIBLE",
    "REMOVED",
    "POLICIES",
    "ConfigError",
    "NonTerminationError",
    "EpidemicConfig",
    "Walker",
    "LatticeState",
    "RealizationStats",
    "movement_driver",
    "init_lattice",
    "walker_move",
    "infection_sweep",
    "tick",
    "run_realization",
]

EMPTY, SUSCEPTIBLE, REMOVED = 0, 1, 2

# direction index -> (dx, dy); the first four match the coin basis order
# (|00>, |01>, |10>, |11>) -> (-x, -y, +x, +y)
DIRECTIONS_CARDINAL = ((-1, 0), (0, -1), (1, 0), (0, 1))
DIRECTIONS_MOORE = DIRECTIONS_CARDINAL + ((-1, -1), (-1, 1), (1, -1), (1, 1))

POLICIES = (
    "classical",
    "quantum-histogram",
    "quantum-collapse",
    "quantum-statevector",
    "quantum-support",
)
_QUANTUM_WAVE_POLICIES = ("quantum-statevector", "quantum-support")


class ConfigError(ValueError):
    """Invalid epidemic or command configuration."""


class NonTerminationError(RuntimeError):
    """The tick guard tripped; should be unreachable for valid configs."""


@dataclass
class EpidemicConfig:
    """Parameters of one epidemic realization.

    ``N`` counts all agents including the index case; the other N - 1 are
    placed uniformly at random (without replacement) on sites other than
    ``initial_site``.  ``shots=None`` uses exact coin/position
    probabilities; an integer S first builds an empirical histogram from S
    measurement samples and draws from that, reproducing sampling noise.
    """

    L: int
    N: int
    p: float
    tau: int
    policy: str = "classical"
    initial_site: tuple[int, int] = (0, 0)
    initial_coin: np.ndarray | None = None
    seed: int = 0
    max_steps: int | None = None
    shots: int | None = None
    boundary: str = "torus"
    neighborhood: str = "cardinal"
    movement_coin: np.ndarray | None = None

    def __post_init__(self):
        if self.L < 2:
            raise ConfigError(f"lattice extent must be >= 2, got {self.L}")
        if not 1 <= self.N <= self.L * self.L:
            raise ConfigError(f"N={self.N} agents cannot occupy an {self.L}x{self.L} lattice")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"infection probability must be in [0, 1], got {self.p}")
        if self.tau < 1:
            raise ConfigError(f"walker lifetime must be >= 1, got {self.tau}")
        if self.policy not in POLICIES:
            raise ConfigError(f"unknown policy {self.policy!r}; choose from {POLICIES}")
        x, y = self.initial_site
        if not (0 <= x < self.L and 0 <= y < self.L):
            raise ConfigError(f"initial site {self.initial_site} outside the lattice")
        self.initial_site = (int(x), int(y))
        if self.initial_coin is None:
            coin = np.zeros(4, dtype=np.complex128)
            coin[0] = 1.0
        else:
            coin = np.asarray(self.initial_coin, dtype=np.complex128).ravel()
            if coin.shape != (4,):
                raise ConfigError("initial coin must be a 4-vector")
            if abs(np.linalg.norm(coin) - 1.0) > ACCUMULATED_TOL:
                raise ConfigError("initial coin state must be normalised")
        self.initial_coin = coin
        if self.movement_coin is not None:
            mc = np.asarray(self.movement_coin, dtype=np.complex128)
            if mc.shape != (4, 4):
                raise ConfigError("movement coin must be a 4x4 matrix")
            CoinOperator(mc)  # unitarity check
            self.movement_coin = mc
        if self.max_steps is None:
            self.max_steps = (self.N + 1) * self.tau
        if self.max_steps < 1:
            raise ConfigError("max_steps must be positive")
        if self.shots is not None and self.shots < 1:
            raise ConfigError(f"shots must be a positive count, got {self.shots}")
        if self.boundary not in ("torus", "reflect"):
            raise ConfigError(f"boundary must be 'torus' or 'reflect', got {self.boundary!r}")
        if self.neighborhood not in ("cardinal", "moore"):
            raise ConfigError(
                f"neighborhood must be 'cardinal' or 'moore', got {self.neighborhood!r}"
            )
        if self.neighborhood == "moore" and self.policy != "classical":
            raise ConfigError("the moore neighbourhood applies to the classical policy only")
        if self.boundary == "reflect" and self.policy in _QUANTUM_WAVE_POLICIES:
            raise ConfigError(
                f"{self.policy} evolves on the torus; reflecting walls are only "
                "available for policies that move a sampled position"
            )


@dataclass(slots=True)
class Walker:
    """An active infectious agent."""

    id: int
    parent_id: int | None
    generation: int
    x: int
    y: int
    spawn_x: int
    spawn_y: int
    age: int
    lifetime: int
    rng: SplitMix64
    np_rng: object = None  # numpy Generator, created lazily in shot mode
    last_direction: int | None = None  # collapse policy bookkeeping
    attempt_sites: tuple = ()  # sites touched this tick, set by the driver


@dataclass
class RealizationStats:
    """Outcome of one realization."""

    first_generation_infections: int
    total_infections: int
    cluster_size_M: int
    steps_to_extinction: int
    peak_active_walkers: int


@dataclass
class LatticeState:
    """Mutable state of one realization."""

    L: int
    sites: np.ndarray  # (L, L) int8 of EMPTY/SUSCEPTIBLE/REMOVED
    visited: np.ndarray  # (L, L) bool
    walkers: list  # active walkers, ascending id
    step_count: int
    infection_log: list  # (step, infector_id, x, y, generation)
    next_walker_id: int
    peak_active: int
    lineage: dict  # walker id -> (parent_id, generation, birth_step)


class _Driver:
    """Per-policy movement tables, shared by every walker of a realization."""

    uses_numpy_rng = False

    def __init__(self, config: EpidemicConfig):
        self.config = config
        self.L = config.L

    def init_walker(self, w: Walker) -> None:
        pass

    def move(self, w: Walker) -> None:
        raise NotImplementedError

    def _walk_to(self, w: Walker, direction: tuple[int, int]) -> None:
        dx, dy = direction
        L = self.L
        if self.config.boundary == "torus":
            w.x = (w.x + dx) % L
            w.y = (w.y + dy) % L
        else:  # reflect: bounce back off the wall, per component
            nx, ny = w.x + dx, w.y + dy
            w.x = w.x - dx if nx < 0 or nx >= L else nx
            w.y = w.y - dy if ny < 0 or ny >= L else ny
        w.attempt_sites = ((w.x, w.y),)


def _cumulative(dist) -> tuple:
    acc, out = 0.0, []
    for v in dist:
        acc += float(v)
        out.append(acc)
    out[-1] = max(out[-1], 1.0)  # guard the last bin against round-off
    return tuple(out)


def _pick(cum: tuple, u: float) -> int:
    for i, edge in enumerate(cum):
        if u < edge:
            return i
    return len(cum) - 1


class _ClassicalDriver(_Driver):
    def __init__(self, config):
        super().__init__(config)
        if config.neighborhood == "moore":
            self.dirs, self.nbits = DIRECTIONS_MOORE, 3
        else:
            self.dirs, self.nbits = DIRECTIONS_CARDINAL, 2

    def move(self, w):
        self._walk_to(w, self.dirs[w.rng.bits(self.nbits)])


def _direction_table(config: EpidemicConfig) -> list:
    """Exact direction distributions for the coherent coin, by age 1..tau."""
    coin = config.movement_coin if config.movement_coin is not None else make_hadamard_coin(2).matrix
    state = config.initial_coin.copy()
    dists = [None]
    for _ in range(config.tau):
        state = coin @ state
        dists.append(np.abs(state) ** 2)
    return dists


class _HistogramDriver(_Driver):
    """Coherent coin, never collapsed: distribution depends only on age."""

    def __init__(self, config):
        super().__init__(config)
        self.dists = _direction_table(config)
        self.cums = [None] + [_cumulative(d) for d in self.dists[1:]]
        self.uses_numpy_rng = config.shots is not None

    def move(self, w):
        age = w.age + 1
        if self.config.shots is None:
            d = _pick(self.cums[age], w.rng.random())
        else:
            counts = w.np_rng.multinomial(self.config.shots, self.dists[age])
            d = _pick(_cumulative(counts / self.config.shots), w.rng.random())
        self._walk_to(w, DIRECTIONS_CARDINAL[d])


class _CollapseDriver(_Driver):
    """Coin projected onto the sampled direction after every step."""

    def __init__(self, config):
        super().__init__(config)
        coin = config.movement_coin if config.movement_coin is not None else make_hadamard_coin(2).matrix
        self.dist_first = np.abs(coin @ config.initial_coin) ** 2
        self.dist_from = [np.abs(coin[:, i]) ** 2 for i in range(4)]
        self.cum_first = _cumulative(self.dist_first)
        self.cum_from = [_cumulative(d) for d in self.dist_from]
        self.uses_numpy_rng = config.shots is not None

    def move(self, w):
        if self.config.shots is None:
            cum = self.cum_first if w.last_direction is None else self.cum_from[w.last_direction]
            d = _pick(cum, w.rng.random())
        else:
            dist = self.dist_first if w.last_direction is None else self.dist_from[w.last_direction]
            counts = w.np_rng.multinomial(self.config.shots, dist)
            d = _pick(_cumulative(counts / self.config.shots), w.rng.random())
        w.last_direction = d
        self._walk_to(w, DIRECTIONS_CARDINAL[d])


class _WavefunctionDriver(_Driver):
    """Shared machinery for the statevector and support policies.

    Evolves one wavefunction from the origin for tau steps and stores, per
    age, the position marginal (as a cumulative vector for sampling) and
    its support offsets.  A walker spawned at (sx, sy) uses the same
    tables translated by (sx, sy); this is exact because the torus walk is
    translation invariant and nothing is ever collapsed.
    """

    def __init__(self, config):
        super().__init__(config)
        L = config.L
        coin = CoinOperator(
            config.movement_coin if config.movement_coin is not None else make_hadamard_coin(2).matrix
        )
        u, state = build_walk(
            WalkSpec(("torus2d", L, L), coin, 0, config.initial_coin)
        )
        self.cum_marginal = [None]
        self.support_x = [None]
        self.support_y = [None]
        for _ in range(config.tau):
            state = walk_step(state, u)
            marg = position_distribution(state)
            live = np.flatnonzero(marg > SUPPORT_EPS)
            self.cum_marginal.append(np.cumsum(marg))
            self.support_x.append(live // L)
            self.support_y.append(live % L)
        self.uses_numpy_rng = config.shots is not None

    def _sample_offset(self, w, age):
        cum = self.cum_marginal[age]
        o = int(np.searchsorted(cum, w.rng.random() * cum[-1], side="right"))
        o = min(o, len(cum) - 1)
        return o // self.L, o % self.L


class _StatevectorDriver(_WavefunctionDriver):
    def move(self, w):
        age = w.age + 1
        if self.config.shots is None:
            ox, oy = self._sample_offset(w, age)
        else:
            cum = self.cum_marginal[age]
            shots = np.searchsorted(cum, w.np_rng.random(self.config.shots) * cum[-1], side="right")
            o = int(shots[int(w.rng.random() * self.config.shots)])
            o = min(o, len(cum) - 1)
            ox, oy = o // self.L, o % self.L
        L = self.L
        w.x = (w.spawn_x + ox) % L
        w.y = (w.spawn_y + oy) % L
        w.attempt_sites = ((w.x, w.y),)


class _SupportDriver(_WavefunctionDriver):
    def move(self, w):
        age = w.age + 1
        L = self.L
        ox, oy = self._sample_offset(w, age)
        w.x = (w.spawn_x + ox) % L
        w.y = (w.spawn_y + oy) % L
        if self.config.shots is None:
            sx = (w.spawn_x + self.support_x[age]) % L
            sy = (w.spawn_y + self.support_y[age]) % L
        else:
            cum = self.cum_marginal[age]
            flats = np.unique(
                np.minimum(
                    np.searchsorted(cum, w.np_rng.random(self.config.shots) * cum[-1], side="right"),
                    len(cum) - 1,
                )
            )
            sx = (w.spawn_x + flats // L) % L
            sy = (w.spawn_y + flats % L) % L
        w.attempt_sites = tuple(zip(sx.tolist(), sy.tolist()))


_DRIVERS = {
    "classical": _ClassicalDriver,
    "quantum-histogram": _HistogramDriver,
    "quantum-collapse": _CollapseDriver,
    "quantum-statevector": _StatevectorDriver,
    "quantum-support": _SupportDriver,
}


def movement_driver(config: EpidemicConfig) -> _Driver:
    """Build the movement tables for a config (reusable across runs)."""
    return _DRIVERS[config.policy](config)


def _new_walker(config: EpidemicConfig, run_index: int, driver, wid, parent, gen, site, birth):
    w = Walker(
        id=wid,
        parent_id=parent,
        generation=gen,
        x=site[0],
        y=site[1],
        spawn_x=site[0],
        spawn_y=site[1],
        age=0,
        lifetime=config.tau,
        rng=SplitMix64(derive_seed(config.seed, (run_index, wid))),
    )
    if driver.uses_numpy_rng:
        w.np_rng = generator(derive_seed(config.seed, (run_index, wid, 1)))
    driver.init_walker(w)
    return w


def init_lattice(config: EpidemicConfig, run_index: int = 0, driver=None) -> LatticeState:
    """Place agents and the index case; returns the tick-0 lattice.

    N - 1 susceptible agents are placed uniformly at random (without
    replacement) on sites other than the initial site, which is marked
    removed and hosts the index walker (id 0, generation 0).
    """
    if driver is None:
        driver = movement_driver(config)
    L = config.L
    sites = np.zeros((L, L), dtype=np.int8)
    placement = generator(derive_seed(config.seed, (run_index,)))
    origin_flat = config.initial_site[0] * L + config.initial_site[1]
    others = placement.choice(L * L - 1, size=config.N - 1, replace=False)
    others = others + (others >= origin_flat)  # skip the origin slot
    sites.ravel()[others] = SUSCEPTIBLE
    sites[config.initial_site] = REMOVED
    visited = np.zeros((L, L), dtype=bool)
    visited[config.initial_site] = True
    index_case = _new_walker(config, run_index, driver, 0, None, 0, config.initial_site, 0)
    return LatticeState(
        L=L,
        sites=sites,
        visited=visited,
        walkers=[index_case],
        step_count=0,
        infection_log=[],
        next_walker_id=1,
        peak_active=1,
        lineage={0: (None, 0, 0)},
    )


def walker_move(w: Walker, driver: _Driver) -> Walker:
    """Advance one walker by one step under its policy.

    Raises ``ValueError`` if the walker has already exhausted its
    lifetime.
    """
    if w.age >= w.lifetime:
        raise ValueError(f"walker {w.id} is inactive (age {w.age} = lifetime)")
    driver.move(w)
    w.age += 1
    return w


def infection_sweep(lattice: LatticeState, config: EpidemicConfig, run_index: int, driver) -> list:
    """Run this tick's infection attempts; returns the new log entries.

    Walkers attempt in ascending id, each at the sites it touched this
    tick, drawing Bernoulli(p) from its own stream for every susceptible
    site; the first success claims the site and spawns a walker there.
    Children do not move or infect until the next tick.
    """
    if not lattice.walkers:
        raise ValueError("infection sweep needs at least one active walker")
    events = []
    spawned = []
    sites = lattice.sites
    step_no = lattice.step_count + 1
    for w in lattice.walkers:
        for sx, sy in w.attempt_sites:
            if sites[sx, sy] == SUSCEPTIBLE and w.rng.random() < config.p:
                sites[sx, sy] = REMOVED
                wid = lattice.next_walker_id
                lattice.next_walker_id += 1
                gen = w.generation + 1
                child = _new_walker(config, run_index, driver, wid, w.id, gen, (sx, sy), step_no)
                spawned.append(child)
                lattice.lineage[wid] = (w.id, gen, step_no)
                events.append((step_no, w.id, sx, sy, gen))
    lattice.walkers.extend(spawned)
    lattice.infection_log.extend(events)
    return events


def tick(lattice: LatticeState, config: EpidemicConfig, run_index: int = 0, driver=None) -> LatticeState:
    """One global step: move, mark visited, infect, expire.

    Raises ``ValueError`` when no walker is active (the epidemic already
    ended) and ``NonTerminationError`` if ``max_steps`` is exceeded.
    """
    if not lattice.walkers:
        raise ValueError("tick refused: epidemic is extinct (no active walkers)")
    if lattice.step_count >= config.max_steps:
        raise NonTerminationError(
            f"exceeded max_steps={config.max_steps}; walker bookkeeping is broken"
        )
    if driver is None:
        driver = movement_driver(config)
    movers = lattice.walkers
    visited = lattice.visited
    for w in movers:
        walker_move(w, driver)
        for sx, sy in w.attempt_sites:
            visited[sx, sy] = True
    infection_sweep(lattice, config, run_index, driver)
    lattice.peak_active = max(lattice.peak_active, len(lattice.walkers))
    lattice.walkers = [w for w in lattice.walkers if w.age < w.lifetime]
    lattice.step_count += 1
    return lattice


def run_realization(
    config: EpidemicConfig,
    run_index: int = 0,
    driver=None,
    on_tick=None,
    check_invariants: bool = False,
) -> RealizationStats:
    """Run one epidemic to extinction; deterministic for fixed (config, run_index).

    ``on_tick(lattice)`` is called once on the initial lattice and after
    every tick (snapshot hook).  ``check_invariants`` asserts site-count
    conservation and the termination bound after every tick.
    """
    if driver is None:
        driver = movement_driver(config)
    lattice = init_lattice(config, run_index, driver)
    if on_tick is not None:
        on_tick(lattice)
    while lattice.walkers:
        tick(lattice, config, run_index, driver)
        if check_invariants:
            _assert_invariants(lattice, config)
        if on_tick is not None:
            on_tick(lattice)
    return RealizationStats(
        first_generation_infections=sum(1 for e in lattice.infection_log if e[1] == 0),
        total_infections=len(lattice.infection_log),
        cluster_size_M=int(lattice.visited.sum()),
        steps_to_extinction=lattice.step_count,
        peak_active_walkers=lattice.peak_active,
    )


def _assert_invariants(lattice: LatticeState, config: EpidemicConfig) -> None:
    counts = np.bincount(lattice.sites.ravel(), minlength=3)
    infected = len(lattice.infection_log)
    if counts.sum() != config.L**2:
        raise AssertionError("site count not conserved")
    if counts[REMOVED] != infected + 1:
        raise AssertionError("removed sites do not match the infection log")
    if counts[SUSCEPTIBLE] != config.N - 1 - infected:
        raise AssertionError("susceptible count drifted")
    if lattice.step_count > (config.N + 1) * config.tau:
        raise AssertionError("termination bound exceeded")
    for wid, (parent, gen, birth) in lattice.lineage.items():
        if parent is None:
            continue
        p_parent, p_gen, p_birth = lattice.lineage[parent]
        if gen != p_gen + 1:
            raise AssertionError("generation is not parent generation + 1")
        if not (p_birth < birth <= p_birth + config.tau):
            raise AssertionError("parent was not active at the child's spawn tick")
