"""Quantum-walk-driven lattice epidemics.

A numpy library in three layers:

- ``coins`` / ``shifts`` / ``walk`` -- discrete-time quantum walk
  operators and exact statevector evolution on cycles, lines, the 2D
  torus and the hypercube;
- ``epidemic`` / ``render`` -- a lattice SIR engine whose infectious
  agents move as classical or quantum walkers, plus snapshot rendering;
- ``analysis`` -- Monte-Carlo estimators for the basic reproduction
  number R0(p, tau) and visited-cluster growth, with deterministic
  seeding and CSV export.

The ``qwsir`` command-line tool (see ``qwsir.cli``) exposes walks,
single realizations, parameter sweeps and the built-in verification
suite.
"""

__version__ = "0.1.0"

from .coins import CoinOperator, embed_dft3_gate, make_dft_coin, make_hadamard_coin
from .shifts import (
    ShiftOperator,
    cycle_permutations,
    make_cycle_shift,
    make_hypercube_shift,
    make_torus_shift_2d,
)
from .walk import (
    AmplitudeVector,
    EvolutionOperator,
    WalkSpec,
    build_walk,
    classical_variance_series,
    coin_distribution,
    evolution_operator,
    fit_loglog_slope,
    position_distribution,
    sample_index,
    spread_variance,
    step,
)
from .epidemic import (
    EpidemicConfig,
    ConfigError,
    LatticeState,
    NonTerminationError,
    POLICIES,
    RealizationStats,
    Walker,
    infection_sweep,
    init_lattice,
    movement_driver,
    run_realization,
    tick,
    walker_move,
)
from .render import render_snapshot, write_ppm
from .analysis import (
    ClusterCurvePoint,
    ComparisonRow,
    R0Estimate,
    cluster_growth,
    estimate_r0,
    naive_r0,
    r0_sweep,
    summarize_comparison,
)
from .rng import SplitMix64, derive_seed
from .verify import run_verification

__all__ = [
    "__version__",
    "AmplitudeVector",
    "ClusterCurvePoint",
    "CoinOperator",
    "ComparisonRow",
    "ConfigError",
    "EpidemicConfig",
    "EvolutionOperator",
    "LatticeState",
    "NonTerminationError",
    "POLICIES",
    "R0Estimate",
    "RealizationStats",
    "ShiftOperator",
    "SplitMix64",
    "Walker",
    "WalkSpec",
    "build_walk",
    "classical_variance_series",
    "cluster_growth",
    "coin_distribution",
    "cycle_permutations",
    "derive_seed",
    "embed_dft3_gate",
    "estimate_r0",
    "evolution_operator",
    "fit_loglog_slope",
    "infection_sweep",
    "init_lattice",
    "make_cycle_shift",
    "make_dft_coin",
    "make_hadamard_coin",
    "make_hypercube_shift",
    "make_torus_shift_2d",
    "movement_driver",
    "naive_r0",
    "position_distribution",
    "r0_sweep",
    "render_snapshot",
    "run_realization",
    "run_verification",
    "sample_index",
    "spread_variance",
    "step",
    "summarize_comparison",
    "tick",
    "walker_move",
    "write_ppm",
]
