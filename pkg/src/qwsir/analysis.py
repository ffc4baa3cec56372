"""Monte-Carlo estimators over many epidemic realizations.

The basic reproduction number R0(p, tau) is estimated as the mean number
of sites infected directly by the index case, averaged over independent
realizations; ``r0_sweep`` builds the full (p, tau) grid for a policy and
``summarize_comparison`` lines up a quantum table against the classical
benchmark (including the naive p*tau estimate, which the simulated
classical walk undershoots once trajectories self-intersect).

Everything is deterministic for a fixed seed: cell seeds derive from the
grid indices, run seeds from the run index, and aggregation is ordered by
index, so the worker count never changes a result.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .epidemic import EpidemicConfig, movement_driver, run_realization
from .rng import derive_seed

__all__ = [
    "R0Estimate",
    "ClusterCurvePoint",
    "ComparisonRow",
    "naive_r0",
    "estimate_r0",
    "r0_sweep",
    "cluster_growth",
    "summarize_comparison",
    "r0_table_csv",
    "cluster_csv",
    "comparison_csv",
]


@dataclass(frozen=True)
class R0Estimate:
    policy: str
    p: float
    tau: int
    runs: int
    seed: int
    mean: float
    stderr: float


@dataclass(frozen=True)
class ClusterCurvePoint:
    policy: str
    L: int
    p: float
    tau: int
    N: int
    runs: int
    mean_M: float
    stderr_M: float


@dataclass(frozen=True)
class ComparisonRow:
    p: float
    tau: int
    r0_quantum: float
    stderr_quantum: float
    r0_classical: float
    stderr_classical: float
    ratio_q_over_c: float
    naive_p_tau: float
    converged: bool


def naive_r0(p: float, tau: int) -> float:
    """First-order estimate p * tau (one fresh site per step, no revisits)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if tau < 1:
        raise ValueError(f"tau must be >= 1, got {tau}")
    return p * tau


def _mean_stderr(values: np.ndarray) -> tuple[float, float]:
    mean = float(values.mean())
    if len(values) < 2:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / np.sqrt(len(values)))


def _realization_batch(args) -> list:
    """Worker: run a slice of realizations; returns (first_gen, M) pairs."""
    config, run_indices = args
    driver = movement_driver(config)
    out = []
    for i in run_indices:
        stats = run_realization(config, run_index=i, driver=driver)
        out.append((stats.first_generation_infections, stats.cluster_size_M))
    return out


def _collect(config: EpidemicConfig, runs: int, threads: int) -> np.ndarray:
    """(runs, 2) array of (first_generation, cluster_size), ordered by run."""
    indices = list(range(runs))
    if threads <= 1 or runs < 4:
        return np.array(_realization_batch((config, indices)), dtype=float)
    chunk = max(1, -(-runs // (threads * 4)))  # ceil division
    batches = [(config, indices[i : i + chunk]) for i in range(0, runs, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        rows = list(itertools.chain.from_iterable(pool.map(_realization_batch, batches)))
    return np.array(rows, dtype=float)


def _base_config(p, tau, policy, L, N, seed, config_kwargs) -> EpidemicConfig:
    return EpidemicConfig(L=L, N=N, p=p, tau=tau, policy=policy, seed=seed, **config_kwargs)


def estimate_r0(
    p: float,
    tau: int,
    policy: str,
    L: int = 64,
    N: int = 4096,
    runs: int = 2000,
    seed: int = 0,
    threads: int = 1,
    **config_kwargs,
) -> R0Estimate:
    """Mean and standard error of first-generation infections over ``runs``.

    Extra keyword arguments flow to ``EpidemicConfig`` (e.g.
    ``neighborhood="moore"`` or ``shots=1024``).
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    config = _base_config(p, tau, policy, L, N, seed, config_kwargs)
    first_gen = _collect(config, runs, threads)[:, 0]
    mean, stderr = _mean_stderr(first_gen)
    return R0Estimate(policy=policy, p=p, tau=tau, runs=runs, seed=seed, mean=mean, stderr=stderr)


def r0_sweep(
    p_list,
    tau_list,
    policy: str,
    L: int = 64,
    N: int = 4096,
    runs: int = 2000,
    seed: int = 0,
    threads: int = 1,
    **config_kwargs,
) -> list[R0Estimate]:
    """Cross-product R0 table; rows ordered tau-major to match the grid.

    Each (p, tau) cell is independently seeded from the grid indices, so
    adding or reordering other cells never changes a cell's value.
    """
    p_list, tau_list = list(p_list), list(tau_list)
    if not p_list or not tau_list:
        raise ValueError("p_list and tau_list must be non-empty")
    table = []
    for i_tau, tau in enumerate(tau_list):
        for i_p, p in enumerate(p_list):
            cell_seed = derive_seed(seed, (i_p, i_tau))
            table.append(
                estimate_r0(p, tau, policy, L, N, runs, cell_seed, threads, **config_kwargs)
            )
    return table


def cluster_growth(
    N_list,
    L: int = 32,
    p: float = 1.0,
    tau: int = 3,
    policy: str = "quantum-histogram",
    runs: int = 200,
    seed: int = 0,
    threads: int = 1,
    **config_kwargs,
) -> list[ClusterCurvePoint]:
    """Mean visited-cluster size per agent count N.

    Cell seeds derive from the N value itself, so duplicate N entries
    yield identical statistics.
    """
    points = []
    for N in N_list:
        if N > L * L:
            raise ValueError(f"N={N} exceeds the {L}x{L} lattice capacity")
        config = _base_config(p, tau, policy, L, N, derive_seed(seed, (N,)), config_kwargs)
        sizes = _collect(config, runs, threads)[:, 1]
        mean, stderr = _mean_stderr(sizes)
        points.append(
            ClusterCurvePoint(
                policy=policy, L=L, p=p, tau=tau, N=N, runs=runs, mean_M=mean, stderr_M=stderr
            )
        )
    return points


def summarize_comparison(
    quantum_table: list[R0Estimate], classical_table: list[R0Estimate]
) -> list[ComparisonRow]:
    """Per-cell quantum/classical ratios, deltas and convergence flags.

    A cell is flagged converged when |R0_q - R0_c| <= 3 * (se_q + se_c).
    Raises ``ValueError`` if the tables do not share the same (p, tau)
    support in the same order.
    """
    if [(r.p, r.tau) for r in quantum_table] != [(r.p, r.tau) for r in classical_table]:
        raise ValueError("tables do not share the same (p, tau) support")
    rows = []
    for q, c in zip(quantum_table, classical_table):
        if c.mean > 0.0:
            ratio = q.mean / c.mean
        else:
            ratio = 1.0 if q.mean == 0.0 else float("inf")
        rows.append(
            ComparisonRow(
                p=q.p,
                tau=q.tau,
                r0_quantum=q.mean,
                stderr_quantum=q.stderr,
                r0_classical=c.mean,
                stderr_classical=c.stderr,
                ratio_q_over_c=ratio,
                naive_p_tau=naive_r0(q.p, q.tau),
                converged=abs(q.mean - c.mean) <= 3.0 * (q.stderr + c.stderr),
            )
        )
    return rows


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def r0_table_csv(table: list[R0Estimate]) -> str:
    lines = ["policy,p,tau,runs,seed,r0_mean,r0_stderr"]
    for r in table:
        lines.append(
            ",".join(map(_fmt, (r.policy, r.p, r.tau, r.runs, r.seed, r.mean, r.stderr)))
        )
    return "\n".join(lines) + "\n"


def cluster_csv(points: list[ClusterCurvePoint]) -> str:
    lines = ["policy,L,p,tau,N,runs,mean_M,stderr_M"]
    for c in points:
        lines.append(
            ",".join(map(_fmt, (c.policy, c.L, c.p, c.tau, c.N, c.runs, c.mean_M, c.stderr_M)))
        )
    return "\n".join(lines) + "\n"


def comparison_csv(rows: list[ComparisonRow]) -> str:
    lines = [
        "p,tau,r0_quantum,stderr_quantum,r0_classical,stderr_classical,"
        "ratio_q_over_c,naive_p_tau,converged"
    ]
    for r in rows:
        lines.append(
            ",".join(
                map(
                    _fmt,
                    (
                        r.p,
                        r.tau,
                        r.r0_quantum,
                        r.stderr_quantum,
                        r.r0_classical,
                        r.stderr_classical,
                        r.ratio_q_over_c,
                        r.naive_p_tau,
                        r.converged,
                    ),
                )
            )
        )
    return "\n".join(lines) + "\n"
