import numpy as np
import pytest

from qwsir.analysis import (
    cluster_csv,
    cluster_growth,
    comparison_csv,
    estimate_r0,
    naive_r0,
    r0_sweep,
    r0_table_csv,
    summarize_comparison,
)
from qwsir.rng import derive_seed

SMALL = dict(L=12, N=120, runs=40, seed=5)


def test_naive_r0_values():
    assert naive_r0(1.0, 3) == 3.0
    assert naive_r0(0.0, 7) == 0.0
    assert naive_r0(0.5, 2) == 1.0
    with pytest.raises(ValueError):
        naive_r0(1.2, 1)
    with pytest.raises(ValueError):
        naive_r0(0.5, 0)


def test_zero_probability_estimate_is_exactly_zero():
    r = estimate_r0(0.0, 2, "classical", **SMALL)
    assert r.mean == 0.0
    assert r.stderr == 0.0


def test_estimate_deterministic_and_thread_invariant():
    a = estimate_r0(0.6, 2, "classical", threads=1, **SMALL)
    b = estimate_r0(0.6, 2, "classical", threads=2, **SMALL)
    assert a == b


def test_single_run_has_zero_stderr():
    r = estimate_r0(0.6, 2, "classical", L=12, N=120, runs=1, seed=5)
    assert r.runs == 1
    assert r.stderr == 0.0


def test_single_cell_sweep_equals_estimate():
    table = r0_sweep([0.6], [2], "classical", **SMALL)
    direct = estimate_r0(0.6, 2, "classical", L=12, N=120, runs=40, seed=derive_seed(5, (0, 0)))
    assert table == [direct]


def test_sweep_row_major_order_and_cell_seeding():
    table = r0_sweep([1.0, 0.5], [1, 2], "classical", **SMALL)
    assert [(r.p, r.tau) for r in table] == [(1.0, 1), (0.5, 1), (1.0, 2), (0.5, 2)]
    # each cell is seeded purely from its (p index, tau index)
    cell = [r for r in table if (r.p, r.tau) == (0.5, 2)][0]
    direct = estimate_r0(0.5, 2, "classical", L=12, N=120, runs=40, seed=derive_seed(5, (1, 1)))
    assert cell == direct
    rerun = r0_sweep([1.0, 0.5], [1, 2], "classical", **SMALL)
    assert table == rerun


def test_r0_monotone_in_p_within_noise():
    table = r0_sweep([0.25, 0.5, 1.0], [2], "classical", L=16, N=256, runs=150, seed=9)
    for lo, hi in zip(table, table[1:]):
        assert hi.mean >= lo.mean - 3 * (lo.stderr + hi.stderr)


def test_classical_mean_below_naive_bound():
    table = r0_sweep([0.5, 1.0], [1, 2, 3], "classical", L=16, N=256, runs=150, seed=4)
    for r in table:
        assert r.mean <= naive_r0(r.p, r.tau) + 3 * r.stderr


def test_stderr_scaling_with_runs():
    small = estimate_r0(0.7, 2, "classical", L=12, N=120, runs=200, seed=11)
    large = estimate_r0(0.7, 2, "classical", L=12, N=120, runs=800, seed=11)
    ratio = small.stderr / large.stderr
    assert abs(ratio - 2.0) < 0.6  # quadrupling runs halves stderr, within 30%


def test_cluster_growth_seeded_by_agent_count():
    once = cluster_growth([16, 64, 16], L=12, p=1.0, tau=2, policy="classical", runs=25, seed=3)
    assert once[0].mean_M == once[2].mean_M  # duplicate N -> identical statistics
    assert once[0].stderr_M == once[2].stderr_M


def test_cluster_growth_monotone_means():
    pts = cluster_growth([32, 128, 512, 1024], L=32, p=1.0, tau=3, runs=60, seed=3, threads=2)
    means = [c.mean_M for c in pts]
    assert means == sorted(means)
    assert all(1.0 <= c.mean_M <= 32 * 32 for c in pts)


def test_lone_walker_cluster_bounded_by_path_length():
    pts = cluster_growth([1], L=12, p=1.0, tau=3, policy="classical", runs=50, seed=7)
    assert pts[0].mean_M <= 3 + 1


def test_cluster_rejects_overfull():
    with pytest.raises(ValueError):
        cluster_growth([200], L=12, p=1.0, tau=2, runs=5, seed=1)


def test_comparison_identical_tables():
    table = r0_sweep([0.5, 0.0], [1], "classical", **SMALL)
    rows = summarize_comparison(table, table)
    assert all(r.ratio_q_over_c == 1.0 for r in rows)
    assert all(r.converged for r in rows)
    assert rows[0].naive_p_tau == 0.5


def test_comparison_rejects_mismatched_support():
    a = r0_sweep([0.5], [1], "classical", **SMALL)
    b = r0_sweep([0.25], [1], "classical", **SMALL)
    with pytest.raises(ValueError):
        summarize_comparison(a, b)


def test_csv_headers_and_shapes():
    table = r0_sweep([0.5], [1], "classical", **SMALL)
    text = r0_table_csv(table)
    lines = text.strip().split("\n")
    assert lines[0] == "policy,p,tau,runs,seed,r0_mean,r0_stderr"
    assert len(lines) == 2
    assert lines[1].startswith("classical,0.5,1,40,")

    pts = cluster_growth([16], L=12, p=1.0, tau=2, policy="classical", runs=5, seed=3)
    clines = cluster_csv(pts).strip().split("\n")
    assert clines[0] == "policy,L,p,tau,N,runs,mean_M,stderr_M"

    rows = summarize_comparison(table, table)
    text = comparison_csv(rows)
    assert text.startswith(
        "p,tau,r0_quantum,stderr_quantum,r0_classical,stderr_classical,"
        "ratio_q_over_c,naive_p_tau,converged\n"
    )
    assert text.strip().split("\n")[1].endswith(",true")


def test_csv_round_trips_floats_exactly():
    table = r0_sweep([1 / 3], [2], "classical", **SMALL)
    line = r0_table_csv(table).strip().split("\n")[1].split(",")
    assert float(line[1]) == 1 / 3
    assert float(line[5]) == table[0].mean
