import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwsir.coins import CoinOperator, make_hadamard_coin
from qwsir.rng import SplitMix64
from qwsir.shifts import ShiftOperator, cycle_permutations, make_cycle_shift
from qwsir.walk import (
    AmplitudeVector,
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

SQRT2 = np.sqrt(2.0)

# Hand-derived 1D Hadamard walk distributions from coin-up at the origin.
WALK1D = {
    1: {-1: 0.5, 1: 0.5},
    2: {-2: 0.25, 0: 0.5, 2: 0.25},
    3: {-3: 0.125, -1: 0.125, 1: 0.625, 3: 0.125},
}


def hadamard_cycle8():
    _, _, s = make_cycle_shift(3)
    return evolution_operator(make_hadamard_coin(1), s)


def test_evolution_requires_matching_dims():
    _, _, s = make_cycle_shift(3)
    with pytest.raises(ValueError):
        evolution_operator(make_hadamard_coin(2), s)


def test_cycle8_step_entry_and_unitarity():
    u = hadamard_cycle8().dense()
    # component (up, position 7) feeds (up, position 0) with weight 1/sqrt(2)
    assert abs(u[0, 7] - 1 / SQRT2) < 1e-12
    assert np.max(np.abs(u.conj().T @ u - np.eye(16))) < 1e-12


def test_single_step_amplitudes_on_cycle8():
    # oracle: one dense matrix-vector product
    u = hadamard_cycle8()
    e = np.zeros(16, dtype=complex)
    e[0] = 1.0  # coin up at position 0
    expected = u.dense() @ e
    assert abs(expected[1] - 1 / SQRT2) < 1e-12  # (up, 001)
    assert abs(expected[8 + 7] - 1 / SQRT2) < 1e-12  # (down, 111)
    state = AmplitudeVector(2, 8, e)
    assert np.max(np.abs(step(state, u).amps - expected)) < 1e-12


def test_action_matches_dense_operator():
    u = hadamard_cycle8()
    rng = np.random.default_rng(0)
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    v /= np.linalg.norm(v)
    assert np.max(np.abs(u.matvec(v) - u.dense() @ v)) < 1e-12


def test_walk1d_hand_values():
    u, state = build_walk(WalkSpec(("line", 32)))
    for t in range(1, 4):
        state = step(state, u)
        dist = position_distribution(state)
        expected = np.zeros(32)
        for offset, prob in WALK1D[t].items():
            expected[offset % 32] = prob
        assert np.max(np.abs(dist - expected)) < 1e-12


def test_identity_coin_with_increment_only_shift_is_deterministic():
    inc, _ = cycle_permutations(16)
    shift = ShiftOperator(np.stack([inc, inc]))
    u = evolution_operator(CoinOperator(np.eye(2)), shift)
    state = AmplitudeVector.localized(2, 16, 0)
    for t in range(1, 6):
        state = step(state, u)
        assert position_distribution(state)[t] == pytest.approx(1.0)


def test_norm_preserved_over_many_steps():
    u, state = build_walk(WalkSpec(("cycle", 8)))
    for _ in range(200):
        state = step(state, u)
    assert abs(np.linalg.norm(state.amps) - 1.0) < 1e-10


def test_state_dimension_mismatch():
    u = hadamard_cycle8()
    with pytest.raises(ValueError):
        step(AmplitudeVector.localized(2, 4, 0), u)


def test_amplitude_vector_validation():
    with pytest.raises(ValueError):
        AmplitudeVector(2, 4, np.ones(8))  # not normalised
    with pytest.raises(ValueError):
        AmplitudeVector(2, 4, np.zeros(7))  # wrong length


def test_position_distribution_localized_and_after_step():
    u, state = build_walk(WalkSpec(("line", 16)))
    assert np.array_equal(position_distribution(state), np.eye(16)[0])
    state = step(state, u)
    dist = position_distribution(state)
    assert dist[1] == pytest.approx(0.5)  # offset +1
    assert dist[15] == pytest.approx(0.5)  # offset -1, wrapped
    assert dist.sum() == pytest.approx(1.0, abs=1e-10)


def test_coin_distribution_cases():
    assert np.array_equal(coin_distribution([1, 0, 0, 0]), [1, 0, 0, 0])
    h4 = make_hadamard_coin(2).matrix
    assert np.allclose(coin_distribution(h4 @ np.array([1, 0, 0, 0.0])), 0.25)
    bell = np.array([1, 0, 0, 1.0]) / SQRT2
    assert np.allclose(coin_distribution(bell), [0.5, 0, 0, 0.5])
    with pytest.raises(ValueError):
        coin_distribution([1.0, 0.5, 0, 0])


def test_sample_index_degenerate_and_errors():
    rng = SplitMix64(1)
    assert all(sample_index([1.0, 0, 0, 0], rng) == 0 for _ in range(50))
    with pytest.raises(ValueError):
        sample_index([0.0, 0.0], rng)
    # small negative round-off is clamped
    assert sample_index([1.0, -1e-14], rng) == 0


def test_sample_index_frequency_and_determinism():
    rng = SplitMix64(42)
    draws = np.array([sample_index([0.5, 0.5], rng) for _ in range(100_000)])
    assert abs((draws == 0).mean() - 0.5) < 0.01
    rng2 = SplitMix64(42)
    again = np.array([sample_index([0.5, 0.5], rng2) for _ in range(100_000)])
    assert np.array_equal(draws, again)


def test_spread_variance_starts_at_zero_and_guards_wraparound():
    series = spread_variance(WalkSpec(("line", 64)), 20)
    assert series[0, 1] == pytest.approx(0.0)
    with pytest.raises(ValueError):
        spread_variance(WalkSpec(("line", 32)), 20)
    with pytest.raises(ValueError):
        spread_variance(WalkSpec(("cycle", 64)), 20)


def test_ballistic_vs_diffusive_exponents():
    coin_state = np.array([1.0, 1.0j]) / SQRT2
    quantum = spread_variance(WalkSpec(("line", 256), initial_coin_state=coin_state), 100)
    assert fit_loglog_slope(quantum, 10, 100) >= 1.8
    classical = classical_variance_series(100, 100_000, seed=5)
    assert 0.9 <= fit_loglog_slope(classical, 10, 100) <= 1.1


def test_symmetric_coin_distribution_is_symmetric():
    coin_state = np.array([1.0, 1.0j]) / SQRT2
    u, state = build_walk(WalkSpec(("line", 128), initial_coin_state=coin_state))
    for _ in range(50):
        state = step(state, u)
        dist = position_distribution(state)
        mirrored = np.roll(dist[::-1], 1)
        assert np.max(np.abs(dist - mirrored)) < 1e-10


def test_hypercube_walk_one_step_thirds():
    u, state = build_walk(WalkSpec(("hypercube", 3)))
    dist = position_distribution(step(state, u))
    assert dist[0b100] == pytest.approx(1 / 3, abs=1e-12)
    assert dist[0b010] == pytest.approx(1 / 3, abs=1e-12)
    assert dist[0b001] == pytest.approx(1 / 3, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=2, max_value=24),
    st.floats(min_value=0.0, max_value=2 * np.pi),
    st.integers(min_value=1, max_value=30),
)
def test_random_rotation_coin_preserves_norm(n_sites, theta, steps):
    coin = CoinOperator(
        np.array(
            [[np.cos(theta), np.sin(theta)], [np.sin(theta), -np.cos(theta)]], dtype=complex
        )
    )
    u, state = build_walk(WalkSpec(("cycle", n_sites), coin))
    for _ in range(steps):
        state = step(state, u)
    dist = position_distribution(state)
    assert dist.sum() == pytest.approx(1.0, abs=1e-10)
    assert abs(np.linalg.norm(state.amps) - 1.0) < 1e-10
