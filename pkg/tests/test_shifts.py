import numpy as np
import pytest
from hypothesis import given, strategies as st

from qwsir.shifts import (
    ShiftOperator,
    cycle_permutations,
    make_cycle_shift,
    make_hypercube_shift,
    make_torus_shift_2d,
    permutation_matrix,
)


def test_increment_moves_position_up():
    inc, dec, _ = make_cycle_shift(3)
    assert inc[0] == 1  # |000> -> |001>
    assert inc[7] == 0  # wrap
    assert dec[0] == 7  # |000> -> |111>


def test_inc_dec_are_inverse_on_all_positions():
    inc, dec, _ = make_cycle_shift(3)
    assert np.array_equal(inc[dec], np.arange(8))
    assert np.array_equal(dec[inc], np.arange(8))


def test_cycle_shift_blocks():
    inc, dec, s = make_cycle_shift(3)
    dense = s.dense()
    assert np.array_equal(dense[:8, :8], permutation_matrix(inc))
    assert np.array_equal(dense[8:, 8:], permutation_matrix(dec))
    assert np.array_equal(dense[:8, 8:], np.zeros((8, 8)))


@pytest.mark.parametrize("n_qubits", [0, 21, -3])
def test_cycle_shift_resource_bounds(n_qubits):
    with pytest.raises(ValueError):
        make_cycle_shift(n_qubits)


def test_general_cycle_sizes():
    inc, dec = cycle_permutations(5)
    assert np.array_equal(inc, [1, 2, 3, 4, 0])
    assert np.array_equal(dec, [4, 0, 1, 2, 3])


def test_torus_direction_mapping():
    s = make_torus_shift_2d(4, 4)
    flat = lambda x, y: x * 4 + y
    # coin |10> (index 2) steps +x: (0,0) -> (1,0)
    assert s.destinations[2, flat(0, 0)] == flat(1, 0)
    # coin |00> (index 0) steps -x with wrap: (0,0) -> (3,0)
    assert s.destinations[0, flat(0, 0)] == flat(3, 0)
    # coin |01> (index 1) steps -y, coin |11> (index 3) steps +y
    assert s.destinations[1, flat(2, 0)] == flat(2, 3)
    assert s.destinations[3, flat(2, 3)] == flat(2, 0)


def test_torus_joint_matrix_unitary():
    m = make_torus_shift_2d(4, 4).dense()
    assert np.max(np.abs(m.T @ m - np.eye(64))) < 1e-12


def test_torus_rejects_degenerate_extent():
    with pytest.raises(ValueError):
        make_torus_shift_2d(1, 4)


def test_hypercube_direction_one_flips_msb():
    s = make_hypercube_shift(3)
    assert s.destinations[0, 0b000] == 0b100
    assert s.destinations[1, 0b100] == 0b110
    assert s.destinations[2, 0b000] == 0b001


def test_hypercube_directions_are_involutions():
    s = make_hypercube_shift(3)
    for c in range(3):
        assert np.array_equal(s.destinations[c][s.destinations[c]], np.arange(8))


def test_hypercube_embedded_coin_slot_is_identity():
    s = make_hypercube_shift(3, coin_dim=4)
    assert s.coin_dim == 4
    assert np.array_equal(s.destinations[3], np.arange(8))


@pytest.mark.parametrize("d", [0, 11])
def test_hypercube_resource_bounds(d):
    with pytest.raises(ValueError):
        make_hypercube_shift(d)


def test_shift_rejects_non_permutation():
    with pytest.raises(ValueError):
        ShiftOperator(np.array([[0, 0, 1]]))


@given(st.integers(min_value=2, max_value=9), st.integers(min_value=2, max_value=9))
def test_torus_rows_are_permutations(lx, ly):
    s = make_torus_shift_2d(lx, ly)
    for c in range(4):
        assert np.array_equal(np.sort(s.destinations[c]), np.arange(lx * ly))


@given(st.integers(min_value=1, max_value=4096))
def test_cycle_inverse_property(n):
    inc, dec = cycle_permutations(n)
    assert np.array_equal(inc[dec], np.arange(n))
    assert np.array_equal(dec[inc], np.arange(n))
