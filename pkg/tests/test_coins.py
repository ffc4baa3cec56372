import numpy as np
import pytest
from hypothesis import given, strategies as st

from qwsir.coins import embed_dft3_gate, make_dft_coin, make_hadamard_coin

SQRT2 = np.sqrt(2.0)

# 4x4 tensor square of the Hadamard matrix, multiplied out by hand
H4_EXPECTED = 0.5 * np.array(
    [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ],
    dtype=complex,
)


def test_hadamard_entries_and_action():
    h = make_hadamard_coin(1).matrix
    assert np.allclose(np.abs(h), 1 / SQRT2, atol=1e-15)
    out = h @ np.array([1.0, 0.0])
    assert np.allclose(out, [1 / SQRT2, 1 / SQRT2], atol=1e-15)


def test_hadamard_is_involution():
    h = make_hadamard_coin(1).matrix
    assert np.allclose(h @ h, np.eye(2), atol=1e-15)


def test_two_qubit_hadamard_matches_hand_product():
    h4 = make_hadamard_coin(2).matrix
    assert np.max(np.abs(h4 - H4_EXPECTED)) < 1e-15
    probs = np.abs(h4 @ np.array([1, 0, 0, 0.0])) ** 2
    assert np.allclose(probs, 0.25, atol=1e-15)


@pytest.mark.parametrize("k", [0, 3, -1])
def test_hadamard_rejects_unsupported_sizes(k):
    with pytest.raises(ValueError):
        make_hadamard_coin(k)


def test_dft2_equals_hadamard():
    assert np.max(np.abs(make_dft_coin(2).matrix - make_hadamard_coin(1).matrix)) < 1e-12


def test_dft3_first_column_law():
    # outcome probability is exactly 1/3 per direction
    col = make_dft_coin(3).matrix[:, 0]
    assert np.allclose(col, 1 / np.sqrt(3.0), atol=1e-15)
    assert np.max(np.abs(np.abs(col) ** 2 - 1 / 3)) < 1e-12


def test_dft3_unitary():
    m = make_dft_coin(3).matrix
    assert np.max(np.abs(m.conj().T @ m - np.eye(3))) < 1e-12


def test_dft_rejects_small_dimension():
    with pytest.raises(ValueError):
        make_dft_coin(1)


def test_embedded_gate_action_on_first_state():
    gate = embed_dft3_gate().matrix
    probs = np.abs(gate @ np.array([1, 0, 0, 0.0])) ** 2
    assert np.max(np.abs(probs - [1 / 3, 1 / 3, 1 / 3, 0.0])) < 1e-12


def test_embedded_gate_fixes_fourth_state():
    gate = embed_dft3_gate().matrix
    e3 = np.array([0, 0, 0, 1.0])
    assert np.max(np.abs(gate @ e3 - e3)) == 0.0


def test_embedded_gate_unitary_and_block():
    gate = embed_dft3_gate().matrix
    assert np.max(np.abs(gate.conj().T @ gate - np.eye(4))) < 1e-12
    assert np.max(np.abs(gate[:3, :3] - make_dft_coin(3).matrix)) == 0.0


@given(st.integers(min_value=2, max_value=16))
def test_dft_columns_flat_and_unitary(d):
    m = make_dft_coin(d).matrix
    assert np.max(np.abs(m.conj().T @ m - np.eye(d))) < 1e-12
    assert np.max(np.abs(np.abs(m) - 1 / np.sqrt(d))) < 1e-12
