"""Built-in golden checks for the walk operators.

Each check compares a constructed operator or distribution against an
independently tabulated expectation (explicit index tables for the
8-cycle increment/decrement/shift/step matrices, hand-derived walk
distributions, closed-form coin laws) and reports the measured maximum
deviation.  ``run_verification`` returns all results; the command-line
``verify`` subcommand prints them and fails if any check fails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import coins, shifts, walk
from .tolerances import ACCUMULATED_TOL, ALGEBRAIC_TOL

__all__ = ["CheckResult", "run_verification", "format_report"]

SQRT2 = float(np.sqrt(2.0))

# Nonzero entries (row, col) of the 8-cycle operators, tabulated
# independently of the constructors they are checked against.
_INC_ONES = [(0, 7), (1, 0), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5), (7, 6)]
_DEC_ONES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)]
_S_ONES = _INC_ONES + [(8 + r, 8 + c) for (r, c) in _DEC_ONES]
# One walk step on the 8-cycle, in units of 1/sqrt(2): the up block adds
# an increment copy of both coin components, the down block a decrement
# copy with the second component negated.
_U_ENTRIES = (
    [(r, c, 1.0) for (r, c) in _INC_ONES]
    + [(r, c + 8, 1.0) for (r, c) in _INC_ONES]
    + [(8 + r, c, 1.0) for (r, c) in _DEC_ONES]
    + [(8 + r, c + 8, -1.0) for (r, c) in _DEC_ONES]
)

# Hand-derived 1D Hadamard walk from coin-up at the origin: position
# probabilities after 1, 2 and 3 steps, as {offset: probability}.
_WALK1D_EXPECTED = {
    1: {-1: 0.5, 1: 0.5},
    2: {-2: 0.25, 0: 0.5, 2: 0.25},
    3: {-3: 0.125, -1: 0.125, 1: 0.625, 3: 0.125},
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    detail: str = ""


def _table_matrix(n: int, entries) -> np.ndarray:
    m = np.zeros((n, n))
    for row in entries:
        r, c, v = row if len(row) == 3 else (*row, 1.0)
        m[r, c] = v
    return m


def _check(name, deviation, tolerance, detail="") -> CheckResult:
    return CheckResult(name, deviation <= tolerance, float(deviation), tolerance, detail)


def _check_cycle8_tables() -> list[CheckResult]:
    inc, dec, s = shifts.make_cycle_shift(3)
    u = walk.evolution_operator(coins.make_hadamard_coin(1), s)
    dev_inc = np.max(np.abs(shifts.permutation_matrix(inc) - _table_matrix(8, _INC_ONES)))
    dev_dec = np.max(np.abs(shifts.permutation_matrix(dec) - _table_matrix(8, _DEC_ONES)))
    dev_s = np.max(np.abs(s.dense() - _table_matrix(16, _S_ONES)))
    dev_u = np.max(np.abs(u.dense() - _table_matrix(16, _U_ENTRIES) / SQRT2))
    return [
        _check("cycle8-increment-table", dev_inc, 0.0, "dense INC vs tabulated entries"),
        _check("cycle8-decrement-table", dev_dec, 0.0, "dense DEC vs tabulated entries"),
        _check("cycle8-shift-table", dev_s, 0.0, "dense conditional shift vs tabulated entries"),
        _check("cycle8-step-table", dev_u, ALGEBRAIC_TOL, "dense walk step vs tabulated entries"),
    ]


def _check_unitarity() -> CheckResult:
    _, _, s8 = shifts.make_cycle_shift(3)
    ops = [
        coins.make_hadamard_coin(1).matrix,
        coins.make_hadamard_coin(2).matrix,
        coins.make_dft_coin(3).matrix,
        coins.embed_dft3_gate().matrix,
        walk.evolution_operator(coins.make_hadamard_coin(1), s8).dense(),
        walk.evolution_operator(coins.make_hadamard_coin(2), shifts.make_torus_shift_2d(4, 4)).dense(),
        walk.evolution_operator(coins.make_dft_coin(3), shifts.make_hypercube_shift(3)).dense(),
    ]
    dev = max(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) for m in ops)
    return _check("unitarity-suite", dev, ALGEBRAIC_TOL, f"{len(ops)} operators")


def _check_dft3_laws() -> list[CheckResult]:
    p3 = np.abs(coins.make_dft_coin(3).matrix[:, 0]) ** 2
    dev3 = np.max(np.abs(p3 - 1.0 / 3.0))
    gate = coins.embed_dft3_gate().matrix
    p4 = np.abs(gate[:, 0]) ** 2
    dev4 = np.max(np.abs(p4 - np.array([1 / 3, 1 / 3, 1 / 3, 0.0])))
    dev_fix = np.max(np.abs(gate @ np.array([0, 0, 0, 1.0]) - np.array([0, 0, 0, 1.0])))
    return [
        _check("fourier3-column-law", dev3, ALGEBRAIC_TOL, "each direction probability 1/3"),
        _check("fourier3-embedding-law", max(dev4, dev_fix), ALGEBRAIC_TOL,
               "embedded coin: 1/3 on three states, fourth state fixed"),
    ]


def _check_walk1d() -> CheckResult:
    u, state = walk.build_walk(walk.WalkSpec(("line", 64)))
    dev = 0.0
    for t in range(1, 4):
        state = walk.step(state, u)
        dist = walk.position_distribution(state)
        expected = np.zeros(64)
        for offset, prob in _WALK1D_EXPECTED[t].items():
            expected[offset % 64] = prob
        dev = max(dev, float(np.max(np.abs(dist - expected))))
    return _check("walk1d-exact-distributions", dev, ALGEBRAIC_TOL, "t = 1, 2, 3 from coin-up")


def _check_hypercube_involution() -> CheckResult:
    s = shifts.make_hypercube_shift(3)
    dev = 0.0
    for c in range(3):
        twice = s.destinations[c][s.destinations[c]]
        dev = max(dev, float(np.max(np.abs(twice - np.arange(8)))))
    return _check("hypercube-involution", dev, 0.0, "each direction applied twice is identity")


def _check_inc_dec_inverse() -> CheckResult:
    dev = 0.0
    for n in (2, 3, 5, 8, 16):
        inc, dec = shifts.cycle_permutations(n)
        ident = np.arange(n)
        dev = max(dev, float(np.max(np.abs(inc[dec] - ident))), float(np.max(np.abs(dec[inc] - ident))))
    return _check("increment-decrement-inverse", dev, 0.0, "cycles of size 2, 3, 5, 8, 16")


def _check_symmetric_coin() -> CheckResult:
    coin_state = np.array([1.0, 1.0j]) / SQRT2
    u, state = walk.build_walk(walk.WalkSpec(("line", 128), initial_coin_state=coin_state))
    dev = 0.0
    for _ in range(40):
        state = walk.step(state, u)
        dist = walk.position_distribution(state)
        mirrored = np.roll(dist[::-1], 1)  # reflect offsets about the start site
        dev = max(dev, float(np.max(np.abs(dist - mirrored))))
    return _check("symmetric-coin-symmetry", dev, ACCUMULATED_TOL, "40 steps, coin (1, i)/sqrt(2)")


def _check_norm_drift() -> CheckResult:
    u, state = walk.build_walk(walk.WalkSpec(("cycle", 8)))
    amps = state.amps
    for _ in range(1000):
        amps = u.matvec(amps)
    dev = abs(float(np.linalg.norm(amps)) - 1.0)
    return _check("norm-drift-1000-steps", dev, 1e-8, "8-cycle walk")


def run_verification() -> list[CheckResult]:
    """Run every golden check and return the results."""
    results = []
    results.extend(_check_cycle8_tables())
    results.append(_check_unitarity())
    results.extend(_check_dft3_laws())
    results.append(_check_walk1d())
    results.append(_check_hypercube_involution())
    results.append(_check_inc_dec_inverse())
    results.append(_check_symmetric_coin())
    results.append(_check_norm_drift())
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(
            f"[{status}] {r.name}: max deviation {r.max_deviation:.3e} "
            f"(tolerance {r.tolerance:.1e}) {r.detail}"
        )
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
