"""The walk on an 8-site ring, operator by operator.

The ring is small enough to print everything dense: the increment and
decrement permutations, the conditional shift that applies one or the
other depending on the coin, and the full one-step unitary.  Five
iterations from site 0 show the probability sloshing around the ring.
"""

import numpy as np

from qwsir import (
    WalkSpec,
    build_walk,
    evolution_operator,
    make_cycle_shift,
    make_hadamard_coin,
    position_distribution,
    step,
)
from qwsir.shifts import permutation_matrix

inc, dec, shift = make_cycle_shift(3)

print("increment permutation (site k -> k+1 mod 8):")
print(permutation_matrix(inc).astype(int))
print("\napplied to site 0:", f"0 -> {inc[0]}", "| decrement: 0 ->", dec[0])

u = evolution_operator(make_hadamard_coin(1), shift)
dense = u.dense().real
print("\none walk step, dense (times sqrt(2), coin-up block on top):")
print((dense * np.sqrt(2)).round(0).astype(int))

_, state = build_walk(WalkSpec(("cycle", 8)))
print("\nsite probabilities, walker starts coin-up at site 0:")
for t in range(6):
    dist = position_distribution(state)
    print(f"  iteration {t}: " + " ".join(f"{p:6.3f}" for p in dist))
    state = step(state, u)
