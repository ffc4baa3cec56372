"""Walking the corners of a cube with a three-sided coin.

Vertices are 3-bit strings; coin outcome j flips bit j, moving the
walker along one cube edge.  The discrete-Fourier coin makes all three
directions equally likely after one application (exactly 1/3 each), yet
the coherent evolution quickly departs from a classical edge-hopper:
watch the probability of returning to the start oscillate instead of
settling at 1/8.
"""

import numpy as np

from qwsir import WalkSpec, build_walk, make_dft_coin, position_distribution, step
from qwsir.coins import embed_dft3_gate

u, state = build_walk(WalkSpec(("hypercube", 3), coin=make_dft_coin(3)))

print("vertex probabilities (walker starts at 000):")
header = "  ".join(format(v, "03b") for v in range(8))
print(f"  iter  {header}")
for t in range(9):
    dist = position_distribution(state)
    print(f"  {t:3d}  " + "  ".join(f"{p:5.3f}" for p in dist))
    state = step(state, u)

print("\nafter one iteration the walker sits on 100, 010, 001 with 1/3 each.")

# the same coin as a two-qubit gate: the 3x3 Fourier block is embedded in
# a 4x4 unitary whose fourth state is a fixed point
gate = embed_dft3_gate()
probs = np.abs(gate.matrix @ np.array([1, 0, 0, 0.0])) ** 2
print("two-qubit embedding acting on |00>:", np.round(probs, 6))

u4, state4 = build_walk(WalkSpec(("hypercube", 3), coin=gate))
state4 = step(state4, u4)
print("one embedded-coin iteration:", np.round(position_distribution(state4), 6))
