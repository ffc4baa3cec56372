"""A first look at the coined walk on a line.

The walker starts at the origin with its coin pointing "up".  Each step
rotates the coin with a Hadamard matrix and moves the walker left or
right conditioned on the coin.  Because the two coin components evolve
coherently, paths interfere: after three steps the distribution is
already lopsided (5/8 of the probability sits at +1), and the variance
grows quadratically where a coin-flipping walker only manages linear
growth.
"""

import numpy as np

from qwsir import (
    WalkSpec,
    build_walk,
    classical_variance_series,
    fit_loglog_slope,
    position_distribution,
    spread_variance,
    step,
)

u, state = build_walk(WalkSpec(("line", 64)))
print("position probabilities around the origin (offsets -5..5):")
print("  t=0..6, Hadamard coin, walker starts coin-up at offset 0\n")
for t in range(7):
    dist = position_distribution(state)
    row = " ".join(f"{dist[off % 64]:6.3f}" for off in range(-5, 6))
    print(f"  t={t}:  {row}")
    state = step(state, u)

# the same walk with the left/right-symmetric coin (1, i)/sqrt(2),
# against a classical Monte-Carlo walker
coin = np.array([1.0, 1.0j]) / np.sqrt(2)
quantum = spread_variance(WalkSpec(("line", 256), initial_coin_state=coin), 100)
classical = classical_variance_series(100, n_walkers=100_000, seed=1)

print("\nvariance growth sigma^2(t):")
print("  t      quantum   classical")
for t in (10, 20, 40, 80, 100):
    print(f"  {t:3d}  {quantum[t, 1]:9.1f}  {classical[t, 1]:9.1f}")

print(f"\nlog-log slope over t in [10, 100]:")
print(f"  quantum  : {fit_loglog_slope(quantum, 10, 100):.3f}   (ballistic, ~2)")
print(f"  classical: {fit_loglog_slope(classical, 10, 100):.3f}   (diffusive, ~1)")
