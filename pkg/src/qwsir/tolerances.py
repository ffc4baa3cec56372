"""Numeric tolerances used across the package.

Centralised so that every unitarity check, norm check and distribution
check agrees on what "equal" means.
"""

# Freshly constructed operators and single matrix products.
ALGEBRAIC_TOL = 1e-12

# Quantities that accumulate round-off over many evolution steps.
ACCUMULATED_TOL = 1e-10

# User-supplied probability vectors (normalisation slack before rejection).
DISTRIBUTION_TOL = 1e-6

# Probability mass below this is treated as an exact zero when extracting
# the support of a position distribution.
SUPPORT_EPS = 1e-12
