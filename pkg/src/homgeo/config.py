"""Shared numeric defaults.

All comparisons in the package go through a single absolute tolerance.
The default is 1e-9; it can be overridden per call, via the CLI flag
--tolerance, or globally with the HOMGEO_TOL environment variable
(read once at import time).
"""

import os

DEFAULT_TOL = float(os.environ.get("HOMGEO_TOL", "1e-9"))

# Random sampling (route-equivalence spot checks, random unit pairs) is
# seeded so results are reproducible; the CLI exposes --seed.
DEFAULT_SEED = 1729

# Numerically extracted catalog data (matrix realizations) is compared
# at a slightly looser tolerance than hand-entered constants.
CATALOG_TOL = 1e-8


def tol_or_default(tol=None):
    return DEFAULT_TOL if tol is None else float(tol)


def seed_or_default(seed=None):
    return DEFAULT_SEED if seed is None else int(seed)
