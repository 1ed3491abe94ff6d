"""Seeded, splittable random streams.

Every random draw in the package comes from a Philox counter-based bit
generator keyed by a 64-bit seed plus an integer path.  Distinct paths give
independent streams, so datasets, shuffles and clicks can be generated in any
order (or in parallel) without changing the result.  The generator choice is
a fixed constant of this repository; regenerating a dataset from its manifest
reproduces it bit for bit.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *path: int) -> np.random.Generator:
    """Return the generator for ``path`` under ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *path: int) -> int:
    """Derive a child 64-bit seed for configs that need a plain integer."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])
