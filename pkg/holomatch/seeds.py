"""
Seed management for deterministic random instance generation.

Every randomized harness check draws from a ``numpy.random.Generator``
derived from an explicit seed, so a failing trial is reproduced from
``(seed, trial)`` alone.
"""

import random
from typing import Dict, Optional

import numpy as np


def set_global_seeds(seed: int = 42) -> Dict[str, bool]:
    """Seed the global numpy and ``random`` generators.

    Holomatch itself only uses explicit Generators; this covers callers that
    still rely on global state.

    Returns:
        Which generators were seeded, keyed ``'numpy'`` and ``'random'``.
    """
    results: Dict[str, bool] = {}
    try:
        np.random.seed(seed)
        results['numpy'] = True
    except Exception:
        results['numpy'] = False
    try:
        random.seed(seed)
        results['random'] = True
    except Exception:
        results['random'] = False
    return results


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """PCG64 Generator for ``seed`` (fresh entropy when None)."""
    return np.random.default_rng(seed)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent Generator for one trial of a seeded sweep."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))

