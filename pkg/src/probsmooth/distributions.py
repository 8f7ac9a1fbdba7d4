"""Probability vectors over finite alphabets, plus seeded randomness helpers.

Letters are 1-based throughout the package: an alphabet of size ``n`` has
letters ``1..n``, and a distribution over it is a length-``n`` vector of
nonnegative floats summing to one.
"""

from __future__ import annotations

import numpy as np

SUM_TOLERANCE = 1e-12


def check_alphabet_size(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ValueError(f"alphabet size must be at least 2, got {n}")
    return n


def check_letter(letter: int, n: int) -> int:
    letter = int(letter)
    if not 1 <= letter <= n:
        raise ValueError(f"letter {letter} outside alphabet 1..{n}")
    return letter


def as_distribution(values, n: int | None = None) -> np.ndarray:
    """Validate and return ``values`` as a probability vector (a fresh array)."""
    p = np.array(values, dtype=float)
    if p.ndim != 1:
        raise ValueError("distribution must be a flat vector")
    check_alphabet_size(p.size)
    if n is not None and p.size != n:
        raise ValueError(f"expected a distribution over {n} letters, got {p.size}")
    if np.any(p < 0.0):
        raise ValueError("distribution has negative mass")
    total = float(p.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"distribution mass sums to {total!r}, not 1")
    return p


def uniform(n: int) -> np.ndarray:
    check_alphabet_size(n)
    return np.full(n, 1.0 / n)


def random_distribution(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw uniformly from the probability simplex (flat Dirichlet)."""
    return rng.dirichlet(np.ones(check_alphabet_size(n)))


def as_rng(seed=None) -> np.random.Generator:
    """Coerce ``seed`` (None, int, SeedSequence, or Generator) to a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
