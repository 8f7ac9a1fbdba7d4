"""Krichevsky-Trofimov add-half frequency estimators with count aging.

The plain estimator predicts (c_x + 1/2) / (t + n/2) from letter counts c.
Three aging variants make it track non-stationary inputs: geometric count
scaling every step, halving at a fixed period, and full resets at the ends of
exponentially growing intervals (lengths 1, 2, 4, ...).
"""

from __future__ import annotations

import math

import numpy as np

from ..distributions import check_alphabet_size, check_letter

VARIANTS = ("plain", "count-scale", "halve", "reset")


def kt_probabilities(counts) -> np.ndarray:
    """Add-half predictive distribution for a nonnegative count vector."""
    counts = np.asarray(counts, dtype=float)
    if np.any(counts < 0.0):
        raise ValueError("counts must be nonnegative")
    n = check_alphabet_size(counts.size)
    return (counts + 0.5) / (counts.sum() + 0.5 * n)


class KtModel:
    """KT predictor over letters 1..n with an optional count-aging policy.

    ``count-scale`` multiplies all counts by ``discount`` after every update;
    ``halve`` multiplies them by 1/2 after updates at step multiples of
    floor(sqrt(horizon)); ``reset`` zeroes them after steps 1, 3, 7, 15, ...
    (the ends of intervals of length 1, 2, 4, ...).
    """

    def __init__(self, n: int, variant: str = "plain", discount: float = 0.98,
                 horizon: int | None = None, period: int | None = None):
        self.n = check_alphabet_size(n)
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
        self.variant = variant
        self.discount = float(discount)
        if variant == "count-scale" and not 0.0 < self.discount <= 1.0:
            raise ValueError(f"discount must lie in (0, 1], got {discount}")
        if variant == "halve":
            if period is None:
                if horizon is None:
                    raise ValueError("halve variant needs a horizon (or explicit period)")
                period = math.isqrt(int(horizon))
            if period < 1:
                raise ValueError(f"halving period must be at least 1, got {period}")
        self.period = period
        self.counts = np.zeros(self.n)
        self.step = 0
        self._next_reset = 1  # step after which counts are zeroed
        self._reset_interval = 1

    def predict(self) -> np.ndarray:
        return kt_probabilities(self.counts)

    def update(self, letter: int) -> None:
        letter = check_letter(letter, self.n)
        self.counts[letter - 1] += 1.0
        self.step += 1
        if self.variant == "count-scale":
            self.counts *= self.discount
        elif self.variant == "halve":
            if self.step % self.period == 0:
                self.counts *= 0.5
        elif self.variant == "reset":
            if self.step == self._next_reset:
                self.counts[:] = 0.0
                self._reset_interval *= 2
                self._next_reset += self._reset_interval

    def copy(self) -> "KtModel":
        dup = KtModel(self.n, self.variant, self.discount,
                      period=self.period if self.variant == "halve" else None)
        dup.counts = self.counts.copy()
        dup.step = self.step
        dup._next_reset = self._next_reset
        dup._reset_interval = self._reset_interval
        return dup
