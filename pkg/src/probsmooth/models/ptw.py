"""Partition tree weighting over KT leaves.

Mixes, in closed form, over every binary temporal partition of a horizon of
2**depth steps: each tree node either codes its whole interval with one KT
estimator or splits it in half (prior weight 1/2 per decision). Only the
nodes on the path to the current leaf carry state, so one step costs
O(n * depth).
"""

from __future__ import annotations

import math

import numpy as np

from ..distributions import check_alphabet_size, check_letter

LOG_HALF = math.log(0.5)


class PtwModel:
    """Sequential PTW mixture predictor covering up to 2**depth letters."""

    def __init__(self, n: int, depth: int):
        self.n = check_alphabet_size(n)
        self.depth = int(depth)
        if self.depth < 0:
            raise ValueError(f"depth must be nonnegative, got {depth}")
        self.capacity = 1 << self.depth
        self.step = 0
        d = self.depth
        # Per-depth state for the path to the current leaf.
        self.counts = np.zeros((d + 1, self.n))
        self.totals = np.zeros(d + 1)
        self.kt_log = np.zeros(d + 1)    # log KT prob of the node's letters so far
        self.left_log = np.zeros(d + 1)  # log mixture prob of the node's closed left half
        self._path_leaf = 0

    def _require_room(self):
        if self.step >= self.capacity:
            raise ValueError(f"capacity exceeded: tree of depth {self.depth} "
                             f"covers {self.capacity} letters")

    def _ensure_path(self) -> None:
        j = self.step
        if j == self._path_leaf:
            return
        prev = self._path_leaf
        d = self.depth
        split = d - (prev ^ j).bit_length()  # depth whose left half just completed
        value = self.kt_log[d]
        for k in range(d - 1, split, -1):
            value = np.logaddexp(self.kt_log[k], self.left_log[k] + value) + LOG_HALF
        self.left_log[split] = value
        fresh = slice(split + 1, d + 1)
        self.counts[fresh] = 0.0
        self.totals[fresh] = 0.0
        self.kt_log[fresh] = 0.0
        self.left_log[fresh] = 0.0
        self._path_leaf = j

    def _root_log(self) -> float:
        """log mixture probability of everything consumed so far."""
        value = self.kt_log[self.depth]
        for k in range(self.depth - 1, -1, -1):
            value = np.logaddexp(self.kt_log[k], self.left_log[k] + value) + LOG_HALF
        return float(value)

    def predict(self) -> np.ndarray:
        self._require_room()
        self._ensure_path()
        base = self._root_log()
        step_log = np.log((self.counts + 0.5) / (self.totals + 0.5 * self.n)[:, None])
        value = self.kt_log[self.depth] + step_log[self.depth]
        for k in range(self.depth - 1, -1, -1):
            value = np.logaddexp(self.kt_log[k] + step_log[k],
                                 self.left_log[k] + value) + LOG_HALF
        return np.exp(value - base)

    def update(self, letter: int) -> None:
        self._require_room()
        letter = check_letter(letter, self.n)
        self._ensure_path()
        observed = self.counts[:, letter - 1]
        self.kt_log += np.log((observed + 0.5) / (self.totals + 0.5 * self.n))
        self.counts[:, letter - 1] += 1.0
        self.totals += 1.0
        self.step += 1

    def code_length(self) -> float:
        """Total code length (nats) of the letters consumed so far."""
        # Re-rooting the path never changes the root value, so no _ensure_path.
        return -self._root_log()

    def copy(self) -> "PtwModel":
        dup = PtwModel(self.n, self.depth)
        dup.step = self.step
        dup.counts = self.counts.copy()
        dup.totals = self.totals.copy()
        dup.kt_log = self.kt_log.copy()
        dup.left_log = self.left_log.copy()
        dup._path_leaf = self._path_leaf
        return dup
