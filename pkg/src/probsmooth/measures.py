"""Information measures and per-letter code-length accounting.

All quantities are in nats (natural log). Conversion to bits happens only at
reporting and codec boundaries via :func:`nats_to_bits`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import as_distribution, check_letter

LOG2 = math.log(2.0)


def nats_to_bits(nats: float) -> float:
    return nats / LOG2


def entropy(p) -> float:
    """Shannon entropy sum_x p(x) log(1/p(x)); zero-mass letters contribute 0."""
    p = as_distribution(p)
    mask = p > 0.0
    return float(-(p[mask] * np.log(p[mask])).sum())


def kl_divergence(p, q) -> float:
    """Relative entropy D(p || q) = sum_{x: p(x)>0} p(x) log(p(x)/q(x)).

    Requires q(x) > 0 for every letter; raises ValueError otherwise.
    """
    p = as_distribution(p)
    q = as_distribution(q, n=p.size)
    if np.any(q <= 0.0):
        raise ValueError("second argument must have positive mass everywhere")
    mask = p > 0.0
    return float((p[mask] * np.log(p[mask] / q[mask])).sum())


def l1_variation(p, q) -> float:
    """Total variation in probability mass, sum_x |p(x) - q(x)|; lies in [0, 2]."""
    p = as_distribution(p)
    q = as_distribution(q, n=p.size)
    return float(np.abs(p - q).sum())


@dataclass(frozen=True)
class CodeLengthLedger:
    """Per-step code lengths (nats) accumulated by one model over one sequence."""

    per_step: np.ndarray
    total: float

    @classmethod
    def from_steps(cls, per_step) -> "CodeLengthLedger":
        steps = np.asarray(per_step, dtype=float)
        return cls(per_step=steps, total=float(steps.sum()))

    def __post_init__(self):
        if np.any(self.per_step < 0.0):
            raise ValueError("code lengths must be nonnegative")


def model_code_length(model, letters) -> CodeLengthLedger:
    """Drive a fresh sequential model over ``letters`` and record code lengths.

    The model must expose ``predict() -> distribution`` and ``update(letter)``
    and start at step 0. Step t's entry is log(1/p_t(x_t)) for the prediction
    made before consuming x_t; a zero-mass observation yields +inf (legal).
    """
    if getattr(model, "step", 0) != 0:
        raise ValueError("model_code_length requires a fresh model (step 0)")
    letters = np.asarray(letters, dtype=np.int64)
    n = model.n
    per_step = np.empty(letters.size)
    for i, x in enumerate(letters):
        x = check_letter(x, n)
        prob = float(model.predict()[x - 1])
        per_step[i] = math.inf if prob == 0.0 else -math.log(prob)
        model.update(x)
    return CodeLengthLedger.from_steps(per_step)
