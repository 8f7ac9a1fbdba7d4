"""Whole-sequence code lengths for batches of trials, computed in lockstep.

Each runner takes a (trials, horizon) matrix of letters and returns one
total code length per row, matching what driving the corresponding model
from :mod:`probsmooth.models` letter by letter would produce. The experiment
harness runs hundreds of equal-length trials, so vectorizing across the
batch dimension is what makes the sweep cheap.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .distributions import check_alphabet_size, uniform
from .models.ps import fixed_schedule

LOG_HALF = math.log(0.5)


def _as_batch(seqs, n: int) -> np.ndarray:
    seqs = np.asarray(seqs, dtype=np.int64)
    if seqs.ndim != 2:
        raise ValueError("expected a (trials, horizon) letter matrix")
    if seqs.size and (seqs.min() < 1 or seqs.max() > n):
        raise ValueError(f"letters must lie in 1..{n}")
    return seqs


def ps_fixed_code_lengths(seqs, n: int, alpha: float, eps: float, initial=None) -> np.ndarray:
    check_alphabet_size(n)
    seqs = _as_batch(seqs, n)
    trials, horizon = seqs.shape
    start = uniform(n) if initial is None else np.asarray(initial, dtype=float)
    est = np.tile(start, (trials, 1))
    rows = np.arange(trials)
    share = eps / (n - 1)
    total = np.zeros(trials)
    for t in range(horizon):
        j = seqs[:, t] - 1
        total -= np.log(est[rows, j])
        est *= alpha
        est += (1.0 - alpha) * share
        est[rows, j] += (1.0 - alpha) * (1.0 - eps - share)
    return total


def ps_varying_code_lengths(seqs, n: int, initial=None) -> np.ndarray:
    check_alphabet_size(n)
    seqs = _as_batch(seqs, n)
    trials, horizon = seqs.shape
    steps = np.arange(1, horizon + 1, dtype=float)
    eps_t = 1.0 / (steps + 1.0)
    alpha_t = np.exp(-np.sqrt(np.log(n / eps_t) / (2.0 * n * steps)))
    start = uniform(n) if initial is None else np.asarray(initial, dtype=float)
    est = np.tile(start, (trials, 1))
    rows = np.arange(trials)
    total = np.zeros(trials)
    for t in range(horizon):
        j = seqs[:, t] - 1
        total -= np.log(est[rows, j])
        alpha, eps = alpha_t[t], eps_t[t]
        share = eps / (n - 1)
        est *= alpha
        est += (1.0 - alpha) * share
        est[rows, j] += (1.0 - alpha) * (1.0 - eps - share)
    return total


def _kt_block(seqs, n: int) -> np.ndarray:
    """Closed-form KT code length of each row, counts starting from zero."""
    trials, horizon = seqs.shape
    counts = np.zeros((trials, n))
    np.add.at(counts, (np.repeat(np.arange(trials), horizon), (seqs - 1).ravel()), 1.0)
    log_prob = (gammaln(counts + 0.5).sum(axis=1) - n * gammaln(0.5)
                + gammaln(0.5 * n) - gammaln(horizon + 0.5 * n))
    return -log_prob


def kt_code_lengths(seqs, n: int, variant: str = "plain", discount: float = 0.98,
                    horizon: int | None = None) -> np.ndarray:
    check_alphabet_size(n)
    seqs = _as_batch(seqs, n)
    trials, length = seqs.shape
    if variant == "plain":
        return _kt_block(seqs, n)
    if variant == "reset":
        total = np.zeros(trials)
        start, span = 0, 1
        while start < length:
            end = min(start + span, length)
            total += _kt_block(seqs[:, start:end], n)
            start, span = end, span * 2
        return total
    if variant == "count-scale":
        if not 0.0 < discount <= 1.0:
            raise ValueError(f"discount must lie in (0, 1], got {discount}")
        counts = np.zeros((trials, n))
        rows = np.arange(trials)
        seen = 0.0
        total = np.zeros(trials)
        for t in range(length):
            j = seqs[:, t] - 1
            total += np.log((seen + 0.5 * n) / (counts[rows, j] + 0.5))
            counts[rows, j] += 1.0
            counts *= discount
            seen = (seen + 1.0) * discount
        return total
    if variant == "halve":
        if horizon is None:
            raise ValueError("halve variant needs a horizon")
        period = max(math.isqrt(int(horizon)), 1)
        counts = np.zeros((trials, n))
        rows = np.arange(trials)
        seen = 0.0
        total = np.zeros(trials)
        for t in range(length):
            j = seqs[:, t] - 1
            total += np.log((seen + 0.5 * n) / (counts[rows, j] + 0.5))
            counts[rows, j] += 1.0
            seen += 1.0
            if (t + 1) % period == 0:
                counts *= 0.5
                seen *= 0.5
        return total
    raise ValueError(f"unknown variant {variant!r}")


def ptw_code_lengths(seqs, n: int, depth: int) -> np.ndarray:
    check_alphabet_size(n)
    seqs = _as_batch(seqs, n)
    trials, length = seqs.shape
    depth = int(depth)
    if length > 1 << depth:
        raise ValueError(f"tree of depth {depth} covers {1 << depth} letters, got {length}")
    rows = np.arange(trials)[:, None]
    levels = np.arange(depth + 1)[None, :]
    counts = np.zeros((trials, depth + 1, n))
    totals = np.zeros((trials, depth + 1))
    kt_log = np.zeros((trials, depth + 1))
    left_log = np.zeros((trials, depth + 1))
    for t in range(length):
        if t > 0:
            split = depth - ((t - 1) ^ t).bit_length()
            value = kt_log[:, depth].copy()
            for k in range(depth - 1, split, -1):
                value = np.logaddexp(kt_log[:, k], left_log[:, k] + value) + LOG_HALF
            left_log[:, split] = value
            fresh = slice(split + 1, depth + 1)
            counts[:, fresh] = 0.0
            totals[:, fresh] = 0.0
            kt_log[:, fresh] = 0.0
            left_log[:, fresh] = 0.0
        j = (seqs[:, t] - 1)[:, None]
        observed = counts[rows, levels, j]
        kt_log += np.log((observed + 0.5) / (totals + 0.5 * n))
        counts[rows, levels, j] = observed + 1.0
        totals += 1.0
    value = kt_log[:, depth]
    for k in range(depth - 1, -1, -1):
        value = np.logaddexp(kt_log[:, k], left_log[:, k] + value) + LOG_HALF
    return -value


def roster_code_lengths(name: str, seqs, n: int) -> np.ndarray:
    """Dispatch on a benchmark roster name (PS1, PS2, KT, KT-CS, KT-H, KT-R,
    PTW-KT); schedule-dependent parameters derive from the row length."""
    seqs = _as_batch(seqs, n)
    horizon = seqs.shape[1]
    name = name.strip().upper().replace("_", "-")
    if name == "PS1":
        alpha, eps = fixed_schedule(n, horizon)
        return ps_fixed_code_lengths(seqs, n, alpha, eps)
    if name == "PS2":
        return ps_varying_code_lengths(seqs, n)
    if name == "KT":
        return kt_code_lengths(seqs, n, "plain")
    if name == "KT-CS":
        return kt_code_lengths(seqs, n, "count-scale", discount=0.98)
    if name == "KT-H":
        return kt_code_lengths(seqs, n, "halve", horizon=horizon)
    if name == "KT-R":
        return kt_code_lengths(seqs, n, "reset")
    if name == "PTW-KT":
        return ptw_code_lengths(seqs, n, max(horizon - 1, 0).bit_length())
    raise ValueError(f"unknown model name {name!r}")
