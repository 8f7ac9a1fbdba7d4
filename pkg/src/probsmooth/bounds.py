"""Closed-form redundancy guarantees and their empirical verification.

The two evaluators give worst-case bounds, in nats, on how far a smoothing
model's code length may exceed a piecewise stationary competitor's on the
same sequence: one for the constant-rate schedule, one for the horizon-free
varying schedule (its explicit pre-asymptotic form). ``check_*`` pair a
bound with the measured redundancy of an actual run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import as_distribution, as_rng, check_alphabet_size, uniform
from .measures import kl_divergence, model_code_length
from .models.ps import PsModel, PsParams, fixed_schedule
from .pws import PwsSpec, sample_pws, sample_sequence

BOUND_SLACK = 1e-6


@dataclass(frozen=True)
class BoundReport:
    """Measured redundancy next to a guarantee and its three named terms."""

    measured: float
    per_step_term: float
    complexity_term: float
    initial_term: float

    @property
    def bound(self) -> float:
        return self.per_step_term + self.complexity_term + self.initial_term

    @property
    def satisfied(self) -> bool:
        return self.measured <= self.bound + BOUND_SLACK

    @property
    def slack(self) -> float:
        return self.bound - self.measured

    def csv_line(self) -> str:
        fields = [self.measured, self.bound, self.per_step_term,
                  self.complexity_term, self.initial_term]
        return ",".join(f"{v!r}" for v in fields) + f",{str(self.satisfied).lower()}"


def _initial_divergence(n: int, initial) -> tuple[np.ndarray, float]:
    if initial is None:
        initial = uniform(n)
        return initial, 0.0
    initial = as_distribution(initial, n=n)
    return initial, kl_divergence(uniform(n), initial)


def fixed_rate_bound(n: int, horizon: int, alpha: float, eps: float,
                     complexity: float, initial=None) -> tuple[float, float, float]:
    """Redundancy guarantee terms for constant (alpha, eps) smoothing.

    Returns (per_step_term, complexity_term, initial_term):
      per_step:   [log(1/(1-eps))/log(1/alpha) + n log(1/alpha)
                   + (n+1) log(1/(1-eps))] * horizon
      complexity: log(n/eps)/log(1/alpha) * complexity  (+inf when eps == 0)
      initial:    n * D(uniform || initial)
    """
    n = check_alphabet_size(n)
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"smoothing rate must lie in (0, 1), got {alpha}")
    if not 0.0 <= eps <= 1.0 - 1.0 / n:
        raise ValueError(f"share factor must lie in [0, 1 - 1/n], got {eps}")
    if complexity < 1.0 - 1e-12:
        raise ValueError(f"complexity is at least 1 by construction, got {complexity}")
    _, init_div = _initial_divergence(n, initial)
    log_inv_alpha = -math.log(alpha)
    log_inv_share = -math.log1p(-eps)
    per_step = (log_inv_share / log_inv_alpha + n * log_inv_alpha
                + (n + 1) * log_inv_share) * horizon
    if eps == 0.0:
        complexity_term = math.inf
    else:
        complexity_term = math.log(n / eps) / log_inv_alpha * complexity
    return per_step, complexity_term, n * init_div


def varying_rate_bound(n: int, horizon: int, complexity: float,
                       initial=None) -> tuple[float, float, float]:
    """Redundancy guarantee terms for the horizon-free varying schedule.

    Explicit pre-asymptotic form; returns (per_step_term, complexity_term,
    initial_term):
      per_step:   sqrt(2n) * [1/sqrt(log 2n) + 8 sqrt(horizon/log horizon)]
                  + n log(horizon+1) + 1
      complexity: sqrt(2n (horizon+1) log(n (horizon+1))) * (1 + complexity)
      initial:    n * D(uniform || initial)
    """
    n = check_alphabet_size(n)
    horizon = int(horizon)
    if horizon < 2:
        raise ValueError(f"horizon must be at least 2, got {horizon}")
    if complexity < 1.0 - 1e-12:
        raise ValueError(f"complexity is at least 1 by construction, got {complexity}")
    _, init_div = _initial_divergence(n, initial)
    per_step = (math.sqrt(2.0 * n)
                * (1.0 / math.sqrt(math.log(2.0 * n))
                   + 8.0 * math.sqrt(horizon / math.log(horizon)))
                + n * math.log(horizon + 1.0) + 1.0)
    complexity_term = (math.sqrt(2.0 * n * (horizon + 1) * math.log(n * (horizon + 1.0)))
                       * (1.0 + complexity))
    return per_step, complexity_term, n * init_div


def check_fixed_bound(spec: PwsSpec, letters, alpha: float | None = None,
                      eps: float | None = None, initial=None) -> BoundReport:
    """Run constant-rate smoothing over ``letters`` and compare to its bound.

    Rates default to the tuned schedule for the spec's alphabet and horizon.
    """
    n, horizon = spec.n, spec.horizon
    if alpha is None or eps is None:
        default_alpha, default_eps = fixed_schedule(n, horizon)
        alpha = default_alpha if alpha is None else alpha
        eps = default_eps if eps is None else eps
    init, _ = _initial_divergence(n, initial)
    model = PsModel(PsParams.fixed(alpha=alpha, eps=eps, initial=init))
    measured = model_code_length(model, letters).total - spec.code_length(letters)
    terms = fixed_rate_bound(n, horizon, alpha, eps, spec.complexity(), initial)
    return BoundReport(measured, *terms)


def check_varying_bound(spec: PwsSpec, letters, initial=None) -> BoundReport:
    """Run varying-rate smoothing over ``letters`` and compare to its bound."""
    n = spec.n
    init, _ = _initial_divergence(n, initial)
    model = PsModel(PsParams.varying(initial=init))
    measured = model_code_length(model, letters).total - spec.code_length(letters)
    terms = varying_rate_bound(n, spec.horizon, spec.complexity(), initial)
    return BoundReport(measured, *terms)


@dataclass(frozen=True)
class BoundViolation:
    family: str
    iteration: int
    seed: int
    report: BoundReport


@dataclass
class VerificationReport:
    samples: int
    worst_slack: dict[str, float]
    violations: list[BoundViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_bounds(n: int, horizon: int, samples: int, seed: int = 0,
                  families: tuple[str, ...] = ("fixed", "varying")) -> VerificationReport:
    """Check both guarantees on random (source, sequence) pairs.

    Sample i draws from seed ``seed + i``, so a violation is replayed by
    running a single sample with that seed. Segment counts vary over
    1..min(horizon, 100).
    """
    check_alphabet_size(n)
    report = VerificationReport(samples=int(samples),
                                worst_slack={f: math.inf for f in families},
                                violations=[])
    checkers = {"fixed": check_fixed_bound, "varying": check_varying_bound}
    max_segments = min(int(horizon), 100)
    for i in range(int(samples)):
        rng = as_rng(np.random.SeedSequence((seed + i, 0xB0)))
        segments = int(rng.integers(1, max_segments + 1))
        spec = sample_pws(n, horizon, segments, rng)
        letters = sample_sequence(spec, rng)
        for family in families:
            result = checkers[family](spec, letters)
            if result.slack < report.worst_slack[family]:
                report.worst_slack[family] = result.slack
            if not result.satisfied:
                report.violations.append(BoundViolation(family, i, seed + i, result))
    return report
