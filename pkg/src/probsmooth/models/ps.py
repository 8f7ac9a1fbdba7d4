"""Probability smoothing: exponential decay of a running distribution estimate.

Each step the current estimate is shrunk by a smoothing rate ``alpha`` and the
freed mass ``1 - alpha`` is re-injected: a share ``eps`` of it is spread
uniformly over the letters that were *not* observed, the rest goes to the
observed letter. ``eps > 0`` keeps every prediction bounded away from 0 and 1.

Two published parameter schedules are provided: a constant one tuned to a
known sequence length (:func:`fixed_schedule`) and a horizon-free one whose
rates vary with the step index (:func:`varying_schedule`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..distributions import as_distribution, check_alphabet_size, check_letter, uniform

_FLOOR_TOL = 1e-12


def smooth_update(p, letter: int, alpha: float, eps: float) -> np.ndarray:
    """One smoothing adjustment of estimate ``p`` after observing ``letter``.

    Returns p' with p'(y) = alpha*p(y) + (1-alpha)*(1-eps) for the observed
    letter y and p'(x) = alpha*p(x) + (1-alpha)*eps/(n-1) for all others.
    The output sums to 1 up to floating round-off.
    """
    p = as_distribution(p)
    n = p.size
    letter = check_letter(letter, n)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"smoothing rate must lie in (0, 1), got {alpha}")
    if not 0.0 <= eps <= 1.0 - 1.0 / n:
        raise ValueError(f"share factor must lie in [0, 1 - 1/n], got {eps}")
    share = eps / (n - 1)
    out = alpha * p + (1.0 - alpha) * share
    out[letter - 1] = alpha * p[letter - 1] + (1.0 - alpha) * (1.0 - eps)
    return out


def fixed_schedule(n: int, horizon: int) -> tuple[float, float]:
    """Constant (alpha, eps) tuned for alphabet size ``n`` and length ``horizon``.

    alpha = exp(-sqrt(log(n*horizon) / (n*horizon))) and eps = 1/horizon;
    requires horizon >= 2.
    """
    n = check_alphabet_size(n)
    horizon = int(horizon)
    if horizon < 2:
        raise ValueError(f"fixed schedule requires a horizon of at least 2, got {horizon}")
    nt = n * horizon
    alpha = math.exp(-math.sqrt(math.log(nt) / nt))
    return alpha, 1.0 / horizon


def varying_schedule(n: int, t: int) -> tuple[float, float]:
    """Step-t rates for the horizon-free schedule.

    eps_t = 1/(t+1) and alpha_t = exp(-sqrt(log(n/eps_t) / (2*n*t))); the
    rates are monotone (alpha nondecreasing, eps nonincreasing) in t.
    """
    n = check_alphabet_size(n)
    t = int(t)
    if t < 1:
        raise ValueError(f"step index must be at least 1, got {t}")
    eps = 1.0 / (t + 1)
    alpha = math.exp(-math.sqrt(math.log(n / eps) / (2.0 * n * t)))
    return alpha, eps


@dataclass(frozen=True)
class PsParams:
    """Parameter schedule and initial estimate for a smoothing model."""

    kind: str  # "fixed" or "varying"
    initial: np.ndarray
    alpha: float | None = None
    eps: float | None = None

    @classmethod
    def fixed(cls, alpha: float, eps: float, initial=None, n: int | None = None) -> "PsParams":
        if initial is None:
            if n is None:
                raise ValueError("need either an initial distribution or an alphabet size")
            initial = uniform(n)
        return cls(kind="fixed", initial=as_distribution(initial, n=n), alpha=float(alpha), eps=float(eps))

    @classmethod
    def varying(cls, initial=None, n: int | None = None) -> "PsParams":
        if initial is None:
            if n is None:
                raise ValueError("need either an initial distribution or an alphabet size")
            initial = uniform(n)
        return cls(kind="varying", initial=as_distribution(initial, n=n))

    def __post_init__(self):
        initial = as_distribution(self.initial)
        object.__setattr__(self, "initial", initial)
        self.initial.flags.writeable = False
        n = initial.size
        if self.kind == "fixed":
            if self.alpha is None or self.eps is None:
                raise ValueError("fixed schedule needs both alpha and eps")
            if not 0.0 < self.alpha < 1.0:
                raise ValueError(f"smoothing rate must lie in (0, 1), got {self.alpha}")
            if not 0.0 <= self.eps <= 1.0 - 1.0 / n:
                raise ValueError(f"share factor must lie in [0, 1 - 1/n], got {self.eps}")
            floor = self.eps / (n - 1)
        elif self.kind == "varying":
            if self.alpha is not None or self.eps is not None:
                raise ValueError("varying schedule carries no constant rates")
            floor = varying_schedule(n, 1)[1] / (n - 1)  # eps_1 = 1/2
        else:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if np.any(initial < floor - _FLOOR_TOL):
            raise ValueError(f"initial estimate must give every letter at least {floor}")

    @property
    def n(self) -> int:
        return self.initial.size

    def rates(self, t: int) -> tuple[float, float]:
        """(alpha_t, eps_t) applied when consuming the t-th letter (1-based)."""
        if self.kind == "fixed":
            return self.alpha, self.eps
        return varying_schedule(self.n, t)


@dataclass
class PsModel:
    """Mutable smoothing predictor: current estimate plus step counter."""

    params: PsParams
    estimate: np.ndarray = field(init=False)
    step: int = field(init=False, default=0)

    def __post_init__(self):
        self.estimate = self.params.initial.copy()

    @property
    def n(self) -> int:
        return self.params.n

    def predict(self) -> np.ndarray:
        return self.estimate.copy()

    def update(self, letter: int) -> None:
        letter = check_letter(letter, self.n)
        alpha, eps = self.params.rates(self.step + 1)
        share = eps / (self.n - 1)
        est = self.estimate
        est *= alpha
        est += (1.0 - alpha) * share
        est[letter - 1] += (1.0 - alpha) * (1.0 - eps - share)
        self.step += 1

    def copy(self) -> "PsModel":
        dup = PsModel(self.params)
        dup.estimate = self.estimate.copy()
        dup.step = self.step
        return dup


def ps1_model(n: int, horizon: int, alpha: float | None = None, eps: float | None = None,
              initial=None) -> PsModel:
    """Smoothing model with the constant schedule (rates derived from horizon)."""
    default_alpha, default_eps = fixed_schedule(n, horizon)
    return PsModel(PsParams.fixed(
        alpha=default_alpha if alpha is None else alpha,
        eps=default_eps if eps is None else eps,
        initial=initial,
        n=n,
    ))


def ps2_model(n: int, initial=None) -> PsModel:
    """Smoothing model with the horizon-free varying schedule."""
    return PsModel(PsParams.varying(initial=initial, n=n))
