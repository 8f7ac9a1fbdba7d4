"""Piecewise stationary sources: one fixed distribution per time segment.

A source for sequences of length T is a partition of {1..T} into segments
plus one distribution per segment. It is the competitor against which the
online models are scored, and also the generator for synthetic benchmarks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import as_distribution, as_rng, check_alphabet_size

Segment = tuple[int, int]  # [start, end), 1-based times


@dataclass(frozen=True)
class PwsSpec:
    """Immutable source specification.

    ``boundaries`` is the strictly increasing tuple 1 = t_1 < ... < t_{S+1} =
    T+1; segment k covers [t_k, t_{k+1}). ``dists`` holds one distribution
    per segment, row-wise. ``seed`` records how a sampled spec was drawn.
    """

    boundaries: tuple[int, ...]
    dists: np.ndarray
    seed: object = field(default=None, compare=False)

    def __post_init__(self):
        bounds = tuple(int(b) for b in self.boundaries)
        object.__setattr__(self, "boundaries", bounds)
        if len(bounds) < 2 or bounds[0] != 1:
            raise ValueError("boundaries must start at 1 and name at least one segment")
        if any(a >= b for a, b in zip(bounds, bounds[1:])):
            raise ValueError("boundaries must be strictly increasing")
        dists = np.atleast_2d(np.asarray(self.dists, dtype=float))
        if dists.shape[0] != len(bounds) - 1:
            raise ValueError(f"{len(bounds) - 1} segments but {dists.shape[0]} distributions")
        for row in dists:
            as_distribution(row)
        dists = dists.copy()
        dists.flags.writeable = False
        object.__setattr__(self, "dists", dists)

    @property
    def n(self) -> int:
        return self.dists.shape[1]

    @property
    def horizon(self) -> int:
        return self.boundaries[-1] - 1

    @property
    def segment_count(self) -> int:
        return len(self.boundaries) - 1

    def segments(self) -> list[Segment]:
        return list(zip(self.boundaries[:-1], self.boundaries[1:]))

    def segment_index(self, t: int) -> int:
        t = int(t)
        if not 1 <= t <= self.horizon:
            raise ValueError(f"time {t} outside 1..{self.horizon}")
        return int(np.searchsorted(self.boundaries, t, side="right")) - 1

    def distribution_at(self, t: int) -> np.ndarray:
        """The distribution of the unique segment containing time t."""
        return self.dists[self.segment_index(t)].copy()

    def transition_set(self) -> list[tuple[int, Segment, Segment]]:
        """(t, A, B) triples where segment A ends and B begins at time t."""
        segs = self.segments()
        return [(segs[k + 1][0], segs[k], segs[k + 1]) for k in range(len(segs) - 1)]

    def code_length(self, letters) -> float:
        """Ideal code length (nats) assigned to ``letters``; +inf on zero mass."""
        letters = np.asarray(letters, dtype=np.int64)
        if letters.size != self.horizon:
            raise ValueError(f"expected {self.horizon} letters, got {letters.size}")
        if letters.size and (letters.min() < 1 or letters.max() > self.n):
            raise ValueError(f"letters must lie in 1..{self.n}")
        lengths = np.diff(self.boundaries)
        seg_of_t = np.repeat(np.arange(self.segment_count), lengths)
        probs = self.dists[seg_of_t, letters - 1]
        if np.any(probs == 0.0):
            return math.inf
        return float(-np.log(probs).sum())

    def complexity(self) -> float:
        """1 plus the total L1 variation across adjacent segment distributions."""
        if self.segment_count == 1:
            return 1.0
        return 1.0 + float(np.abs(np.diff(self.dists, axis=0)).sum())

    def mixed_toward_uniform(self, eps: float) -> "PwsSpec":
        """Replace each segment distribution p by (1-eps)*p + eps/n."""
        if not 0.0 <= eps < 1.0:
            raise ValueError(f"mixing weight must lie in [0, 1), got {eps}")
        return PwsSpec(self.boundaries, (1.0 - eps) * self.dists + eps / self.n, seed=self.seed)

    def to_text(self) -> str:
        """Serialize as 'N T S' plus one 'start end p(1) .. p(N)' line per segment."""
        lines = [f"{self.n} {self.horizon} {self.segment_count}"]
        for (start, end), row in zip(self.segments(), self.dists):
            probs = " ".join(f"{v:.17g}" for v in row)
            lines.append(f"{start} {end} {probs}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PwsSpec":
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        if not rows or len(rows[0]) != 3:
            raise ValueError("expected a header line 'N T S'")
        n, horizon, segments = (int(v) for v in rows[0])
        if len(rows) != segments + 1:
            raise ValueError(f"expected {segments} segment lines, got {len(rows) - 1}")
        boundaries = [1]
        dists = []
        for row in rows[1:]:
            if len(row) != 2 + n:
                raise ValueError(f"segment line has {len(row)} fields, expected {2 + n}")
            start, end = int(row[0]), int(row[1])
            if start != boundaries[-1]:
                raise ValueError(f"segment starting at {start} does not follow {boundaries[-1]}")
            boundaries.append(end)
            dists.append([float(v) for v in row[2:]])
        if boundaries[-1] != horizon + 1:
            raise ValueError("segments do not cover the declared horizon")
        return cls(tuple(boundaries), np.array(dists))


def sample_pws(n: int, horizon: int, segments: int, rng=None) -> PwsSpec:
    """Draw a source uniformly: cut points uniform over the C(T-1, S-1)
    partitions with exactly ``segments`` segments, distributions uniform on
    the simplex. Deterministic given the seed."""
    n = check_alphabet_size(n)
    horizon = int(horizon)
    segments = int(segments)
    if not 1 <= segments <= horizon:
        raise ValueError(f"segment count must lie in 1..{horizon}, got {segments}")
    seed = None if isinstance(rng, np.random.Generator) else rng
    rng = as_rng(rng)
    cuts = np.sort(rng.choice(np.arange(2, horizon + 1), size=segments - 1, replace=False))
    boundaries = (1, *cuts.tolist(), horizon + 1)
    dists = rng.dirichlet(np.ones(n), size=segments)
    return PwsSpec(boundaries, dists, seed=seed)


def sample_sequence(spec: PwsSpec, rng=None) -> np.ndarray:
    """Draw letters independently, each from its segment's distribution."""
    rng = as_rng(rng)
    out = np.empty(spec.horizon, dtype=np.int64)
    for (start, end), row in zip(spec.segments(), spec.dists):
        out[start - 1:end - 1] = rng.choice(spec.n, size=end - start, p=row) + 1
    return out
