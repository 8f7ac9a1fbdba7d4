"""Segment-sweep benchmark: redundancy of every model vs. sampled sources.

For each segment count S the harness draws `trials` random piecewise
stationary sources and one sequence from each, scores every model's code
length against the source's, and averages. The same drawn sequence is reused
across models within a trial (paired comparison). Trial k at segment count S
derives its generator from SeedSequence((seed, S, k)), so results do not
depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .batchruns import roster_code_lengths
from .pws import sample_pws, sample_sequence

MODEL_ROSTER = ("PS1", "PS2", "KT", "KT-CS", "KT-H", "KT-R", "PTW-KT")

# The reference sweep races the aged-count estimators, not plain KT.
DEFAULT_MODELS = ("PS1", "PS2", "KT-CS", "KT-H", "KT-R", "PTW-KT")

CSV_HEADER = "S,model,mean_redundancy_nats,std_dev,trials"


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Benchmark parameters; the defaults give the full reference sweep."""

    n: int = 2
    horizon: int = 8192
    segment_counts: tuple[int, ...] = tuple(range(1, 101))
    trials: int = 100
    models: tuple[str, ...] = DEFAULT_MODELS
    seed: int = 20240907
    output: str = "results.csv"

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"alphabet size must be at least 2, got {self.n}")
        if self.horizon < 1:
            raise ConfigError(f"sequence length must be positive, got {self.horizon}")
        if self.trials < 1:
            raise ConfigError(f"trial count must be positive, got {self.trials}")
        if not self.segment_counts:
            raise ConfigError("no segment counts given")
        bad = [s for s in self.segment_counts if not 1 <= s <= self.horizon]
        if bad:
            raise ConfigError(f"segment counts outside 1..{self.horizon}: {bad}")
        models = tuple(m.strip().upper().replace("_", "-") for m in self.models)
        unknown = [m for m in models if m not in MODEL_ROSTER]
        if unknown:
            raise ConfigError(f"unknown models {unknown}; roster: {', '.join(MODEL_ROSTER)}")
        if not models:
            raise ConfigError("no models given")
        object.__setattr__(self, "models", models)
        object.__setattr__(self, "segment_counts", tuple(int(s) for s in self.segment_counts))


def _parse_segments(text: str) -> tuple[int, ...]:
    counts: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo, hi = token.split("..", 1)
            counts.extend(range(int(lo), int(hi) + 1))
        elif token:
            counts.append(int(token))
    return tuple(counts)


def format_segments(counts: tuple[int, ...]) -> str:
    """Compact a..b form where the counts run contiguously."""
    pieces: list[str] = []
    i = 0
    while i < len(counts):
        j = i
        while j + 1 < len(counts) and counts[j + 1] == counts[j] + 1:
            j += 1
        pieces.append(str(counts[i]) if i == j else f"{counts[i]}..{counts[j]}")
        i = j + 1
    return ",".join(pieces)


def parse_config(text: str) -> ExperimentConfig:
    """Parse 'key = value' lines (keys: n, t, segments, trials, models, seed,
    output); blank lines and '#' comments are ignored."""
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        try:
            if key == "n":
                fields["n"] = int(value)
            elif key == "t":
                fields["horizon"] = int(value)
            elif key == "segments":
                fields["segment_counts"] = _parse_segments(value)
            elif key == "trials":
                fields["trials"] = int(value)
            elif key == "models":
                fields["models"] = tuple(m.strip() for m in value.split(",") if m.strip())
            elif key == "seed":
                fields["seed"] = int(value)
            elif key == "output":
                fields["output"] = value
            else:
                raise ConfigError(f"unknown key {key!r}", lineno)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", lineno) from exc
    try:
        return ExperimentConfig(**fields)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def format_config(config: ExperimentConfig) -> str:
    """Render a config as the same key = value lines parse_config reads."""
    return "\n".join([
        f"n = {config.n}",
        f"t = {config.horizon}",
        f"segments = {format_segments(config.segment_counts)}",
        f"trials = {config.trials}",
        f"models = {','.join(config.models)}",
        f"seed = {config.seed}",
        f"output = {config.output}",
    ]) + "\n"


@dataclass(frozen=True)
class ResultRow:
    segments: int
    model: str
    mean: float
    std: float
    trials: int


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[ResultRow, ...]

    def mean(self, segments: int, model: str) -> float:
        for row in self.rows:
            if row.segments == segments and row.model == model:
                return row.mean
        raise KeyError((segments, model))

    def models(self) -> tuple[str, ...]:
        return tuple(sorted({row.model for row in self.rows}))

    def segment_counts(self) -> tuple[int, ...]:
        return tuple(sorted({row.segments for row in self.rows}))

    def curve(self, model: str) -> tuple[np.ndarray, np.ndarray]:
        pts = sorted((row.segments, row.mean) for row in self.rows if row.model == model)
        return np.array([p[0] for p in pts]), np.array([p[1] for p in pts])


def sample_trial(config: ExperimentConfig, segments: int, trial: int):
    """Draw one (source, sequence, source code length) triple; redraws the
    measure-zero case of an infinite source code length."""
    rng = np.random.default_rng(np.random.SeedSequence((config.seed, segments, trial)))
    while True:
        spec = sample_pws(config.n, config.horizon, segments, rng)
        letters = sample_sequence(spec, rng)
        base = spec.code_length(letters)
        if math.isfinite(base):
            return spec, letters, base


def trial_redundancies(config: ExperimentConfig, progress=None) -> dict:
    """Per-trial redundancy arrays keyed by (segment count, model name)."""
    out: dict[tuple[int, str], np.ndarray] = {}
    for segments in config.segment_counts:
        seqs = np.empty((config.trials, config.horizon), dtype=np.int64)
        base = np.empty(config.trials)
        for k in range(config.trials):
            _, seqs[k], base[k] = sample_trial(config, segments, k)
        for model in config.models:
            out[(segments, model)] = roster_code_lengths(model, seqs, config.n) - base
        if progress is not None:
            progress(segments)
    return out


def run_experiment(config: ExperimentConfig, progress=None) -> ResultTable:
    """Average the per-trial redundancies into one row per (S, model)."""
    reds = trial_redundancies(config, progress=progress)
    rows = [
        ResultRow(segments=s, model=m, mean=float(vals.mean()),
                  std=float(vals.std()), trials=vals.size)
        for (s, m), vals in reds.items()
    ]
    rows.sort(key=lambda r: (r.segments, r.model))
    return ResultTable(rows=tuple(rows))


def emit_csv(table: ResultTable, path) -> None:
    lines = [CSV_HEADER]
    for row in table.rows:
        lines.append(f"{row.segments},{row.model},{row.mean!r},{row.std!r},{row.trials}")
    with open(path, "w", encoding="ascii") as handle:
        handle.write("\n".join(lines) + "\n")


def read_csv(path) -> ResultTable:
    with open(path, "r", encoding="ascii") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected results header in {path}")
    rows = []
    for line in lines[1:]:
        s, model, mean, std, trials = line.split(",")
        rows.append(ResultRow(int(s), model, float(mean), float(std), int(trials)))
    return ResultTable(rows=tuple(rows))


def build_figure(table: ResultTable):
    """Two-panel redundancy plot: zoomed to the competitive band, and full."""
    from matplotlib.figure import Figure

    fig = Figure(figsize=(11, 4.5))
    zoomed, full = fig.subplots(1, 2)
    overall = {m: float(np.mean(table.curve(m)[1])) for m in table.models()}
    best = sorted(overall, key=overall.get)[:3]
    zoom_top = -math.inf
    zoom_bottom = math.inf
    for model in table.models():
        s, mean = table.curve(model)
        for axis in (zoomed, full):
            axis.plot(s, mean, label=model, linewidth=1.4)
        if model in best:
            zoom_top = max(zoom_top, float(mean.max()))
        zoom_bottom = min(zoom_bottom, float(mean.min()))
    pad = 0.05 * (zoom_top - zoom_bottom) if zoom_top > zoom_bottom else 1.0
    zoomed.set_ylim(zoom_bottom - pad, zoom_top + pad)
    zoomed.set_title("zoomed")
    full.set_title("full view")
    for axis in (zoomed, full):
        axis.set_xlabel("segments")
        axis.set_ylabel("mean redundancy (nats)")
        axis.legend(fontsize="small")
    fig.tight_layout()
    return fig


def emit_plot(table: ResultTable, path) -> None:
    build_figure(table).savefig(path)


def with_overrides(config: ExperimentConfig, **changes) -> ExperimentConfig:
    return replace(config, **changes)
