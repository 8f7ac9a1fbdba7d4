import time

import numpy as np
import pytest

from probsmooth import KtModel, fixed_rate_bound, fixed_schedule, model_code_length
from probsmooth.batchruns import ps_fixed_code_lengths
from probsmooth.experiment import (
    DEFAULT_MODELS,
    ConfigError,
    ExperimentConfig,
    ResultTable,
    build_figure,
    emit_csv,
    emit_plot,
    format_config,
    parse_config,
    read_csv,
    run_experiment,
    sample_trial,
    trial_redundancies,
)

SMALL = ExperimentConfig(n=2, horizon=64, segment_counts=(1, 3, 5), trials=4,
                         models=("KT", "PS1"), seed=99, output="unused.csv")


def test_defaults_reproduce_reference_protocol():
    config = ExperimentConfig()
    assert config.n == 2
    assert config.horizon == 8192
    assert config.segment_counts == tuple(range(1, 101))
    assert config.trials == 100
    assert config.models == DEFAULT_MODELS


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(trials=0)
    with pytest.raises(ConfigError):
        ExperimentConfig(horizon=16, segment_counts=(20,))
    with pytest.raises(ConfigError):
        ExperimentConfig(models=("KT", "BOGUS"))
    lower = ExperimentConfig(models=("kt", "ps1"))
    assert lower.models == ("KT", "PS1")


def test_parse_config_full_file():
    text = """
    # reference setup, shrunk
    n = 2
    t = 128          # sequence length
    segments = 1..3,8
    trials = 2
    models = PS1, KT-CS
    seed = 5
    output = out.csv
    """
    config = parse_config(text)
    assert config.horizon == 128
    assert config.segment_counts == (1, 2, 3, 8)
    assert config.models == ("PS1", "KT-CS")
    assert config.output == "out.csv"


def test_parse_config_defaults_when_omitted():
    config = parse_config("t = 256\nsegments = 1..4\ntrials = 1\n")
    assert config.n == 2
    assert config.models == DEFAULT_MODELS


def test_parse_config_errors_carry_line_numbers():
    with pytest.raises(ConfigError) as err:
        parse_config("n = 2\nwat = 9\n")
    assert err.value.line == 2
    with pytest.raises(ConfigError) as err:
        parse_config("n = two\n")
    assert err.value.line == 1
    with pytest.raises(ConfigError) as err:
        parse_config("just some words\n")
    assert err.value.line == 1


def test_config_round_trips_through_format():
    assert parse_config(format_config(SMALL)) == SMALL


def test_single_trial_matches_reference_ledger():
    config = ExperimentConfig(n=2, horizon=96, segment_counts=(1,), trials=1,
                              models=("KT",), seed=4)
    table = run_experiment(config)
    assert len(table.rows) == 1
    row = table.rows[0]
    _, letters, base = sample_trial(config, 1, 0)
    expected = model_code_length(KtModel(2), letters).total - base
    assert row.mean == pytest.approx(expected, rel=1e-12)
    assert row.std == 0.0
    assert row.trials == 1


def test_runs_are_deterministic_and_order_independent(tmp_path):
    table_a = run_experiment(SMALL)
    table_b = run_experiment(SMALL)
    assert table_a == table_b
    path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(table_a, path_a)
    emit_csv(table_b, path_b)
    assert path_a.read_bytes() == path_b.read_bytes()

    # Trial draws depend only on (seed, S, k), not on visit order.
    in_order = [sample_trial(SMALL, 3, k)[2] for k in range(4)]
    permuted = {k: sample_trial(SMALL, 3, k)[2] for k in (2, 0, 3, 1)}
    assert all(in_order[k] == permuted[k] for k in range(4))


def test_no_state_leaks_between_trials():
    reds = trial_redundancies(SMALL)
    config_one = ExperimentConfig(n=2, horizon=64, segment_counts=(3,), trials=1,
                                  models=("KT",), seed=99)
    lone = trial_redundancies(config_one)[(3, "KT")]
    assert reds[(3, "KT")][0] == pytest.approx(lone[0], rel=1e-12)


def test_csv_round_trip(tmp_path):
    table = run_experiment(SMALL)
    path = tmp_path / "results.csv"
    emit_csv(table, path)
    assert read_csv(path) == table
    lines = path.read_text().splitlines()
    assert lines[0] == "S,model,mean_redundancy_nats,std_dev,trials"
    assert len(lines) == 1 + len(table.rows)
    empty = tmp_path / "empty.csv"
    emit_csv(ResultTable(rows=()), empty)
    assert empty.read_text().splitlines() == ["S,model,mean_redundancy_nats,std_dev,trials"]


def test_rows_sorted_by_segments_then_model():
    table = run_experiment(SMALL)
    keys = [(r.segments, r.model) for r in table.rows]
    assert keys == sorted(keys)
    assert len(keys) == len(SMALL.segment_counts) * len(SMALL.models)


def test_figure_has_one_curve_per_model_per_panel(tmp_path):
    table = run_experiment(SMALL)
    fig = build_figure(table)
    zoomed, full = fig.axes
    assert len(zoomed.get_lines()) == len(SMALL.models)
    assert len(full.get_lines()) == len(SMALL.models)
    # The full panel's ranges cover the data extents.
    means = [row.mean for row in table.rows]
    x0, x1 = full.get_xlim()
    y0, y1 = full.get_ylim()
    assert x0 <= min(SMALL.segment_counts) and x1 >= max(SMALL.segment_counts)
    assert y0 <= min(means) and y1 >= max(means)

    single = ResultTable(rows=tuple(r for r in table.rows if r.model == "KT"))
    fig_single = build_figure(single)
    assert all(len(ax.get_lines()) == 1 for ax in fig_single.axes)

    out = tmp_path / "plot.svg"
    emit_plot(table, out)
    assert out.read_bytes().startswith(b"<?xml")


def test_mean_std_shape():
    rows = run_experiment(SMALL).rows
    assert all(np.isfinite(r.mean) and np.isfinite(r.std) and r.trials == 4 for r in rows)


def test_stationary_trials_stay_below_their_guarantee_per_trial():
    # At S=1 the sampled source has complexity exactly 1, so the constant-rate
    # guarantee with that complexity caps every single trial at full scale.
    config = ExperimentConfig(n=2, horizon=8192, segment_counts=(1,), trials=20,
                              models=("PS1",), seed=12)
    reds = trial_redundancies(config)[(1, "PS1")]
    alpha, eps = fixed_schedule(2, 8192)
    cap = sum(fixed_rate_bound(2, 8192, alpha, eps, complexity=1.0))
    assert np.all(reds < cap)


def test_linear_per_step_models_scale_linearly_in_horizon():
    rng = np.random.default_rng(0)
    short = rng.integers(1, 3, size=(1, 8192))
    long = rng.integers(1, 3, size=(1, 16384))

    def best_of(reps, fn):
        times = []
        for _ in range(reps):
            start = time.perf_counter()
            fn()
            times.append(time.perf_counter() - start)
        return min(times)

    t_short = best_of(3, lambda: ps_fixed_code_lengths(short, 2, 0.9, 0.01))
    t_long = best_of(3, lambda: ps_fixed_code_lengths(long, 2, 0.9, 0.01))
    assert t_long / t_short < 3.0
