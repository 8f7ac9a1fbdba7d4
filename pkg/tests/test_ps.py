import math

import numpy as np
import pytest

from probsmooth import (
    PsModel,
    PsParams,
    fixed_schedule,
    ps1_model,
    ps2_model,
    smooth_update,
    varying_schedule,
)


def test_update_binary_no_share():
    out = smooth_update([0.5, 0.5], 1, alpha=0.5, eps=0.0)
    assert np.allclose(out, [0.75, 0.25])


def test_update_binary_with_share_sums_to_one():
    out = smooth_update([0.5, 0.5], 1, alpha=0.9, eps=0.25)
    assert np.allclose(out, [0.525, 0.475])
    assert out.sum() == pytest.approx(1.0, abs=1e-15)


def test_update_ternary_against_direct_formula():
    alpha, eps, n = 0.8, 0.3, 3
    p = np.full(3, 1.0 / 3.0)
    out = smooth_update(p, 2, alpha, eps)
    # Independent one-line evaluation of the update map, letter by letter.
    expected = [alpha / 3 + (1 - alpha) * eps / (n - 1),
                alpha / 3 + (1 - alpha) * (1 - eps),
                alpha / 3 + (1 - alpha) * eps / (n - 1)]
    assert np.max(np.abs(out - expected)) < 1e-15


def test_update_rejects_out_of_range_letter():
    with pytest.raises(ValueError):
        smooth_update([0.5, 0.5], 3, 0.5, 0.0)
    with pytest.raises(ValueError):
        smooth_update([0.5, 0.5], 0, 0.5, 0.0)


def test_model_predicts_initial_then_tracks_updates():
    model = PsModel(PsParams.fixed(alpha=0.5, eps=0.0, initial=[0.5, 0.5]))
    assert np.allclose(model.predict(), [0.5, 0.5])
    model.update(1)
    model.update(1)
    assert np.allclose(model.predict(), [0.875, 0.125])
    assert model.step == 2


def test_fixed_schedule_reference_values():
    alpha, eps = fixed_schedule(2, 8192)
    assert alpha == pytest.approx(math.exp(-math.sqrt(math.log(16384) / 16384)), rel=1e-15)
    assert eps == 1.0 / 8192
    alpha4, eps4 = fixed_schedule(2, 4)
    assert alpha4 == pytest.approx(math.exp(-math.sqrt(math.log(8) / 8)), rel=1e-15)
    assert eps4 == 0.25


def test_fixed_schedule_always_admissible():
    for n in (2, 3, 5, 16, 256):
        for horizon in (2, 3, 10, 1000, 10**6):
            alpha, eps = fixed_schedule(n, horizon)
            assert 0.0 < alpha < 1.0
            assert 0.0 <= eps <= 1.0 - 1.0 / n


def test_fixed_schedule_rejects_short_horizon():
    with pytest.raises(ValueError):
        fixed_schedule(2, 1)


def test_varying_schedule_reference_values():
    alpha, eps = varying_schedule(2, 1)
    assert eps == 0.5
    assert alpha == pytest.approx(math.exp(-math.sqrt(math.log(4) / 4)), rel=1e-15)
    alpha, eps = varying_schedule(4, 100)
    assert eps == pytest.approx(1.0 / 101)
    assert alpha == pytest.approx(math.exp(-math.sqrt(math.log(404) / 800)), rel=1e-15)
    with pytest.raises(ValueError):
        varying_schedule(2, 0)


def test_varying_schedule_monotone_over_wide_scan():
    t = np.arange(1, 100_001, dtype=float)
    for n in (2, 5):
        eps = 1.0 / (t + 1.0)
        alpha = np.exp(-np.sqrt(np.log(n / eps) / (2.0 * n * t)))
        spot = [varying_schedule(n, int(k)) for k in (1, 17, 99_999)]
        assert spot[0] == (alpha[0], eps[0])
        assert spot[1] == (alpha[16], eps[16])
        assert spot[2] == (alpha[99_998], eps[99_998])
        assert np.all(np.diff(alpha) >= 0.0)
        assert np.all(np.diff(eps) <= 0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        PsParams.fixed(alpha=1.0, eps=0.0, n=2)
    with pytest.raises(ValueError):
        PsParams.fixed(alpha=0.5, eps=0.6, n=2)  # above 1 - 1/n
    with pytest.raises(ValueError):
        PsParams.fixed(alpha=0.5, eps=0.4, initial=[0.05, 0.95])  # below eps/(n-1)
    with pytest.raises(ValueError):
        PsParams.varying(initial=[0.2, 0.8])  # below 1/(2(n-1))
    PsParams.varying(initial=[0.5, 0.5])


def test_fixed_floor_and_ceiling_along_full_horizon():
    horizon = 8192
    alpha, eps = fixed_schedule(2, horizon)
    model = ps1_model(2, horizon)
    rng = np.random.default_rng(11)
    low, high = eps / 2, 1.0 - eps
    for letter in rng.integers(1, 3, size=horizon):
        p = model.predict()
        assert p.min() >= low - 1e-15
        assert p.max() <= high + 1e-15
        assert p.sum() == pytest.approx(1.0, abs=1e-9)
        model.update(int(letter))


def test_varying_floor_along_trajectory():
    rng = np.random.default_rng(7)
    model = ps2_model(3)
    for t in range(1, 400):
        model.update(int(rng.integers(1, 4)))
        eps_t = varying_schedule(3, t)[1]
        assert model.predict().min() >= eps_t / 3 - 1e-15


def test_equal_states_give_equal_successors():
    model = ps1_model(4, 64)
    rng = np.random.default_rng(3)
    for letter in rng.integers(1, 5, size=20):
        model.update(int(letter))
    twin = model.copy()
    model.update(2)
    twin.update(2)
    assert model.step == twin.step
    assert np.array_equal(model.estimate, twin.estimate)
