import math

import numpy as np
import pytest

from probsmooth import (
    check_eps_proximity,
    check_kl_l1,
    check_progress_invariant,
    check_segment_sum,
    check_sqrt_log_sum,
    fuzz_lemmas,
    random_distribution,
    smooth_update,
    uniform,
)
from probsmooth.lemmas import SLACK, sqrt_log_sum_margins


def test_proximity_is_equality_without_share():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p, q = random_distribution(3, rng), random_distribution(3, rng)
        res = check_eps_proximity(p, q, 2, alpha=0.7, eps=0.0)
        assert res.ok
        assert abs(res.lhs - res.rhs) < 1e-12


def test_proximity_fuzz_and_floor_corner():
    rng = np.random.default_rng(1)
    for _ in range(2000):
        n = int(rng.integers(2, 9))
        alpha = float(rng.uniform(0.01, 0.99))
        eps = float(rng.uniform(0.0, 1.0 - 1.0 / n))
        base = eps / (n - 1)
        p = base + (1.0 - n * base) * rng.dirichlet(np.ones(n))
        q = random_distribution(n, rng)
        assert check_eps_proximity(p, q, int(rng.integers(1, n + 1)), alpha, eps).ok


def test_progress_trivial_case():
    p = np.array([0.25, 0.75])
    res = check_progress_invariant(p, p, 1, alpha=0.6, eps=0.0)
    assert res.lhs == 0.0
    assert res.ok


def test_progress_fuzz():
    rng = np.random.default_rng(2)
    for _ in range(2000):
        n = int(rng.integers(2, 9))
        alpha = float(rng.uniform(0.01, 0.99))
        eps = float(rng.uniform(0.0, 1.0 - 1.0 / n))
        p = random_distribution(n, rng)
        q = random_distribution(n, rng)
        assert check_progress_invariant(p, q, int(rng.integers(1, n + 1)), alpha, eps).ok


def test_progress_maximizer_probe():
    rng = np.random.default_rng(3)
    for _ in range(500):
        n = int(rng.integers(2, 6))
        alpha = float(rng.uniform(0.05, 0.95))
        eps = float(rng.uniform(0.0, 1.0 - 1.0 / n))
        p = random_distribution(n, rng)
        y = int(rng.integers(1, n + 1))
        pp = smooth_update(p, y, alpha, eps)
        qy = -math.log(alpha) / math.log(pp[y - 1] / (alpha * p[y - 1]))
        qy = min(max(qy, 1e-9), 1.0)
        q = np.full(n, (1.0 - qy) / (n - 1))
        q[y - 1] = qy
        assert check_progress_invariant(p, q, y, alpha, eps).ok


def test_progress_rejects_zero_mass_comparator():
    with pytest.raises(ValueError):
        check_progress_invariant([0.5, 0.5], [0.0, 1.0], 1, 0.5, 0.0)


def test_kl_l1_trivial_cases():
    u = uniform(4)
    w = np.array([0.4, 0.3, 0.2, 0.1])
    same = check_kl_l1(u, w, w, m=0.1)
    assert same.lhs == pytest.approx(same.lhs)  # finite
    assert abs(same.lhs) < 1e-12 or same.lhs <= same.rhs
    res = check_kl_l1(u, u, w, m=0.25)
    assert res.lhs <= 0.0 <= res.rhs
    assert res.ok


def test_kl_l1_fuzz_with_tight_floor():
    rng = np.random.default_rng(4)
    for _ in range(2000):
        n = int(rng.integers(2, 9))
        p = random_distribution(n, rng)
        w = random_distribution(n, rng)
        v = random_distribution(n, rng)
        assert check_kl_l1(p, w, v, m=float(min(p.min(), w.min()))).ok


def test_kl_l1_rejects_floor_violations():
    with pytest.raises(ValueError):
        check_kl_l1([0.5, 0.5], [0.9, 0.1], [0.5, 0.5], m=0.2)
    with pytest.raises(ValueError):
        check_kl_l1([0.5, 0.5], [0.5, 0.5], [0.5, 0.5], m=0.0)


def test_sqrt_log_sum_small_and_scan():
    first = check_sqrt_log_sum(2)
    assert first.lhs == pytest.approx(1.0 / math.sqrt(2.0 * math.log(2.0)))
    assert first.ok
    margins = sqrt_log_sum_margins(100_000)
    assert np.all(margins > 0.0)
    # The ratio lhs/rhs stays strictly below 1 over the scan.
    t = np.arange(2, 100_001, dtype=float)
    rhs = 8.0 * np.sqrt(t / np.log(t))
    assert np.all((rhs - margins) / rhs < 1.0)
    with pytest.raises(ValueError):
        check_sqrt_log_sum(1)


def test_segment_sum_single_segment_telescopes_to_equality():
    horizon = 12
    values = np.random.default_rng(5).uniform(-3.0, 2.0, size=(horizon + 1, 1))
    res = check_segment_sum((1, horizon + 1), np.full(horizon + 1, 2.5), values, cap=2.0)
    assert abs(res.lhs - res.rhs) < 1e-12
    assert res.ok


def test_segment_sum_constant_weights_match_plain_telescoping():
    rng = np.random.default_rng(6)
    for _ in range(200):
        horizon = int(rng.integers(2, 40))
        segments = int(rng.integers(1, horizon + 1))
        cuts = np.sort(rng.choice(np.arange(2, horizon + 1), size=segments - 1, replace=False))
        bounds = (1, *cuts.tolist(), horizon + 1)
        w = float(rng.uniform(0.0, 4.0))
        cap = float(rng.uniform(0.0, 3.0))
        values = rng.uniform(cap - 6.0, cap, size=(horizon + 1, segments))
        res = check_segment_sum(bounds, np.full(horizon + 1, w), values, cap)
        # With equal weights both sides reduce to the same telescoping identity.
        telescoped = w * (values[0, 0] - values[horizon, segments - 1])
        for k in range(segments - 1):
            t = bounds[k + 1]
            telescoped += w * (values[t - 1, k + 1] - values[t - 1, k])
        assert res.lhs == pytest.approx(telescoped, abs=1e-9)
        assert res.rhs == pytest.approx(telescoped, abs=1e-9)
        assert res.ok


def test_segment_sum_fuzz():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        horizon = int(rng.integers(1, 65))
        segments = int(rng.integers(1, horizon + 1))
        cuts = np.sort(rng.choice(np.arange(2, horizon + 1), size=segments - 1, replace=False))
        bounds = (1, *cuts.tolist(), horizon + 1)
        weights = np.sort(rng.uniform(-5.0, 10.0, size=horizon + 1))
        cap = float(rng.uniform(0.0, 5.0))
        values = rng.uniform(cap - 8.0, cap, size=(horizon + 1, segments))
        assert check_segment_sum(bounds, weights, values, cap).ok


def test_segment_sum_validates_inputs():
    values = np.zeros((4, 1))
    with pytest.raises(ValueError):
        check_segment_sum((1, 4), [3.0, 2.0, 1.0, 0.0], values, cap=1.0)  # decreasing
    with pytest.raises(ValueError):
        check_segment_sum((1, 4), [0.0, 1.0, 2.0, 3.0], values + 5.0, cap=1.0)  # above cap
    with pytest.raises(ValueError):
        check_segment_sum((1, 4), [0.0, 1.0, 2.0], values, cap=1.0)  # wrong length


def test_fuzz_driver_is_deterministic_and_clean():
    a = fuzz_lemmas(300, seed=42, scan_horizon=5000)
    b = fuzz_lemmas(300, seed=42, scan_horizon=5000)
    assert a.ok and b.ok
    assert a.min_margins == b.min_margins
    assert all(m >= -SLACK for m in a.min_margins.values())
    empty = fuzz_lemmas(0, seed=1)
    assert empty.ok and empty.min_margins == {}
