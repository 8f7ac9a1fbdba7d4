import numpy as np
import pytest

from probsmooth.distributions import (
    as_distribution,
    as_rng,
    check_alphabet_size,
    check_letter,
    random_distribution,
    uniform,
)


def test_alphabet_size_floor():
    assert check_alphabet_size(2) == 2
    with pytest.raises(ValueError):
        check_alphabet_size(1)


def test_letter_bounds():
    assert check_letter(3, 3) == 3
    with pytest.raises(ValueError):
        check_letter(4, 3)
    with pytest.raises(ValueError):
        check_letter(0, 3)


def test_as_distribution_copies_input():
    src = np.array([0.5, 0.5])
    out = as_distribution(src)
    out[0] = 0.9
    assert src[0] == 0.5


def test_tolerance_on_mass_sum():
    as_distribution([0.5, 0.5 + 5e-13])
    with pytest.raises(ValueError):
        as_distribution([0.5, 0.5 + 5e-12])


def test_uniform_and_random_draws():
    assert np.allclose(uniform(4), 0.25)
    rng = as_rng(0)
    p = random_distribution(6, rng)
    assert p.size == 6
    assert p.min() > 0.0
    assert p.sum() == pytest.approx(1.0, abs=1e-12)


def test_as_rng_passthrough():
    gen = np.random.default_rng(5)
    assert as_rng(gen) is gen
    assert isinstance(as_rng(None), np.random.Generator)
    a = as_rng(7).integers(0, 100, size=5)
    b = as_rng(7).integers(0, 100, size=5)
    assert np.array_equal(a, b)
