import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from scripts.channel.gaussian_mac import NoiseSpec, derive_trial_rng, sample_noise, transmit
from scripts.core.models import ConfigurationError
from scripts.theory.bounds import q_function


def test_noise_spec_from_snr():
    assert NoiseSpec.from_snr(4.0, 16.0).sigma == 1.0
    assert NoiseSpec.from_snr(4.0, math.inf).sigma == 0.0
    with pytest.raises(ConfigurationError):
        NoiseSpec.from_snr(4.0, 0.0)
    with pytest.raises(ConfigurationError):
        NoiseSpec(-1.0)


def test_same_seed_and_index_give_identical_streams():
    a = derive_trial_rng(42, 7).random(100)
    b = derive_trial_rng(42, 7).random(100)
    np.testing.assert_array_equal(a, b)


def test_streams_differ_across_index_and_seed():
    base = derive_trial_rng(42, 0).random(10)
    assert not np.array_equal(base, derive_trial_rng(42, 1).random(10))
    assert not np.array_equal(base, derive_trial_rng(43, 0).random(10))


def test_zero_sigma_is_noiseless():
    rng = derive_trial_rng(0, 0)
    assert all(sample_noise(0.0, rng) == 0.0 for _ in range(10))


def test_gaussian_moments_and_tail():
    rng = np.random.default_rng(2024)
    draws = np.array([sample_noise(1.0, rng) for _ in range(10**6)])
    assert abs(draws.mean()) < 5e-3
    assert abs(draws.var() - 1.0) < 0.01
    tail = np.mean(np.abs(draws) > 2.0)
    expected = 2 * q_function(2.0)
    se = math.sqrt(expected * (1 - expected) / draws.size)
    assert abs(tail - expected) < 4 * se


def test_ks_against_standard_normal():
    rng = np.random.default_rng(99)
    draws = [sample_noise(1.0, rng) for _ in range(10**5)]
    result = stats.kstest(draws, "norm")
    assert result.pvalue > 0.01


def test_transmit_is_exact_superposition():
    assert transmit([0.5], 0) == 0.5
    assert transmit([0.5, -0.5], 0) == 0
    x = [Fraction(1, 3), Fraction(-2, 7), 5]
    z = Fraction(11, 13)
    assert transmit(x, z) - transmit(x, 0) == z
    assert transmit([10, 20], 3) == 33
