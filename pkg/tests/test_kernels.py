import math

import mpmath
import numpy as np
import pytest

from gmpa.core import make_rng
from gmpa.kernels import (
    LevyParams,
    binary_mask,
    brownian_vector,
    cf,
    levy_sigma,
    levy_vector,
    uniform_vector,
)


class TestBrownian:
    def test_shape(self):
        assert brownian_vector(3, make_rng(0)).shape == (3,)

    def test_zero_dimension_rejected(self):
        with pytest.raises(ValueError):
            brownian_vector(0, make_rng(0))

    def test_moments(self):
        draws = brownian_vector(10**6, make_rng(11))
        assert abs(draws.mean()) < 0.01
        assert abs(draws.var() - 1.0) < 0.02

    def test_same_state_same_vector(self):
        a = brownian_vector(50, make_rng(3))
        b = brownian_vector(50, make_rng(3))
        assert np.array_equal(a, b)


class TestLevy:
    def test_sigma_matches_high_precision_oracle(self):
        # closed form evaluated with an arbitrary-precision gamma routine
        b = mpmath.mpf("1.5")
        oracle = (
            mpmath.gamma(1 + b) * mpmath.sin(mpmath.pi * b / 2)
            / (mpmath.gamma((1 + b) / 2) * b * 2 ** ((b - 1) / 2))
        ) ** (1 / b)
        assert abs(levy_sigma(1.5) - float(oracle)) < 1e-6
        assert levy_sigma(1.5) == pytest.approx(0.69657, abs=1e-5)

    def test_invalid_beta_rejected(self):
        with pytest.raises(ValueError):
            LevyParams(beta=0.0)
        with pytest.raises(ValueError):
            LevyParams(beta=2.5)

    def test_zero_numerator_gives_zero_step(self, fake_rng_cls):
        rng = fake_rng_cls(normal=[0.0, 1.0])  # u-draw then v-draw
        step = levy_vector(4, LevyParams(1.5), rng)
        assert np.array_equal(step, np.zeros(4))

    def test_tail_slope(self):
        steps = levy_vector(10**6, LevyParams(1.5), make_rng(123))
        mags = np.sort(np.abs(steps))
        n = mags.size
        lo, hi = int(0.99 * n), int(0.9999 * n)
        x = mags[lo:hi]
        survival = 1.0 - (np.arange(lo, hi) + 1) / n
        slope = np.polyfit(np.log10(x), np.log10(survival), 1)[0]
        assert slope == pytest.approx(-1.5, abs=0.2)

    def test_heavier_tail_than_brownian(self):
        rng = make_rng(5)
        levy_hits = np.sum(np.abs(levy_vector(10**6, LevyParams(1.5), rng)) > 5.0)
        normal_hits = np.sum(np.abs(brownian_vector(10**6, rng)) > 5.0)
        assert levy_hits > 10 * max(normal_hits, 1)


class TestUniformAndMask:
    def test_uniform_range(self):
        draws = uniform_vector(1000, make_rng(2))
        assert np.all((draws >= 0.0) & (draws < 1.0))

    def test_mask_extremes(self):
        assert np.array_equal(binary_mask(8, 0.0, make_rng(0)), np.zeros(8))
        assert np.array_equal(binary_mask(8, 1.0, make_rng(0)), np.ones(8))

    def test_mask_fraction(self):
        mask = binary_mask(10**6, 0.2, make_rng(9))
        assert abs(mask.mean() - 0.2) < 0.005

    def test_mask_probability_validated(self):
        with pytest.raises(ValueError):
            binary_mask(4, 1.5, make_rng(0))


class TestCf:
    def test_endpoints_and_midpoint(self):
        assert cf(0, 100) == 1.0
        assert cf(100, 100) == 0.0
        assert cf(50, 100) == pytest.approx(0.5, abs=1e-15)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            cf(101, 100)
        with pytest.raises(ValueError):
            cf(-1, 100)

    @pytest.mark.parametrize("T", [3, 7, 100, 1000])
    def test_bounded_on_grid(self, T):
        values = [cf(t, T) for t in range(T + 1)]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert values[0] == 1.0 and values[-1] == 0.0
