# -*- coding: utf-8 -*-
#
# Copyright 2024 The paleobreaks authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License").
# You may not use this file except in compliance with the License.
# A copy of the License is located at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS
# OF ANY KIND, either express or implied. See the License for the
# specific language governing permissions and limitations under the
# License.
#
import math
import unittest

import numpy as np
from scipy import signal

from paleobreaks_core.exceptions import (
    HacException, SingularRegressionException)
from paleobreaks_core.hac import (
    HacConfig, ar1_bandwidth, hac_covariance, long_run_variance, prewhiten,
    qs_kernel)


def _qs_series(x, terms=30):
    z = 6.0 * math.pi * x / 5.0
    total = 0.0
    for n in range(1, terms + 1):
        total += (-1) ** n * z ** (2 * n - 2) * (
            1.0 / math.factorial(2 * n + 1) - 1.0 / math.factorial(2 * n))
    return 3.0 * total


def _ar1(rho, n_obs, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return signal.lfilter([1.0], [1.0, -rho], rng.normal(
        scale=scale, size=n_obs))


class TestQsKernel(unittest.TestCase):
    def test_normalized_at_zero(self):
        assert qs_kernel(0.0) == 1.0, (
            "Quadratic-spectral kernel isn't 1 at zero")

    def test_even_function(self):
        for x in (0.3, 1.7):
            assert qs_kernel(x) == qs_kernel(-x), (
                "Quadratic-spectral kernel isn't symmetric at {}".format(x))

    def test_matches_series_expansion(self):
        self.assertAlmostEqual(qs_kernel(1.2), _qs_series(1.2), places=12)

    def test_vectorized(self):
        weights = qs_kernel(np.array([0.0, 0.5, 1.2]))

        np.testing.assert_allclose(
            weights, [1.0, _qs_series(0.5), _qs_series(1.2)], atol=1e-12)


class TestPrewhiten(unittest.TestCase):
    def test_iid_scores_give_small_coefficient(self):
        scores = np.random.default_rng(4).normal(size=(4000, 2))

        residuals, coefficients = prewhiten(scores)

        assert residuals.shape == (3999, 2), (
            "Prewhitening returned residuals of the wrong shape")
        assert np.all(np.abs(coefficients) < 3.0 / math.sqrt(4000)), (
            "Prewhitening found dynamics in i.i.d. scores")

    def test_ar1_coefficient_recovered(self):
        scores = _ar1(0.8, 5000, seed=6)

        _, coefficients = prewhiten(scores)

        assert abs(coefficients[0, 0] - 0.8) < 0.05, (
            "Prewhitening didn't recover the AR coefficient")

    def test_explosive_coefficient_capped(self):
        scores = np.cumsum(np.cumsum(
            np.random.default_rng(2).normal(size=500)))

        _, coefficients = prewhiten(scores)

        assert abs(coefficients[0, 0]) <= 0.97 + 1e-12, (
            "Prewhitening didn't cap the coefficient")

    def test_zero_scores_raise_exception(self):
        with self.assertRaises(SingularRegressionException):
            prewhiten(np.zeros((50, 2)))

    def test_too_short_raises_exception(self):
        with self.assertRaises(HacException) as exc:
            prewhiten(np.ones((3, 2)))

        assert "at least 4 observations" in str(exc.exception), (
            "Prewhitening accepted too few observations")


class TestHacCovariance(unittest.TestCase):
    def test_iid_scalar_variance(self):
        scores = np.random.default_rng(10).normal(scale=2.0, size=5000)

        result = hac_covariance(scores)

        assert abs(result.covariance[0, 0] / 4.0 - 1.0) < 0.10, (
            "Long-run variance of i.i.d. scores is off by more than 10%")
        assert result.prewhitened, (
            "Default configuration didn't prewhiten")

    def test_ar1_long_run_variance(self):
        scores = _ar1(0.5, 5000, seed=12)

        result = hac_covariance(scores)

        assert abs(result.covariance[0, 0] / 4.0 - 1.0) < 0.15, (
            "Long-run variance of AR(1) scores is off by more than 15%")

    def test_zero_scores_give_zero_matrix(self):
        result = hac_covariance(np.zeros((20, 2)))

        np.testing.assert_array_equal(result.covariance, np.zeros((2, 2)))
        assert "zero-scores" in result.flags, (
            "Zero scores weren't flagged")

    def test_scaling_scales_covariance_quadratically(self):
        scores = np.random.default_rng(14).normal(size=(300, 2))
        scores[1:] += 0.4 * scores[:-1]

        base = hac_covariance(scores)
        scaled = hac_covariance(3.0 * scores)

        np.testing.assert_allclose(
            scaled.covariance, 9.0 * base.covariance, rtol=1e-8)
        self.assertAlmostEqual(scaled.bandwidth, base.bandwidth, places=8)

    def test_white_variance_without_smoothing(self):
        scores = np.random.default_rng(15).normal(size=(200, 2))
        config = HacConfig(prewhiten=False, bandwidth=0.0)

        result = hac_covariance(scores, config)

        np.testing.assert_allclose(
            result.covariance, scores.T @ scores / 200, rtol=1e-12)
        assert not result.prewhitened, (
            "Prewhitening ran although it was disabled")

    def test_symmetric_positive_semidefinite(self):
        scores = np.random.default_rng(16).normal(size=(150, 3)).cumsum(
            axis=0)

        covariance = hac_covariance(scores).covariance

        np.testing.assert_allclose(covariance, covariance.T, atol=1e-12)
        eigenvalues = np.linalg.eigvalsh(covariance)
        assert eigenvalues.min() >= -1e-10 * np.trace(covariance), (
            "HAC covariance isn't positive semidefinite")

    def test_singular_prewhitening_falls_back(self):
        column = np.random.default_rng(17).normal(size=100)
        scores = np.column_stack([column, column])

        result = hac_covariance(scores)

        assert "prewhitening-skipped" in result.flags, (
            "Singular prewhitening regression wasn't flagged")
        assert not result.prewhitened, (
            "Fallback still reported prewhitening coefficients")

    def test_too_few_observations_raise_exception(self):
        with self.assertRaises(HacException) as exc:
            hac_covariance(np.ones(3))

        assert "at least 4 observations" in str(exc.exception), (
            "HAC estimation accepted three observations")

    def test_bandwidth_override(self):
        scores = np.random.default_rng(18).normal(size=100)

        result = hac_covariance(scores, HacConfig(bandwidth=5.0))

        assert result.bandwidth == 5.0, (
            "Fixed bandwidth wasn't used")

    def test_long_run_variance_zero_bandwidth(self):
        e = np.random.default_rng(19).normal(size=(50, 1))

        np.testing.assert_allclose(
            long_run_variance(e, 0.0), e.T @ e / 50)

    def test_bandwidth_grows_with_persistence(self):
        weak = ar1_bandwidth(_ar1(0.1, 2000, seed=20))
        strong = ar1_bandwidth(_ar1(0.8, 2000, seed=20))

        assert strong > weak > 0.0, (
            "Plug-in bandwidth didn't grow with persistence")


class TestHacConfig(unittest.TestCase):
    def test_unsupported_kernel_raises_exception(self):
        with self.assertRaises(HacException) as exc:
            HacConfig(kernel="bartlett")

        assert "Unsupported kernel" in str(exc.exception), (
            "HAC settings accepted an unsupported kernel")

    def test_negative_bandwidth_raises_exception(self):
        with self.assertRaises(HacException):
            HacConfig(bandwidth=-1.0)
