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
import unittest

import numpy as np

from paleobreaks_core.binning import BinnedSeries
from paleobreaks_core.exceptions import RegressionException
from paleobreaks_core.hac import HacConfig
from paleobreaks_core.regression import (
    GlobalCoefficients, ModelKind, ModelSpec, SegmentCost, design_rows,
    fit_segments, min_segment_obs_from_h, residuals_of, segment_ssr_table)


def _ols_ssr(y, z):
    coefficients = np.linalg.solve(z.T @ z, z.T @ y)
    residuals = y - z @ coefficients
    return residuals @ residuals


class TestModelSpec(unittest.TestCase):
    def test_kind_from_value(self):
        spec = ModelSpec(kind="ar", min_segment_obs=5)

        assert spec.kind is ModelKind.AR, (
            "Model spec didn't resolve the kind value")
        assert spec.q == 2 and spec.p == 0, (
            "Model spec returned incorrect coefficient counts for AR")
        assert spec.hac == HacConfig(), (
            "Model spec didn't default the HAC settings")

    def test_coefficient_counts(self):
        assert (ModelKind.MEAN.q, ModelKind.MEAN.p) == (1, 0)
        assert (ModelKind.FIXED_AR.q, ModelKind.FIXED_AR.p) == (1, 1)
        assert (ModelKind.AR.q, ModelKind.AR.p) == (2, 0)

    def test_unknown_kind_raises_exception(self):
        with self.assertRaises(RegressionException) as exc:
            ModelSpec(kind="arma")

        assert "Unknown model kind 'arma'" in str(exc.exception), (
            "Model spec accepted an unknown kind")

    def test_min_segment_below_q_raises_exception(self):
        with self.assertRaises(RegressionException) as exc:
            ModelSpec(kind=ModelKind.AR, min_segment_obs=1)

        assert "below the 2 segment coefficients" in str(exc.exception), (
            "Model spec accepted a minimum segment shorter than q")

    def test_min_segment_from_duration(self):
        assert min_segment_obs_from_h(2.5, 25) == 100, (
            "Duration conversion returned an incorrect count")
        assert ModelSpec.from_h("mean", 1.0, 10).min_segment_obs == 100, (
            "Spec from duration returned an incorrect minimum length")


class TestDesignRows(unittest.TestCase):
    def test_mean_rows(self):
        design = design_rows([1.0, 2.0, 3.0], ModelSpec("mean"))

        assert design.n_obs == 3 and design.offset == 0, (
            "Mean design didn't use every observation")
        np.testing.assert_array_equal(design.z, np.ones((3, 1)))
        assert design.x.shape == (3, 0), (
            "Mean design has state-independent regressors")

    def test_ar_rows(self):
        design = design_rows([1.0, 2.0, 3.0], ModelSpec("ar", 2))

        np.testing.assert_array_equal(design.z, [[1.0, 1.0], [1.0, 2.0]])
        np.testing.assert_array_equal(design.y, [2.0, 3.0])
        assert design.offset == 1, (
            "AR design didn't drop the first observation")

    def test_fixed_ar_rows(self):
        series = BinnedSeries(bin_size=25, start_age=67.1,
                              values=np.arange(2685, dtype=float))

        design = design_rows(series, ModelSpec("fixed-ar", 100))

        assert design.n_obs == 2684, (
            "Fixed AR design returned an incorrect row count")
        np.testing.assert_array_equal(design.x[:3, 0], [0.0, 1.0, 2.0])

    def test_too_short_raises_exception(self):
        with self.assertRaises(RegressionException) as exc:
            design_rows([1.0], ModelSpec("ar", 2))

        assert "too short" in str(exc.exception), (
            "Design rows accepted a one-point series for AR")


class TestSegmentSsrTable(unittest.TestCase):
    def test_constant_segment(self):
        table = segment_ssr_table([5.0, 5.0, 5.0], ModelSpec("mean"))

        self.assertAlmostEqual(table[0, 2], 0.0, places=12)

    def test_two_point_segment(self):
        table = segment_ssr_table([0.0, 1.0], ModelSpec("mean"))

        self.assertAlmostEqual(table[0, 1], 0.5, places=12)
        assert np.isinf(table[1, 0]), (
            "Table has a finite entry below the diagonal")

    def test_ar_table_matches_direct_ols(self):
        values = np.random.default_rng(7).normal(size=15)
        table = segment_ssr_table(values, ModelSpec("ar", 2))
        y, lag = values[1:], values[:-1]

        for i in range(14):
            for j in range(i + 2, 14):
                z = np.column_stack([np.ones(j - i + 1), lag[i:j + 1]])
                expected = _ols_ssr(y[i:j + 1], z)
                np.testing.assert_allclose(
                    table[i, j], expected, rtol=1e-10, atol=1e-12)
            assert np.isinf(table[i, i]), (
                "AR table has a finite single-observation segment")

    def test_fixed_ar_table_uses_adjusted_response(self):
        values = np.random.default_rng(8).normal(size=12)
        beta = GlobalCoefficients([0.4])

        table = segment_ssr_table(values, ModelSpec("fixed-ar", 1), beta)

        adjusted = values[1:] - 0.4 * values[:-1]
        segment = adjusted[2:9]
        self.assertAlmostEqual(
            table[2, 8], np.sum((segment - segment.mean()) ** 2), places=10)

    def test_fixed_ar_without_beta_raises_exception(self):
        with self.assertRaises(RegressionException) as exc:
            segment_ssr_table([1.0, 2.0, 3.0], ModelSpec("fixed-ar", 1))

        assert "fixed coefficient" in str(exc.exception), (
            "Table accepted a fixed AR spec without coefficients")

    def test_degenerate_ar_segment_is_infinite(self):
        values = [1.0, 1.0, 1.0, 1.0, 2.0, 3.0]

        table = segment_ssr_table(values, ModelSpec("ar", 2))

        assert np.isinf(table[0, 2]), (
            "Segment with a constant lag wasn't marked degenerate")
        assert np.isfinite(table[0, 4]), (
            "Segment with a varying lag was marked degenerate")

    def test_block_matches_matrix(self):
        values = np.random.default_rng(2).normal(size=20)
        cost = SegmentCost(values[1:], values[:-1])
        matrix = cost.matrix(2)

        starts = np.array([0, 3, 5])
        ends = np.array([4, 10, 18])
        np.testing.assert_allclose(
            cost.block(starts, ends), matrix[starts, ends])


class TestFitSegments(unittest.TestCase):
    def test_mean_two_regimes(self):
        fits, beta, total = fit_segments(
            [1.0, 1.0, 2.0, 2.0], ModelSpec("mean"), [1])

        assert [f.delta for f in fits] == [[1.0], [2.0]], (
            "Fit returned incorrect regime means")
        assert total == 0.0, (
            "Fit returned a nonzero SSR for constant regimes")
        assert beta.p == 0, (
            "Mean fit returned state-independent coefficients")
        assert (fits[0].start, fits[0].end) == (0, 1), (
            "Fit returned incorrect regime bounds")

    def test_total_is_sum_of_segments_and_table(self):
        values = np.random.default_rng(4).normal(size=30).cumsum()
        spec = ModelSpec("ar", 3)
        breaks = [9, 19]

        fits, _, total = fit_segments(values, spec, breaks)
        table = segment_ssr_table(values, spec)

        np.testing.assert_allclose(total, sum(f.ssr for f in fits))
        np.testing.assert_allclose(
            total, table[0, 8] + table[9, 18] + table[19, 28], rtol=1e-9)
        for fit in fits:
            np.testing.assert_allclose(
                fit.sigma2, fit.ssr / (fit.n_obs - 2))
            np.testing.assert_allclose(fit.sigma, np.sqrt(fit.sigma2))

    def test_mean_coefficient_is_sample_mean(self):
        values = np.random.default_rng(6).normal(size=25)

        fits, _, _ = fit_segments(values, ModelSpec("mean", 2), [11])

        self.assertAlmostEqual(fits[0].delta[0], values[:12].mean())
        self.assertAlmostEqual(fits[1].delta[0], values[12:].mean())

    def test_fixed_ar_joint_regression(self):
        rng = np.random.default_rng(9)
        values = np.empty(200)
        values[0] = 0.0
        for t in range(1, 200):
            intercept = 1.0 if t < 100 else 3.0
            values[t] = intercept + 0.5 * values[t - 1] + rng.normal(
                scale=0.1)
        spec = ModelSpec("fixed-ar", 10)

        fits, beta, total = fit_segments(values, spec, [99])

        w = np.zeros((199, 3))
        w[:99, 0] = 1.0
        w[99:, 1] = 1.0
        w[:, 2] = values[:-1]
        expected = np.linalg.lstsq(w, values[1:], rcond=None)[0]
        np.testing.assert_allclose(beta.beta, expected[2:], rtol=1e-8)
        np.testing.assert_allclose(
            [f.delta[0] for f in fits], expected[:2], rtol=1e-8)
        assert abs(beta.beta[0] - 0.5) < 0.05, (
            "Fixed AR fit didn't recover the AR coefficient")

        design = design_rows(values, spec)
        residuals = residuals_of(design, fits, beta)
        np.testing.assert_allclose(residuals @ residuals, total)

    def test_unordered_breaks_raise_exception(self):
        with self.assertRaises(RegressionException) as exc:
            fit_segments(np.arange(10.0), ModelSpec("mean"), [5, 3])

        assert "strictly increasing" in str(exc.exception), (
            "Fit accepted decreasing breaks")

    def test_short_segment_raises_exception(self):
        with self.assertRaises(RegressionException) as exc:
            fit_segments(np.arange(10.0), ModelSpec("mean", 3), [1])

        assert "shorter than the minimum" in str(exc.exception), (
            "Fit accepted a segment below the minimum length")
