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
import itertools
import unittest

import numpy as np

from paleobreaks_core.binning import BinnedSeries
from paleobreaks_core.engine import (
    BreakFit, SsrByM, default_max_breaks, dp_global_breaks, estimate,
    estimate_path, fit_partition, max_feasible_breaks, ssr_path)
from paleobreaks_core.exceptions import InfeasibleBreaksException
from paleobreaks_core.regression import (
    GlobalCoefficients, ModelSpec, SegmentCost, design_rows, fit_segments,
    segment_ssr_table)


def _exhaustive(table, n_obs, m, min_len):
    best_ssr, best_breaks = np.inf, None
    for ends in itertools.combinations(range(n_obs - 1), m):
        edges = [-1] + list(ends) + [n_obs - 1]
        if any(b - a < min_len for a, b in zip(edges, edges[1:])):
            continue
        ssr = sum(table[a + 1, b] for a, b in zip(edges, edges[1:]))
        if ssr < best_ssr:
            best_ssr, best_breaks = ssr, list(ends)
    return best_ssr, best_breaks


def _fixed_ar_series(n_obs, break_at, seed, intercepts=(1.0, 3.0),
                     phi=0.5, scale=0.2):
    rng = np.random.default_rng(seed)
    values = np.zeros(n_obs)
    for t in range(1, n_obs):
        intercept = intercepts[0] if t <= break_at else intercepts[1]
        values[t] = intercept + phi * values[t - 1] + rng.normal(
            scale=scale)
    return values


class TestDynamicProgramming(unittest.TestCase):
    def test_step_series(self):
        values = [0.0, 0.0, 0.0, 10.0, 10.0, 10.0]
        spec = ModelSpec("mean", 2)

        fit = estimate(values, spec, 1)

        assert fit.break_indices == [2], (
            "Estimate didn't place the break at the end of the first step")
        assert fit.total_ssr == 0.0, (
            "Estimate returned a nonzero SSR for a step series")

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(2024)
        kinds = ("mean", "ar", "fixed-ar")
        for instance in range(200):
            kind = kinds[instance % 3]
            lagged = kind != "mean"
            n_values = int(rng.integers(10, 41)) + lagged
            min_len = min(int(rng.integers(2, 5)) + lagged,
                          (n_values - lagged) // 2)
            values = rng.normal(size=n_values)
            values[n_values // 2:] += rng.normal(scale=2.0)
            spec = ModelSpec(kind, min_len)
            beta = (GlobalCoefficients([rng.uniform(-0.8, 0.8)])
                    if kind == "fixed-ar" else None)
            design = design_rows(values, spec)
            max_breaks = min(int(rng.integers(1, 4)),
                             max_feasible_breaks(design.n_obs, min_len))
            table = segment_ssr_table(values, spec, beta)

            path = dp_global_breaks(
                SegmentCost.from_design(design, beta), design.n_obs,
                max_breaks, min_len, design.offset)

            assert design.n_obs <= 40 and 1 <= max_breaks <= 3, (
                "Instance {} outside the searched range".format(instance))
            assert len(path.optimal_ssr) == max_breaks + 1, (
                "Path of instance {} is missing break counts".format(
                    instance))
            for m in range(max_breaks + 1):
                expected_ssr, expected_breaks = _exhaustive(
                    table, design.n_obs, m, min_len)
                np.testing.assert_allclose(
                    path.optimal_ssr[m], expected_ssr, rtol=1e-12,
                    atol=1e-12)
                assert path.optimal_breaks[m] == [
                    b + design.offset for b in expected_breaks], (
                    "Dynamic programming partition differs from exhaustive "
                    "search for {} instance {} and m={}".format(
                        kind, instance, m))

    def test_fixed_beta_table_matches_adjusted_regression(self):
        values = _fixed_ar_series(30, 14, seed=9)
        spec = ModelSpec("fixed-ar", 3)
        beta = GlobalCoefficients([0.4])

        table = segment_ssr_table(values, spec, beta)

        adjusted = values[1:] - 0.4 * values[:-1]
        for start, end in [(0, 2), (3, 17), (10, 28), (0, 28)]:
            segment = adjusted[start:end + 1]
            expected = float(((segment - segment.mean()) ** 2).sum())
            np.testing.assert_allclose(
                table[start, end], expected, rtol=1e-10, atol=1e-12)

    def test_dense_table_gives_same_result(self):
        values = np.random.default_rng(1).normal(size=25)
        spec = ModelSpec("ar", 3)
        design = design_rows(values, spec)
        cost = SegmentCost.from_design(design)

        from_cost = dp_global_breaks(cost, design.n_obs, 3, 3, 1)
        from_table = dp_global_breaks(cost.matrix(3), design.n_obs, 3, 3, 1)

        assert from_cost.optimal_breaks == from_table.optimal_breaks, (
            "Dense table and segment cost gave different partitions")
        np.testing.assert_allclose(
            from_cost.optimal_ssr, from_table.optimal_ssr, rtol=1e-12)

    def test_ties_break_toward_earliest_index(self):
        spec = ModelSpec("mean", 2)

        fit = estimate(np.full(10, 5.0), spec, 2)

        assert fit.break_indices == [1, 3], (
            "Ties weren't broken toward the earliest breaks")
        assert fit.total_ssr == 0.0, (
            "Constant series had a nonzero SSR")

    def test_ssr_non_increasing_in_m(self):
        values = np.random.default_rng(12).normal(size=60).cumsum()
        for kind in ("mean", "ar"):
            path = ssr_path(values, ModelSpec(kind, 3), max_breaks=5)

            assert np.all(np.diff(path.optimal_ssr) <= 1e-9), (
                "SSR path of the {} model increased with m".format(kind))

    def test_ssr_can_rise_at_feasibility_limit(self):
        values = [0.0, 0.0, 0.0, 10.0, 10.0, 10.0]

        path = ssr_path(values, ModelSpec("mean", 2), max_breaks=2)

        assert path.optimal_breaks[1] == [2], (
            "Single break didn't split the two steps")
        assert path.optimal_breaks[2] == [1, 3], (
            "Two breaks weren't forced into minimum length regimes")
        np.testing.assert_allclose(
            path.optimal_ssr[1:], [0.0, 50.0], atol=1e-9)

    def test_infeasible_request_reduced_with_warning(self):
        cost = SegmentCost(np.arange(10.0))

        with self.assertLogs("paleobreaks.core", level="WARNING") as logs:
            path = dp_global_breaks(cost, 10, 8, 3)

        assert path.max_breaks == 2 and path.max_feasible_m == 2, (
            "Dynamic programming didn't reduce to the feasible count")
        assert any("at most 2 fit" in line for line in logs.output), (
            "Dynamic programming didn't warn about the reduced count")

    def test_single_regime_impossible_raises_exception(self):
        with self.assertRaises(InfeasibleBreaksException) as exc:
            dp_global_breaks(SegmentCost(np.arange(3.0)), 3, 1, 5)

        assert exc.exception.max_feasible_m == -1, (
            "Exception didn't carry the maximum feasible break count")

    def test_segment_lengths(self):
        path = SsrByM(optimal_ssr=[3.0, 1.0], optimal_breaks=[[], [5]],
                      max_feasible_m=1, n_obs=10, offset=1)

        assert path.segment_lengths(1) == [5, 5], (
            "Segment lengths ignored the sample offset")
        assert path.segment_lengths(0) == [10], (
            "Segment lengths of the break-free model were incorrect")


class TestEstimate(unittest.TestCase):
    def test_zero_breaks_is_full_sample_fit(self):
        values = np.random.default_rng(3).normal(size=30)

        fit = estimate(values, ModelSpec("mean", 5), 0)

        assert fit.break_indices == [] and len(fit.segment_fits) == 1, (
            "Zero-break estimate returned more than one regime")
        self.assertAlmostEqual(fit.segment_fits[0].delta[0], values.mean())
        assert fit.break_ages is None, (
            "Plain arrays shouldn't carry break ages")

    def test_too_many_breaks_raises_exception(self):
        with self.assertRaises(InfeasibleBreaksException) as exc:
            estimate(np.arange(20.0), ModelSpec("mean", 5), 4)

        assert exc.exception.max_feasible_m == 3, (
            "Exception didn't report the maximum feasible break count")
        assert "at most 3 are feasible" in str(exc.exception), (
            "Exception message didn't name the feasible count")

    def test_planted_mean_shifts_recovered(self):
        rng = np.random.default_rng(40)
        values = rng.normal(size=40)
        values[13:27] += 10.0

        fit = estimate(values, ModelSpec("mean", 4), 2)

        assert fit.break_indices == [12, 26], (
            "Estimate didn't recover the planted mean shifts")

    def test_break_ages_follow_binned_axis(self):
        values = np.concatenate([np.zeros(10), np.full(10, 4.0)])
        values = values + np.random.default_rng(0).normal(
            scale=0.01, size=20)
        series = BinnedSeries(bin_size=25, start_age=10.0125, values=values)

        fit = estimate(series, ModelSpec("mean", 3), 1)

        assert fit.break_indices == [9], (
            "Estimate didn't locate the break of a binned series")
        self.assertAlmostEqual(fit.break_ages[0], 10.0125 - 9 * 0.025)

    def test_total_ssr_matches_refit_partition(self):
        values = np.random.default_rng(17).normal(size=80).cumsum()
        spec = ModelSpec("ar", 8)

        fit = estimate(values, spec, 3)
        _, _, total = fit_segments(values, spec, fit.break_indices)

        np.testing.assert_allclose(fit.total_ssr, total, rtol=1e-9)
        for fit_segment in fit.segment_fits:
            assert fit_segment.n_obs >= 8, (
                "Estimate returned a regime below the minimum length")

    def test_fixed_ar_recovers_break_and_converges(self):
        values = _fixed_ar_series(300, 150, seed=21)

        fit = estimate(values, ModelSpec("fixed-ar", 25), 1)

        assert fit.converged, (
            "Fixed AR iteration didn't converge on a clear break")
        assert abs(fit.break_indices[0] - 150) <= 2, (
            "Fixed AR estimate missed the planted break")
        assert abs(fit.beta.beta[0] - 0.5) < 0.1, (
            "Fixed AR estimate missed the AR coefficient")

    def test_fixed_ar_fixed_point(self):
        values = _fixed_ar_series(200, 80, seed=5)
        spec = ModelSpec("fixed-ar", 20)
        fit = estimate(values, spec, 1)

        again = estimate(values, spec, 1, beta=fit.beta, max_iterations=2)

        np.testing.assert_allclose(
            again.total_ssr, fit.total_ssr, rtol=1e-6)

    def test_fixed_ar_non_convergence_warns(self):
        values = _fixed_ar_series(120, 60, seed=8)

        with self.assertLogs("paleobreaks.core", level="WARNING") as logs:
            fit = estimate(values, ModelSpec("fixed-ar", 20), 1,
                           max_iterations=1)

        assert not fit.converged and fit.iterations == 1, (
            "Single iteration was reported as converged")
        assert any("did not converge" in line for line in logs.output), (
            "Estimate didn't warn about non-convergence")


class TestEstimatePath(unittest.TestCase):
    def test_one_fit_per_break_count(self):
        values = np.random.default_rng(30).normal(size=50)

        fits = estimate_path(values, ModelSpec("mean", 5), max_breaks=4)

        assert [f.m for f in fits] == [1, 2, 3, 4], (
            "Estimate path didn't return one fit per break count")
        for fit in fits:
            assert isinstance(fit, BreakFit) and len(
                fit.break_indices) == fit.m, (
                "Estimate path returned an inconsistent fit")

    def test_fixed_ar_path_is_monotone(self):
        values = _fixed_ar_series(240, 120, seed=13)
        spec = ModelSpec("fixed-ar", 20)

        path = ssr_path(values, spec, max_breaks=4)

        assert len(path.optimal_ssr) == 5, (
            "Fixed AR SSR path didn't cover m = 0..4")
        slack = 1e-9 * path.optimal_ssr[0]
        assert np.all(np.diff(path.optimal_ssr) <= slack), (
            "Fixed AR SSR path increased with m")
        assert path.optimal_breaks[0] == [], (
            "Fixed AR SSR path had breaks at m = 0")

    def test_default_max_breaks_capped(self):
        assert default_max_breaks(2684, 25) == 26, (
            "Default maximum break count wasn't capped at 26")
        assert default_max_breaks(100, 25) == 3, (
            "Default maximum break count exceeded the feasible count")

    def test_fit_partition(self):
        values = [1.0, 1.0, 2.0, 2.0, 2.0]

        fit = fit_partition(values, ModelSpec("mean"), [1])

        assert fit.m == 1 and fit.total_ssr == 0.0, (
            "Fit partition returned an incorrect fit")
