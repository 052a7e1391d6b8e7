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

from paleobreaks_simulation.density import (
    break_positions, density_export, density_frame)
from paleobreaks_simulation.exceptions import SimulationException
from paleobreaks_simulation.study import (
    Replication, StudyConfig, StudyResult)


def _result(break_indices, spec_kind="fixed-ar", mode="fixed"):
    config = StudyConfig(dgp="2", spec_kind=spec_kind, mode=mode,
                         replications=max(len(break_indices), 1))
    replications = [Replication(index=i, seed=i, break_indices=[b])
                    for i, b in enumerate(break_indices)]
    return StudyResult(config=config, replications=replications)


class TestDensityFrame(unittest.TestCase):
    def test_duplicated_estimate_is_a_spike(self):
        frame = density_frame([250, 250], grid=np.arange(245, 256))

        assert frame.loc[frame["position"] == 250, "density"].item() == 1.0, (
            "Duplicated estimates didn't give a spike")
        assert frame["density"].sum() == 1.0, (
            "Spike has mass away from the estimate")
        assert frame["count"].sum() == 2, "Histogram lost estimates"

    def test_uniform_estimates_give_flat_histogram(self):
        frame = density_frame(np.arange(1, 101))

        assert list(frame["position"]) == list(range(1, 101)), (
            "Default grid doesn't span the estimates")
        assert (frame["count"] == 1).all(), "Histogram isn't flat"
        np.testing.assert_allclose(frame["share"], 0.01)

    def test_density_integrates_to_one(self):
        rng = np.random.default_rng(0)
        estimates = rng.normal(250, 5, 500)

        frame = density_frame(estimates, grid=np.arange(150, 351))

        assert abs(frame["density"].sum() - 1.0) < 0.01, (
            "Kernel density doesn't integrate to one")
        assert frame.loc[frame["density"].idxmax(), "position"] in range(
            245, 256), "Kernel density doesn't peak near the estimates"

    def test_single_estimate_raises(self):
        with self.assertRaises(SimulationException) as exc:
            density_frame([250])

        assert "at least 2" in str(exc.exception), (
            "Density didn't reject a single estimate")


class TestDensityExport(unittest.TestCase):
    def test_positions_use_process_time(self):
        result = _result([249, 250])

        np.testing.assert_array_equal(break_positions(result), [250, 251])

    def test_failed_replications_are_skipped(self):
        result = _result([249, 250, 251])
        result.replications[1].error = "RegressionException: singular"

        np.testing.assert_array_equal(break_positions(result), [250, 252])

    def test_blocks_per_spec(self):
        results = {"mean": _result([100, 300, 400], "mean"),
                   "fixed-ar": _result([248, 249, 250])}

        frame = density_export(results)

        assert set(frame["spec"]) == {"mean", "fixed-ar"}, (
            "Density export lost a spec")
        assert (frame.groupby("spec").size() == 500).all(), (
            "Density export didn't use the 1..n_obs grid")

    def test_select_study_raises(self):
        with self.assertRaises(SimulationException):
            density_export(_result([], mode="select"))
