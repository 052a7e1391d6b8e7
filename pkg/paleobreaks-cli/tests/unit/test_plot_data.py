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
import os
import tempfile
import unittest

try:
    import mock
except ImportError:
    from unittest import mock
import numpy as np
import pandas as pd

from paleobreaks_cli.config import RunConfig
from paleobreaks_cli.plot_data import (
    BREAKS_FILE, CI_RECTS_FILE, REFERENCE_FILE, SERIES_FILE, SVG_FILE,
    emit_plot_data, plot_layers, reference_frame)
from paleobreaks_cli.writer import ResultWriter
from paleobreaks_core.binning import BinnedSeries
from paleobreaks_core.engine import estimate, estimate_path
from paleobreaks_core.inference import break_confidence_intervals
from paleobreaks_core.regression import ModelSpec


def _step_series():
    rng = np.random.default_rng(3)
    values = np.concatenate([np.full(60, 1.0), np.full(60, 3.0)])
    return BinnedSeries(bin_size=25, start_age=2.9875,
                        values=values + rng.normal(scale=0.2, size=120))


class TestPlotLayers(unittest.TestCase):
    def setUp(self):
        self.series = _step_series()
        self.spec = ModelSpec("mean", 20)

    def test_fit_without_breaks_has_series_only(self):
        fit = estimate(self.series, self.spec, 0)

        layers = plot_layers([fit], self.series)

        assert len(layers[SERIES_FILE]) == 120, "Series layer is incomplete"
        assert layers[BREAKS_FILE].empty, "Break layer isn't empty"
        assert layers[CI_RECTS_FILE].empty, "Interval layer isn't empty"

    def test_interval_rectangles_are_ordered(self):
        fit = estimate(self.series, self.spec, 1)
        break_confidence_intervals(fit)

        layers = plot_layers([fit], self.series)

        rect = layers[CI_RECTS_FILE].iloc[0]
        assert rect["older_Ma"] >= rect["younger_Ma"], (
            "Interval rectangle bounds are swapped")
        age = layers[BREAKS_FILE].iloc[0]["age_Ma"]
        assert rect["younger_Ma"] <= age <= rect["older_Ma"], (
            "Interval rectangle doesn't contain its break")

    def test_reversed_series_reports_ages(self):
        reversed_series = self.series.reversed()
        fit = estimate(reversed_series, self.spec, 1)
        break_confidence_intervals(fit)

        layers = plot_layers([fit], reversed_series)

        rect = layers[CI_RECTS_FILE].iloc[0]
        assert rect["older_Ma"] >= rect["younger_Ma"], (
            "Interval rectangle of a reversed fit has swapped bounds")
        assert 1.0 < layers[BREAKS_FILE].iloc[0]["age_Ma"] < 2.0, (
            "Reversed fit isn't reported in Ma before present")

    def test_path_rows_per_break_count(self):
        fits = estimate_path(self.series, self.spec, 3)
        for fit in fits:
            break_confidence_intervals(fit)

        layers = plot_layers(fits, self.series)

        assert list(layers[BREAKS_FILE].groupby("m").size()) == [1, 2, 3], (
            "Break layer doesn't stack one row per break of each fit")
        assert len(layers[CI_RECTS_FILE]) == 6, (
            "Interval layer doesn't have a row per break")

    def test_unbounded_interval_keeps_row(self):
        fit = estimate(self.series, self.spec, 1)
        fit.confidence_intervals = [mock.MagicMock(
            bounded=False, lower=None, upper=None, level=0.95,
            flags=["vanishing-change"])]

        rect = plot_layers([fit], self.series)[CI_RECTS_FILE].iloc[0]

        assert np.isnan(rect["older_Ma"]) and rect["flags"] == \
            "vanishing-change", "Unbounded interval row was lost"

    def test_reference_boundaries(self):
        frame = reference_frame()

        assert list(frame["age_Ma"]) == [56.0, 47.0, 34.0, 13.9, 3.3], (
            "Reference layer doesn't hold the state boundaries")


class TestEmitPlotData(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.writer = ResultWriter(RunConfig(command="estimate"))
        self.series = _step_series()
        self.fit = estimate(self.series, ModelSpec("mean", 20), 1)
        break_confidence_intervals(self.fit)

    def test_csv_layers_are_written(self):
        written = emit_plot_data([self.fit], self.series,
                                 self.directory.name, self.writer)

        names = sorted(os.path.basename(p) for p in written)
        assert names == sorted([SERIES_FILE, BREAKS_FILE, CI_RECTS_FILE,
                                REFERENCE_FILE]), "Layer files missing"
        breaks = pd.read_csv(os.path.join(self.directory.name, BREAKS_FILE),
                             comment="#")
        assert list(breaks["m"]) == [1], "Break file has the wrong rows"

    def test_svg_is_rendered(self):
        renderer = mock.MagicMock()
        renderer.render.return_value = "<svg/>"

        written = emit_plot_data([self.fit], self.series,
                                 self.directory.name, self.writer,
                                 svg=True, renderer=renderer)

        assert os.path.basename(written[-1]) == SVG_FILE, (
            "SVG file wasn't written")
        layers = renderer.render.call_args[0][0]
        assert len(layers.break_ages) == 1 and len(layers.intervals) == 1, (
            "SVG layers don't hold the fit's break and interval")
