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
import typing

import numpy as np
import pandas as pd

from paleobreaks_core.binning import (
    WESTERHOLD_BOUNDARIES, WESTERHOLD_STATE_NAMES)
from paleobreaks_svg_renderer.svg_plot_renderer import (
    PlotLayers, SvgPlotRenderer)

if typing.TYPE_CHECKING:
    from typing import Dict, List, Optional, Sequence
    from paleobreaks_core.binning import BinnedSeries
    from paleobreaks_core.engine import BreakFit
    from .writer import ResultWriter

SERIES_FILE = "series.csv"
BREAKS_FILE = "breaks.csv"
CI_RECTS_FILE = "ci_rects.csv"
REFERENCE_FILE = "reference.csv"
SVG_FILE = "plot.svg"


def reference_frame():
    # type: () -> pd.DataFrame
    """Reference state boundaries with the state that ends at each."""
    return pd.DataFrame({
        "age_Ma": list(WESTERHOLD_BOUNDARIES),
        "label": ["{} / {}".format(older, younger) for older, younger in
                  zip(WESTERHOLD_STATE_NAMES, WESTERHOLD_STATE_NAMES[1:])],
    })


def plot_layers(fits, series):
    # type: (Sequence[BreakFit], BinnedSeries) -> Dict[str, pd.DataFrame]
    """Figure layers of one or more fits of a series.

    ``breaks`` and ``ci_rects`` have one row per break of each fit,
    keyed by the fit's break count ``m``; interval rectangles are given
    by their older and younger bound in Ma. Unbounded intervals keep
    their row with empty bounds.

    :rtype: dict(str, pandas.DataFrame)
    """
    break_rows = []  # type: List[Dict[str, object]]
    rect_rows = []  # type: List[Dict[str, object]]
    for fit in fits:
        for j, index in enumerate(fit.break_indices):
            break_rows.append({
                "m": fit.m, "break": j + 1, "index": int(index),
                "age_Ma": series.age_of(index),
                "value": float(series.values[index])})
        for j, ci in enumerate(fit.confidence_intervals):
            bounds = (sorted((ci.lower, ci.upper)) if ci.bounded
                      else [np.nan, np.nan])
            rect_rows.append({
                "m": fit.m, "break": j + 1, "older_Ma": bounds[1],
                "younger_Ma": bounds[0], "level": ci.level,
                "flags": ";".join(ci.flags)})

    return {
        SERIES_FILE: pd.DataFrame({"age_Ma": np.round(series.ages, 9),
                                   "value": series.values}),
        BREAKS_FILE: pd.DataFrame(
            break_rows, columns=["m", "break", "index", "age_Ma", "value"]),
        CI_RECTS_FILE: pd.DataFrame(
            rect_rows, columns=["m", "break", "older_Ma", "younger_Ma",
                                "level", "flags"]),
        REFERENCE_FILE: reference_frame(),
    }


def emit_plot_data(fits, series, output_dir, writer, svg=False,
                   renderer=None):
    # type: (Sequence[BreakFit], BinnedSeries, str, ResultWriter, bool, Optional[SvgPlotRenderer]) -> List[str]
    """Write the figure layers of fits as CSV files, and the fit with
    the most breaks as ``plot.svg`` when ``svg`` is set.

    :return: Written paths.
    :rtype: list(str)
    """
    layers = plot_layers(fits, series)
    written = [writer.write_frame(os.path.join(output_dir, name), frame)
               for name, frame in layers.items()]
    if svg:
        renderer = renderer or SvgPlotRenderer()
        last = max(fits, key=lambda f: f.m) if fits else None
        intervals = ([(ci.lower, ci.upper) for ci in last.confidence_intervals
                      if ci.bounded] if last is not None else [])
        document = renderer.render(PlotLayers(
            ages=series.ages, values=series.values,
            break_ages=[series.age_of(i) for i in last.break_indices]
            if last is not None else [],
            intervals=intervals,
            reference=list(zip(WESTERHOLD_BOUNDARIES,
                               ["{:g} Ma".format(b)
                                for b in WESTERHOLD_BOUNDARIES])),
            title="{} breaks, {:g} kyr bins".format(
                last.m if last is not None else 0, series.bin_size)))
        written.append(writer.write_text(
            os.path.join(output_dir, SVG_FILE), document))
    return written
