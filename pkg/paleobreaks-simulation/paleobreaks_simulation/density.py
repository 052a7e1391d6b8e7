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
import typing

import numpy as np
import pandas as pd
from scipy.stats import gaussian_kde

from .exceptions import SimulationException
from .study import StudyMode, StudyResult

if typing.TYPE_CHECKING:
    from typing import Dict, Optional, Sequence, Union


def break_positions(result):
    # type: (StudyResult) -> np.ndarray
    """First estimated break of each successful replication as a process
    time.
    """
    dgp = result.config.dgp
    return np.array([dgp.position_of(r.break_indices[0])
                     for r in result.successful if r.break_indices],
                    dtype=float)


def density_frame(positions, grid=None):
    # type: (Sequence[float], Optional[Sequence[float]]) -> pd.DataFrame
    """Histogram counts and Gaussian kernel density of break estimates
    on an integer grid.

    Estimates without spread give a spike: density 1 at their value.

    :param positions: Break estimates.
    :type positions: Sequence[float]
    :param grid: Evaluation points, every integer between the smallest
        and largest estimate by default.
    :type grid: Sequence[float]
    :rtype: pandas.DataFrame
    :raises: :py:class:`paleobreaks_simulation.exceptions.SimulationException`
        with fewer than two estimates.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1)
    if positions.size < 2:
        raise SimulationException(
            "A density needs at least 2 break estimates, got {}".format(
                positions.size))
    if grid is None:
        grid = np.arange(np.floor(positions.min()),
                         np.ceil(positions.max()) + 1)
    grid = np.asarray(grid, dtype=float)

    counts = np.array([np.count_nonzero(np.rint(positions) == g)
                       for g in grid])
    if np.ptp(positions) == 0:
        density = np.where(grid == positions[0], 1.0, 0.0)
    else:
        density = gaussian_kde(positions)(grid)
    return pd.DataFrame({
        "position": grid,
        "count": counts,
        "share": counts / float(positions.size),
        "density": density,
    })


def density_export(results):
    # type: (Union[StudyResult, Dict[str, StudyResult]]) -> pd.DataFrame
    """Density data of the estimated breaks of ``fixed`` mode studies,
    one block per model spec, on the common grid ``1..n_obs``.

    :param results: A study, or studies keyed by a label such as the
        model spec.
    :type results: Union[StudyResult, Dict[str, StudyResult]]
    :rtype: pandas.DataFrame
    """
    if isinstance(results, StudyResult):
        results = {results.config.spec_kind: results}

    frames = []
    for label, result in results.items():
        if result.config.mode != StudyMode.FIXED.value:
            raise SimulationException(
                "Study '{}' estimated no break dates".format(label))
        grid = np.arange(1, result.config.dgp.n_obs + 1)
        frame = density_frame(break_positions(result), grid)
        frame.insert(0, "spec", label)
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)
