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
import logging
import typing
from concurrent.futures import ProcessPoolExecutor
from enum import Enum

import numpy as np
import pandas as pd

from paleobreaks_core.engine import estimate, ssr_path
from paleobreaks_core.inference import (
    break_confidence_intervals, information_criteria)
from paleobreaks_core.regression import ModelKind, ModelSpec
from paleobreaks_runtime.exceptions import PaleoBreaksException

from .dgp import DgpConfig, dgp_config, generate
from .exceptions import SimulationException

if typing.TYPE_CHECKING:
    from typing import Dict, List, Optional, Union

logger = logging.getLogger("paleobreaks.simulation")

DEFAULT_REPLICATIONS = 1000
DEFAULT_MIN_SEGMENT_OBS = 25
DEFAULT_MAX_BREAKS = 3
CRITERIA = ("bic", "lwz", "kt")


class StudyMode(Enum):
    """How the number of breaks is handled in each replication.

    * ``FIXED``: impose ``m`` breaks and compute their intervals.
    * ``SELECT``: choose ``m`` by information criteria on the SSR path.
    """
    FIXED = "fixed"
    SELECT = "select"


class StudyConfig(object):
    """Declarative Monte Carlo study.

    Replication ``r`` draws its path from ``seed + r`` so any replication
    can be rerun on its own.

    :param dgp: Data-generating process, or a table label.
    :type dgp: Union[paleobreaks_simulation.dgp.DgpConfig, str]
    :param spec_kind: Estimated model, see
        :py:class:`paleobreaks_core.regression.ModelKind`.
    :type spec_kind: str
    :param replications: Number of replications.
    :type replications: int
    :param seed: Base seed.
    :type seed: int
    :param mode: ``fixed`` or ``select``.
    :type mode: Union[StudyMode, str]
    :param m: Imposed number of breaks in ``fixed`` mode.
    :type m: int
    :param max_breaks: Largest break count compared in ``select`` mode.
    :type max_breaks: int
    :param min_segment_obs: Minimum segment length of the estimation.
    :type min_segment_obs: int
    :param level: Confidence level of the break intervals.
    :type level: float
    :param workers: Worker processes, 1 runs in process.
    :type workers: int
    :raises: :py:class:`paleobreaks_simulation.exceptions.SimulationException`
    """
    deserialized_types = {
        'dgp': 'paleobreaks_simulation.dgp.DgpConfig',
        'spec_kind': 'str',
        'replications': 'int',
        'seed': 'int',
        'mode': 'str',
        'm': 'int',
        'max_breaks': 'int',
        'min_segment_obs': 'int',
        'level': 'float',
        'workers': 'int'
    }

    attribute_map = {
        'dgp': 'dgp',
        'spec_kind': 'spec',
        'replications': 'replications',
        'seed': 'seed',
        'mode': 'mode',
        'm': 'm',
        'max_breaks': 'max_breaks',
        'min_segment_obs': 'min_segment_obs',
        'level': 'level',
        'workers': 'workers'
    }

    def __init__(
            self, dgp=None, spec_kind=ModelKind.FIXED_AR.value,
            replications=DEFAULT_REPLICATIONS, seed=0,
            mode=StudyMode.FIXED, m=1, max_breaks=DEFAULT_MAX_BREAKS,
            min_segment_obs=DEFAULT_MIN_SEGMENT_OBS, level=0.95, workers=1):
        # type: (Union[DgpConfig, str, None], str, int, int, Union[StudyMode, str], int, int, int, float, int) -> None
        if dgp is None:
            raise SimulationException("A study needs a DGP")
        self.dgp = dgp if isinstance(dgp, DgpConfig) else dgp_config(dgp)
        try:
            self.spec_kind = ModelKind(spec_kind).value
        except ValueError:
            raise SimulationException(
                "Unknown model kind '{}'".format(spec_kind))
        if replications is None or replications < 1:
            raise SimulationException(
                "A study needs at least one replication")
        try:
            self.mode = StudyMode(mode).value
        except ValueError:
            raise SimulationException("Unknown study mode '{}'".format(mode))
        if m < 1 or max_breaks < 1:
            raise SimulationException(
                "Break counts of a study must be at least 1")
        if workers < 1:
            raise SimulationException("At least one worker is needed")

        self.replications = int(replications)
        self.seed = int(seed)
        self.m = int(m)
        self.max_breaks = int(max_breaks)
        self.min_segment_obs = int(min_segment_obs)
        self.level = float(level)
        self.workers = int(workers)

    @property
    def model_spec(self):
        # type: () -> ModelSpec
        return ModelSpec(self.spec_kind, self.min_segment_obs)

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, StudyConfig):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class Replication(object):
    """Outcome of one replication.

    Break positions are series indices; ``error`` holds the failure
    message of a replication that could not be estimated.
    """
    deserialized_types = {
        'index': 'int',
        'seed': 'int',
        'break_indices': 'list[int]',
        'lower_indices': 'list[int]',
        'upper_indices': 'list[int]',
        'covered': 'bool',
        'selected_bic': 'int',
        'selected_lwz': 'int',
        'selected_kt': 'int',
        'error': 'str'
    }

    attribute_map = {
        'index': 'index',
        'seed': 'seed',
        'break_indices': 'break_indices',
        'lower_indices': 'lower_indices',
        'upper_indices': 'upper_indices',
        'covered': 'covered',
        'selected_bic': 'selected_bic',
        'selected_lwz': 'selected_lwz',
        'selected_kt': 'selected_kt',
        'error': 'error'
    }

    def __init__(
            self, index=None, seed=None, break_indices=None,
            lower_indices=None, upper_indices=None, covered=None,
            selected_bic=None, selected_lwz=None, selected_kt=None,
            error=None):
        # type: (int, int, List[int], List[Optional[int]], List[Optional[int]], Optional[bool], Optional[int], Optional[int], Optional[int], Optional[str]) -> None
        self.index = index
        self.seed = seed
        self.break_indices = break_indices or []
        self.lower_indices = lower_indices or []
        self.upper_indices = upper_indices or []
        self.covered = covered
        self.selected_bic = selected_bic
        self.selected_lwz = selected_lwz
        self.selected_kt = selected_kt
        self.error = error

    @property
    def failed(self):
        # type: () -> bool
        return self.error is not None

    def selected(self, criterion):
        # type: (str) -> Optional[int]
        return getattr(self, "selected_" + criterion)

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, Replication):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class StudyAggregates(object):
    """Summary of the successful replications of a study.

    Break dates are reported as times ``t`` of the generating process,
    the first break of each replication in ``fixed`` mode. Coverage is
    None when the process has no break or no interval was computed.
    """
    deserialized_types = {
        'n_replications': 'int',
        'n_failed': 'int',
        'mean_break': 'float',
        'median_lower': 'float',
        'median_upper': 'float',
        'coverage': 'float',
        'mean_selected': 'dict(str, float)',
        'share_correct': 'dict(str, float)'
    }

    attribute_map = {
        'n_replications': 'n_replications',
        'n_failed': 'n_failed',
        'mean_break': 'mean_break',
        'median_lower': 'median_lower',
        'median_upper': 'median_upper',
        'coverage': 'coverage',
        'mean_selected': 'mean_selected',
        'share_correct': 'share_correct'
    }

    def __init__(
            self, n_replications=0, n_failed=0, mean_break=None,
            median_lower=None, median_upper=None, coverage=None,
            mean_selected=None, share_correct=None):
        # type: (int, int, Optional[float], Optional[float], Optional[float], Optional[float], Optional[Dict[str, float]], Optional[Dict[str, float]]) -> None
        self.n_replications = n_replications
        self.n_failed = n_failed
        self.mean_break = mean_break
        self.median_lower = median_lower
        self.median_upper = median_upper
        self.coverage = coverage
        self.mean_selected = mean_selected or {}
        self.share_correct = share_correct or {}

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, StudyAggregates):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class StudyResult(object):
    """Replications of a study with their aggregates and the settings
    needed to interpret them.
    """
    deserialized_types = {
        'config': 'paleobreaks_simulation.study.StudyConfig',
        'replications': 'list[paleobreaks_simulation.study.Replication]',
        'aggregates': 'paleobreaks_simulation.study.StudyAggregates',
        'metadata': 'dict(str, object)'
    }

    attribute_map = {
        'config': 'config',
        'replications': 'replications',
        'aggregates': 'aggregates',
        'metadata': 'metadata'
    }

    def __init__(self, config=None, replications=None, aggregates=None,
                 metadata=None):
        # type: (StudyConfig, List[Replication], StudyAggregates, Dict[str, object]) -> None
        self.config = config
        self.replications = replications or []
        self.aggregates = aggregates
        self.metadata = metadata or {}

    @property
    def successful(self):
        # type: () -> List[Replication]
        return [r for r in self.replications if not r.failed]

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, StudyResult):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def _covers(dgp, lower_indices, upper_indices):
    # type: (DgpConfig, List[Optional[int]], List[Optional[int]]) -> bool
    truth = dgp.true_break_index
    for lower, upper in zip(lower_indices, upper_indices):
        # an unbounded interval covers every date
        if lower is None or upper is None or lower <= truth <= upper:
            return True
    return False


def run_replication(config, index):
    # type: (StudyConfig, int) -> Replication
    """Generate and estimate replication ``index`` of a study.

    Estimation failures are recorded on the returned replication.

    :rtype: Replication
    """
    seed = config.seed + int(index)
    replication = Replication(index=int(index), seed=seed)
    values = generate(config.dgp, np.random.default_rng(seed))
    spec = config.model_spec
    try:
        if config.mode == StudyMode.FIXED.value:
            fit = estimate(values, spec, config.m)
            intervals = break_confidence_intervals(fit, config.level)
            replication.break_indices = list(fit.break_indices)
            replication.lower_indices = [ci.lower_index for ci in intervals]
            replication.upper_indices = [ci.upper_index for ci in intervals]
            if config.dgp.has_break:
                replication.covered = _covers(
                    config.dgp, replication.lower_indices,
                    replication.upper_indices)
        else:
            path = ssr_path(values, spec, config.max_breaks)
            table = information_criteria(path, path.n_obs, spec.q, spec.p)
            replication.selected_bic = table.selected_bic
            replication.selected_lwz = table.selected_lwz
            replication.selected_kt = table.selected_kt
    except (PaleoBreaksException, np.linalg.LinAlgError) as e:
        replication.error = "{}: {}".format(type(e).__name__, str(e))
        logger.warning("Replication %d failed: %s", index, replication.error)
    return replication


def _replication_task(arguments):
    # type: (tuple) -> Replication
    config, index = arguments
    return run_replication(config, index)


def _median(values):
    # type: (List[float]) -> Optional[float]
    return float(np.median(values)) if values else None


def aggregate(config, replications):
    # type: (StudyConfig, List[Replication]) -> StudyAggregates
    """Reduce replications, in index order, to the study summary.

    :rtype: StudyAggregates
    """
    replications = sorted(replications, key=lambda r: r.index)
    done = [r for r in replications if not r.failed]
    dgp = config.dgp
    aggregates = StudyAggregates(
        n_replications=len(replications),
        n_failed=len(replications) - len(done))

    if config.mode == StudyMode.FIXED.value:
        first = [r for r in done if r.break_indices]
        if first:
            aggregates.mean_break = float(np.mean(
                [dgp.position_of(r.break_indices[0]) for r in first]))
        aggregates.median_lower = _median(
            [dgp.position_of(r.lower_indices[0]) for r in first
             if r.lower_indices and r.lower_indices[0] is not None])
        aggregates.median_upper = _median(
            [dgp.position_of(r.upper_indices[0]) for r in first
             if r.upper_indices and r.upper_indices[0] is not None])
        covered = [r.covered for r in done if r.covered is not None]
        if covered:
            aggregates.coverage = float(np.mean(covered))
        return aggregates

    truth = int(dgp.has_break)
    for criterion in CRITERIA:
        selected = [r.selected(criterion) for r in done
                    if r.selected(criterion) is not None]
        if selected:
            aggregates.mean_selected[criterion] = float(np.mean(selected))
            aggregates.share_correct[criterion] = float(
                np.mean([s == truth for s in selected]))
    return aggregates


def study_metadata(config):
    # type: (StudyConfig) -> Dict[str, object]
    dgp = config.dgp
    return {
        "dgp_label": dgp.label,
        "error_kind": dgp.error_kind.value,
        "min_segment_obs": config.min_segment_obs,
        "include_initial": dgp.include_initial,
        "estimation_sample": "y_0..y_{}".format(dgp.n_obs)
        if dgp.include_initial else "y_1..y_{}".format(dgp.n_obs),
        "true_break": dgp.break_at if dgp.has_break else None,
        "break_dates": "times t of the process, y_t with t <= true_break "
                       "in the first regime",
    }


def run_study(config):
    # type: (StudyConfig) -> StudyResult
    """Run every replication of a study and aggregate them.

    Replications run in ``config.workers`` processes when more than one
    is requested; results do not depend on the worker count.

    :param config: Study settings.
    :type config: StudyConfig
    :rtype: StudyResult
    """
    logger.info(
        "Running %d replications of DGP %s with the %s model in %s mode",
        config.replications, config.dgp.label, config.spec_kind,
        config.mode)
    tasks = [(config, index) for index in range(config.replications)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            replications = list(executor.map(
                _replication_task, tasks,
                chunksize=max(1, len(tasks) // (4 * config.workers))))
    else:
        replications = [_replication_task(task) for task in tasks]

    result = StudyResult(
        config=config, replications=replications,
        aggregates=aggregate(config, replications),
        metadata=study_metadata(config))
    if result.aggregates.n_failed:
        logger.warning(
            "%d of %d replications failed and are left out of the "
            "aggregates", result.aggregates.n_failed, config.replications)
    return result


def replication_frame(result):
    # type: (StudyResult) -> pd.DataFrame
    """One row per replication with break dates and interval bounds as
    process times.

    :rtype: pandas.DataFrame
    """
    dgp = result.config.dgp
    width = max([len(r.break_indices) for r in result.replications] + [0])

    def position(indices, j):
        # type: (List[Optional[int]], int) -> Optional[int]
        if j >= len(indices) or indices[j] is None:
            return None
        return dgp.position_of(indices[j])

    rows = []
    for r in result.replications:
        row = {"replication": r.index, "seed": r.seed}  # type: Dict[str, object]
        for j in range(width):
            row["break_{}".format(j + 1)] = position(r.break_indices, j)
            row["lower_{}".format(j + 1)] = position(r.lower_indices, j)
            row["upper_{}".format(j + 1)] = position(r.upper_indices, j)
        row["covered"] = r.covered
        for criterion in CRITERIA:
            row["selected_" + criterion] = r.selected(criterion)
        row["error"] = r.error
        rows.append(row)
    return pd.DataFrame(rows)
