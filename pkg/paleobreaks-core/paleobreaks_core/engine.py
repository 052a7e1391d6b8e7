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

import numpy as np

from .binning import BinnedSeries
from .exceptions import (
    DegenerateSegmentException, InfeasibleBreaksException,
    RegressionException)
from .regression import (
    DesignMatrix, GlobalCoefficients, ModelKind, ModelSpec, SegmentCost,
    SegmentFit, design_rows, fit_segments, series_values)

if typing.TYPE_CHECKING:
    from typing import List, Optional, Sequence, Tuple, Union
    from .inference import BreakCI
    SeriesLike = Union[BinnedSeries, Sequence[float], np.ndarray]

logger = logging.getLogger("paleobreaks.core")

MAX_BREAKS_CAP = 26
DEFAULT_TOLERANCE = 1e-8
DEFAULT_MAX_ITERATIONS = 100
CELL_BUDGET = 4000000


class SsrByM(object):
    """Minimal total SSR and its partition for every break count.

    ``optimal_breaks[m]`` lists, on the original series index, the last
    position of each regime but the final one. An infeasible break count
    (degenerate segments only) has SSR ``inf`` and no partition.
    """
    deserialized_types = {
        'optimal_ssr': 'list[float]',
        'optimal_breaks': 'list[list[int]]',
        'max_feasible_m': 'int',
        'n_obs': 'int',
        'offset': 'int'
    }

    attribute_map = {
        'optimal_ssr': 'optimal_ssr',
        'optimal_breaks': 'optimal_breaks',
        'max_feasible_m': 'max_feasible_m',
        'n_obs': 'n_obs',
        'offset': 'offset'
    }

    def __init__(
            self, optimal_ssr=None, optimal_breaks=None, max_feasible_m=None,
            n_obs=None, offset=0):
        # type: (List[float], List[Optional[List[int]]], int, int, int) -> None
        self.optimal_ssr = optimal_ssr or []
        self.optimal_breaks = optimal_breaks or []
        self.max_feasible_m = max_feasible_m
        self.n_obs = n_obs
        self.offset = offset

    @property
    def max_breaks(self):
        # type: () -> int
        return len(self.optimal_ssr) - 1

    def segment_lengths(self, m):
        # type: (int) -> List[int]
        """Estimation-sample lengths of the regimes of the optimal
        ``m``-break partition.
        """
        breaks = self.optimal_breaks[m]
        if breaks is None:
            raise InfeasibleBreaksException(
                "No admissible partition with {} breaks".format(m),
                max_feasible_m=self.max_feasible_m)
        edges = [-1] + [b - self.offset for b in breaks] + [self.n_obs - 1]
        return [end - start for start, end in zip(edges, edges[1:])]

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, SsrByM):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class BreakFit(object):
    """Estimated break model of a series.

    :param spec: Model spec the fit was made with.
    :type spec: paleobreaks_core.regression.ModelSpec
    :param m: Number of breaks.
    :type m: int
    :param break_indices: Last position of each regime but the final
        one, on the original series index.
    :type break_indices: list(int)
    :param break_ages: Ages in Ma of the break positions, None when the
        series carries no age axis.
    :type break_ages: list(float)
    :param segment_fits: Regime fits, oldest first.
    :type segment_fits: list(paleobreaks_core.regression.SegmentFit)
    :param beta: State-independent coefficients.
    :type beta: paleobreaks_core.regression.GlobalCoefficients
    :param total_ssr: Total SSR of the partition.
    :type total_ssr: float
    :param converged: False when the FixedAR iteration hit its limit.
    :type converged: bool
    :param iterations: Number of iterations run.
    :type iterations: int
    :param n_obs: Size of the estimation sample.
    :type n_obs: int
    :param confidence_intervals: Break date intervals, filled by
        :py:func:`paleobreaks_core.inference.break_confidence_intervals`.
    :type confidence_intervals: list(paleobreaks_core.inference.BreakCI)
    """
    deserialized_types = {
        'spec': 'paleobreaks_core.regression.ModelSpec',
        'm': 'int',
        'break_indices': 'list[int]',
        'break_ages': 'list[float]',
        'segment_fits': 'list[paleobreaks_core.regression.SegmentFit]',
        'beta': 'paleobreaks_core.regression.GlobalCoefficients',
        'total_ssr': 'float',
        'converged': 'bool',
        'iterations': 'int',
        'n_obs': 'int',
        'confidence_intervals': 'list[paleobreaks_core.inference.BreakCI]'
    }

    attribute_map = {
        'spec': 'spec',
        'm': 'm',
        'break_indices': 'break_indices',
        'break_ages': 'break_ages_Ma',
        'segment_fits': 'segments',
        'beta': 'beta',
        'total_ssr': 'total_ssr',
        'converged': 'converged',
        'iterations': 'iterations',
        'n_obs': 'n_obs',
        'confidence_intervals': 'confidence_intervals'
    }

    def __init__(
            self, spec=None, m=None, break_indices=None, break_ages=None,
            segment_fits=None, beta=None, total_ssr=None, converged=True,
            iterations=1, n_obs=None, confidence_intervals=None,
            series=None):
        # type: (ModelSpec, int, List[int], Optional[List[float]], List[SegmentFit], GlobalCoefficients, float, bool, int, int, List[BreakCI], Optional[SeriesLike]) -> None
        self.spec = spec
        self.m = m
        self.break_indices = break_indices or []
        self.break_ages = break_ages
        self.segment_fits = segment_fits or []
        self.beta = beta or GlobalCoefficients()
        self.total_ssr = total_ssr
        self.converged = converged
        self.iterations = iterations
        self.n_obs = n_obs
        self.confidence_intervals = confidence_intervals or []
        self.series = series

    @property
    def design(self):
        # type: () -> DesignMatrix
        """Estimation sample the fit was made on."""
        if self.series is None:
            raise RegressionException("Fit carries no series")
        return design_rows(self.series, self.spec)


def max_feasible_breaks(n_obs, min_len):
    # type: (int, int) -> int
    """Largest break count whose regimes can all hold ``min_len``
    observations, -1 when not even one regime fits.
    """
    return n_obs // max(int(min_len), 1) - 1


def default_max_breaks(n_obs, min_len):
    # type: (int, int) -> int
    return min(max_feasible_breaks(n_obs, min_len), MAX_BREAKS_CAP)


def _cost_block(cost, starts, ends):
    # type: (Union[SegmentCost, np.ndarray], np.ndarray, np.ndarray) -> np.ndarray
    if isinstance(cost, SegmentCost):
        with np.errstate(divide="ignore", invalid="ignore"):
            return cost.block(starts, ends)
    return np.asarray(cost)[starts, ends]


def _bellman_step(cost, previous, n_obs, n_segments, min_len):
    # type: (Union[SegmentCost, np.ndarray], np.ndarray, int, int, int) -> Tuple[np.ndarray, np.ndarray]
    """Optimal ``n_segments`` prefixes from the ``n_segments - 1`` ones.

    ``previous[i]`` is the best SSR of rows ``0..i``; the new value at
    ``j`` minimizes ``previous[i] + SSR(i + 1, j)`` over admissible
    ``i``, taking the smallest ``i`` among equal minima.
    """
    current = np.full(n_obs, np.inf)
    argmin = np.full(n_obs, -1, dtype=np.int64)
    first_end = n_segments * min_len - 1
    lowest = (n_segments - 1) * min_len - 1
    if first_end > n_obs - 1:
        return current, argmin

    candidates = np.arange(lowest, n_obs - min_len)
    prefix = previous[candidates]
    chunk = max(1, CELL_BUDGET // max(candidates.size, 1))
    for j0 in range(first_end, n_obs, chunk):
        ends = np.arange(j0, min(j0 + chunk, n_obs))
        usable = candidates[candidates <= ends[-1] - min_len]
        grid_i = usable[:, None]
        grid_j = ends[None, :]
        admissible = grid_j - grid_i >= min_len
        starts = np.broadcast_to(grid_i + 1, admissible.shape)
        safe_ends = np.where(admissible, grid_j, starts)
        values = prefix[:usable.size, None] + _cost_block(
            cost, starts, safe_ends)
        values = np.where(admissible, values, np.inf)
        best = np.argmin(values, axis=0)
        current[ends] = values[best, np.arange(ends.size)]
        argmin[ends] = usable[best]
    return current, argmin


def dp_global_breaks(cost, n_obs, max_breaks, min_len, offset=0):
    # type: (Union[SegmentCost, np.ndarray], int, int, int, int) -> SsrByM
    """Globally optimal partitions for every break count up to
    ``max_breaks`` by dynamic programming over optimal prefixes.

    :param cost: Segment cost, either a
        :py:class:`paleobreaks_core.regression.SegmentCost` or a dense
        ``SSR[i, j]`` table over sample rows.
    :type cost: Union[SegmentCost, numpy.ndarray]
    :param n_obs: Estimation sample size.
    :type n_obs: int
    :param max_breaks: Largest break count wanted.
    :type max_breaks: int
    :param min_len: Minimum regime length.
    :type min_len: int
    :param offset: Sample row to original index shift of the reported
        partitions.
    :type offset: int
    :rtype: SsrByM
    :raises: :py:class:`paleobreaks_core.exceptions.InfeasibleBreaksException`
        if not even a single regime fits the sample.
    """
    min_len = max(int(min_len), 1)
    feasible = max_feasible_breaks(n_obs, min_len)
    if feasible < 0 or max_breaks < 0:
        raise InfeasibleBreaksException(
            "Sample of {} observations cannot hold a regime of {} "
            "observations".format(n_obs, min_len), max_feasible_m=feasible)
    if max_breaks > feasible:
        logger.warning(
            "Requested %d breaks but at most %d fit %d observations with "
            "minimum regime length %d", max_breaks, feasible, n_obs, min_len)
        max_breaks = feasible

    ends = np.arange(n_obs)
    prefix = np.full(n_obs, np.inf)
    admissible = ends >= min_len - 1
    prefix[admissible] = _cost_block(
        cost, np.zeros(int(admissible.sum()), dtype=np.int64),
        ends[admissible])
    layers = [prefix]
    pointers = [None]  # type: List[Optional[np.ndarray]]
    for n_segments in range(2, max_breaks + 2):
        prefix, argmin = _bellman_step(
            cost, prefix, n_obs, n_segments, min_len)
        layers.append(prefix)
        pointers.append(argmin)

    optimal_ssr = []  # type: List[float]
    optimal_breaks = []  # type: List[Optional[List[int]]]
    for m in range(max_breaks + 1):
        total = float(layers[m][n_obs - 1])
        optimal_ssr.append(total)
        if not np.isfinite(total):
            optimal_breaks.append(None)
            continue
        breaks = []
        end = n_obs - 1
        for layer in range(m, 0, -1):
            end = int(pointers[layer][end])
            breaks.append(end + offset)
        optimal_breaks.append(breaks[::-1])

    return SsrByM(
        optimal_ssr=optimal_ssr, optimal_breaks=optimal_breaks,
        max_feasible_m=feasible, n_obs=n_obs, offset=offset)


def _check_feasible(design, spec, m):
    # type: (DesignMatrix, ModelSpec, int) -> None
    feasible = max_feasible_breaks(design.n_obs, spec.min_segment_obs)
    if m < 0 or m > feasible:
        raise InfeasibleBreaksException(
            "{} breaks do not fit {} observations with minimum regime "
            "length {}; at most {} are feasible".format(
                m, design.n_obs, spec.min_segment_obs, feasible),
            max_feasible_m=feasible)


def _ages(series, breaks):
    # type: (SeriesLike, List[int]) -> Optional[List[float]]
    if isinstance(series, BinnedSeries):
        return [series.age_of(b) for b in breaks]
    return None


def _build_fit(series, spec, m, breaks, fits, beta, total, converged,
               iterations, n_obs):
    # type: (SeriesLike, ModelSpec, int, List[int], List[SegmentFit], GlobalCoefficients, float, bool, int, int) -> BreakFit
    return BreakFit(
        spec=spec, m=m, break_indices=list(breaks),
        break_ages=_ages(series, breaks), segment_fits=fits, beta=beta,
        total_ssr=total, converged=converged, iterations=iterations,
        n_obs=n_obs, series=series)


def initial_beta(design):
    # type: (DesignMatrix) -> GlobalCoefficients
    """Full-sample OLS of the state-independent coefficients, ignoring
    breaks.
    """
    regressors = np.hstack([design.z, design.x])
    coefficients = np.linalg.lstsq(regressors, design.y, rcond=None)[0]
    return GlobalCoefficients(coefficients[design.z.shape[1]:])


def _partition(cost, design, m, min_len):
    # type: (SegmentCost, DesignMatrix, int, int) -> List[int]
    path = dp_global_breaks(cost, design.n_obs, m, min_len, design.offset)
    breaks = path.optimal_breaks[m]
    if breaks is None:
        raise DegenerateSegmentException(
            "Every partition with {} breaks has a degenerate "
            "segment".format(m))
    return breaks


def _iterate_fixed_ar(series, spec, design, m, beta, tol, max_iterations):
    # type: (SeriesLike, ModelSpec, DesignMatrix, int, GlobalCoefficients, float, int) -> BreakFit
    best = None  # type: Optional[BreakFit]
    previous = None  # type: Optional[float]
    converged = False
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        cost = SegmentCost.from_design(design, beta)
        breaks = _partition(cost, design, m, spec.min_segment_obs)
        fits, beta, total = fit_segments(series, spec, breaks)
        if best is None or total < best.total_ssr:
            best = _build_fit(series, spec, m, breaks, fits, beta, total,
                              False, iteration, design.n_obs)
        if previous is not None and abs(previous - total) <= tol * max(
                abs(previous), np.finfo(float).tiny):
            converged = True
            break
        previous = total

    assert best is not None
    best.converged = converged
    best.iterations = iteration
    if not converged:
        logger.warning(
            "Fixed AR iteration for %d breaks did not converge after %d "
            "iterations; returning the best iterate", m, iteration)
    return best


def estimate(series, spec, m, tol=DEFAULT_TOLERANCE,
             max_iterations=DEFAULT_MAX_ITERATIONS, beta=None):
    # type: (SeriesLike, ModelSpec, int, float, int, Optional[GlobalCoefficients]) -> BreakFit
    """Estimate an ``m``-break model of a series.

    Pure structural change specs need one dynamic programming pass. For
    FixedAR the breaks given ``beta`` and ``(beta, delta)`` given the
    breaks are updated in turn until the relative SSR change falls to
    ``tol``; the best iterate is returned with ``converged`` False when
    ``max_iterations`` is reached first.

    :param series: Binned series or plain values.
    :type series: Union[BinnedSeries, Sequence[float]]
    :param spec: Model spec.
    :type spec: ModelSpec
    :param m: Number of breaks.
    :type m: int
    :param tol: Relative SSR change that ends the FixedAR iteration.
    :type tol: float
    :param max_iterations: Iteration limit.
    :type max_iterations: int
    :param beta: FixedAR starting value, full-sample OLS by default.
    :type beta: GlobalCoefficients
    :rtype: BreakFit
    :raises: :py:class:`paleobreaks_core.exceptions.InfeasibleBreaksException`,
        :py:class:`paleobreaks_core.exceptions.DegenerateSegmentException`
    """
    design = design_rows(series, spec)
    _check_feasible(design, spec, m)
    if max_iterations < 1:
        raise RegressionException("At least one iteration is needed")

    if spec.kind is ModelKind.FIXED_AR:
        start = beta if beta is not None else initial_beta(design)
        return _iterate_fixed_ar(
            series, spec, design, m, start, tol, max_iterations)

    breaks = _partition(SegmentCost.from_design(design), design, m,
                        spec.min_segment_obs)
    fits, beta, total = fit_segments(series, spec, breaks)
    return _build_fit(series, spec, m, breaks, fits, beta, total, True, 1,
                      design.n_obs)


def estimate_path(series, spec, max_breaks=None, tol=DEFAULT_TOLERANCE,
                  max_iterations=DEFAULT_MAX_ITERATIONS, min_breaks=1):
    # type: (SeriesLike, ModelSpec, Optional[int], float, int, int) -> List[BreakFit]
    """Estimate the models with ``min_breaks..max_breaks`` breaks.

    Pure structural change specs share one dynamic programming pass.
    FixedAR runs per break count from the full-sample start and from the
    previous count's estimate, keeping the lower SSR, so the SSR path
    does not rise with ``m`` whenever the previous partition can be
    refined.

    :rtype: list(BreakFit)
    """
    design = design_rows(series, spec)
    if max_breaks is None:
        max_breaks = default_max_breaks(design.n_obs, spec.min_segment_obs)
    _check_feasible(design, spec, max_breaks)

    fits = []  # type: List[BreakFit]
    if spec.kind is not ModelKind.FIXED_AR:
        path = dp_global_breaks(
            SegmentCost.from_design(design), design.n_obs, max_breaks,
            spec.min_segment_obs, design.offset)
        for m in range(min_breaks, max_breaks + 1):
            breaks = path.optimal_breaks[m]
            if breaks is None:
                raise DegenerateSegmentException(
                    "Every partition with {} breaks has a degenerate "
                    "segment".format(m))
            segment_fits, beta, total = fit_segments(series, spec, breaks)
            fits.append(_build_fit(series, spec, m, breaks, segment_fits,
                                   beta, total, True, 1, design.n_obs))
        return fits

    cold_start = initial_beta(design)
    previous = None  # type: Optional[BreakFit]
    for m in range(max_breaks + 1):
        fit = estimate(series, spec, m, tol, max_iterations, cold_start)
        if previous is not None:
            warm = estimate(series, spec, m, tol, max_iterations,
                            previous.beta)
            if warm.total_ssr < fit.total_ssr:
                fit = warm
        previous = fit
        if m >= min_breaks:
            fits.append(fit)
    return fits


def ssr_path(series, spec, max_breaks=None, tol=DEFAULT_TOLERANCE,
             max_iterations=DEFAULT_MAX_ITERATIONS):
    # type: (SeriesLike, ModelSpec, Optional[int], float, int) -> SsrByM
    """Minimal SSR for ``m = 0..max_breaks`` as input to information
    criteria. ``max_breaks`` defaults to the feasible count capped at
    26.

    :rtype: SsrByM
    """
    design = design_rows(series, spec)
    feasible = max_feasible_breaks(design.n_obs, spec.min_segment_obs)
    if max_breaks is None:
        max_breaks = default_max_breaks(design.n_obs, spec.min_segment_obs)
    elif max_breaks > feasible:
        logger.warning(
            "Requested %d breaks but at most %d are feasible",
            max_breaks, feasible)
        max_breaks = feasible

    if spec.kind is not ModelKind.FIXED_AR:
        return dp_global_breaks(
            SegmentCost.from_design(design), design.n_obs, max_breaks,
            spec.min_segment_obs, design.offset)

    fits = estimate_path(series, spec, max_breaks, tol, max_iterations,
                         min_breaks=0)
    return SsrByM(
        optimal_ssr=[fit.total_ssr for fit in fits],
        optimal_breaks=[list(fit.break_indices) for fit in fits],
        max_feasible_m=feasible, n_obs=design.n_obs, offset=design.offset)


def fit_partition(series, spec, breaks):
    # type: (SeriesLike, ModelSpec, Sequence[int]) -> BreakFit
    """Fit a given partition without searching for breaks."""
    values = series_values(series)
    segment_fits, beta, total = fit_segments(values, spec, breaks)
    design = design_rows(values, spec)
    return _build_fit(series, spec, len(breaks), list(breaks), segment_fits,
                      beta, total, True, 1, design.n_obs)
