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
from enum import Enum

import numpy as np

from .binning import BinnedSeries
from .exceptions import RegressionException
from .hac import HacConfig

if typing.TYPE_CHECKING:
    from typing import List, Optional, Sequence, Tuple, Union
    SeriesLike = Union[BinnedSeries, Sequence[float], np.ndarray]

CONDITION_LIMIT = 1e12


class ModelKind(Enum):
    """Regression specification of the segment model.

    * ``MEAN``: state-dependent intercept.
    * ``FIXED_AR``: state-dependent intercept, AR(1) coefficient
      constant over the sample (partial structural change).
    * ``AR``: state-dependent intercept and AR(1) coefficient.
    """
    MEAN = "mean"
    FIXED_AR = "fixed-ar"
    AR = "ar"

    @property
    def q(self):
        # type: () -> int
        """Number of segment-specific coefficients."""
        return 2 if self is ModelKind.AR else 1

    @property
    def p(self):
        # type: () -> int
        """Number of coefficients constant across segments."""
        return 1 if self is ModelKind.FIXED_AR else 0

    @property
    def uses_lag(self):
        # type: () -> bool
        return self is not ModelKind.MEAN


def min_segment_obs_from_h(h_myr, bin_size):
    # type: (float, float) -> int
    """Convert a minimum regime duration in Myr to an observation count
    at the given bin size in kyr.

    :rtype: int
    """
    if h_myr <= 0 or bin_size <= 0:
        raise RegressionException(
            "Minimum duration and bin size must be positive")
    return int(round(h_myr * 1000.0 / bin_size))


class ModelSpec(object):
    """Model specification used for break estimation.

    :param kind: Specification kind, a :py:class:`ModelKind` or its
        value string.
    :type kind: Union[ModelKind, str]
    :param min_segment_obs: Minimum number of estimation-sample
        observations per segment.
    :type min_segment_obs: int
    :param hetero_variance: Regime-specific error variance.
    :type hetero_variance: bool
    :param hac: Long-run covariance settings used for inference.
    :type hac: paleobreaks_core.hac.HacConfig
    :raises: :py:class:`paleobreaks_core.exceptions.RegressionException`
        when the minimum segment length is below the segment
        coefficient count.
    """
    deserialized_types = {
        'kind': 'str',
        'min_segment_obs': 'int',
        'hetero_variance': 'bool',
        'hac': 'paleobreaks_core.hac.HacConfig'
    }

    attribute_map = {
        'kind': 'kind',
        'min_segment_obs': 'min_segment_obs',
        'hetero_variance': 'hetero_variance',
        'hac': 'hac'
    }

    def __init__(
            self, kind=ModelKind.FIXED_AR, min_segment_obs=None,
            hetero_variance=True, hac=None):
        # type: (Union[ModelKind, str], int, bool, Optional[HacConfig]) -> None
        self.kind = kind
        self.min_segment_obs = (
            self.kind.q if min_segment_obs is None else min_segment_obs)
        self.hetero_variance = bool(hetero_variance)
        self.hac = hac or HacConfig()

    @classmethod
    def from_h(cls, kind, h_myr, bin_size, **kwargs):
        # type: (Union[ModelKind, str], float, float, typing.Any) -> ModelSpec
        """Build a spec whose minimum segment length is ``h_myr``
        converted at ``bin_size`` kyr.
        """
        return cls(kind=kind,
                   min_segment_obs=min_segment_obs_from_h(h_myr, bin_size),
                   **kwargs)

    @property
    def kind(self):
        # type: () -> ModelKind
        return self._kind

    @kind.setter
    def kind(self, kind):
        # type: (Union[ModelKind, str]) -> None
        try:
            self._kind = ModelKind(kind)
        except ValueError:
            raise RegressionException(
                "Unknown model kind '{}', expected one of {}".format(
                    kind, ", ".join(k.value for k in ModelKind)))

    @property
    def min_segment_obs(self):
        # type: () -> int
        return self._min_segment_obs

    @min_segment_obs.setter
    def min_segment_obs(self, min_segment_obs):
        # type: (int) -> None
        if int(min_segment_obs) < self.kind.q:
            raise RegressionException(
                "Minimum segment length {} is below the {} segment "
                "coefficients of the {} model".format(
                    min_segment_obs, self.kind.q, self.kind.value))
        self._min_segment_obs = int(min_segment_obs)

    @property
    def q(self):
        # type: () -> int
        return self.kind.q

    @property
    def p(self):
        # type: () -> int
        return self.kind.p


class SegmentFit(object):
    """Least squares fit of one regime.

    ``start`` and ``end`` are inclusive positions on the original
    series index. ``delta`` holds the intercept and, for the AR model,
    the regime AR coefficient; ``delta_se`` their HAC standard errors
    once inference has run.
    """
    deserialized_types = {
        'start': 'int',
        'end': 'int',
        'delta': 'list[float]',
        'sigma2': 'float',
        'sigma': 'float',
        'ssr': 'float',
        'delta_se': 'list[float]'
    }

    attribute_map = {
        'start': 'start',
        'end': 'end',
        'delta': 'delta',
        'sigma2': 'sigma2',
        'sigma': 'sigma',
        'ssr': 'ssr',
        'delta_se': 'delta_se'
    }

    def __init__(
            self, start=None, end=None, delta=None, sigma2=None, ssr=None,
            delta_se=None):
        # type: (int, int, Sequence[float], float, float, Sequence[float]) -> None
        self.start = start
        self.end = end
        self.delta = delta
        self.sigma2 = sigma2
        self.ssr = ssr
        self.delta_se = delta_se

    @property
    def sigma(self):
        # type: () -> Optional[float]
        """Residual standard deviation of the regime."""
        if self.sigma2 is None:
            return None
        return float(np.sqrt(self.sigma2))

    @property
    def n_obs(self):
        # type: () -> int
        return self.end - self.start + 1


class GlobalCoefficients(object):
    """Coefficients held constant across regimes (``beta``), empty for
    pure structural change models.
    """
    deserialized_types = {
        'beta': 'list[float]',
        'beta_se': 'list[float]'
    }

    attribute_map = {
        'beta': 'beta',
        'beta_se': 'beta_se'
    }

    def __init__(self, beta=None, beta_se=None):
        # type: (Sequence[float], Sequence[float]) -> None
        self.beta = beta
        self.beta_se = beta_se

    @property
    def beta(self):
        # type: () -> np.ndarray
        return self._beta

    @beta.setter
    def beta(self, beta):
        # type: (Optional[Sequence[float]]) -> None
        self._beta = np.asarray(
            [] if beta is None else beta, dtype=float).reshape(-1)

    @property
    def p(self):
        # type: () -> int
        return int(self.beta.size)


class DesignMatrix(object):
    """Estimation sample of a series under a model spec.

    Row ``t`` of the sample is position ``t + offset`` of the original
    series; ``offset`` is 1 when a lag is used.
    """

    def __init__(self, y, x, z, offset):
        # type: (np.ndarray, np.ndarray, np.ndarray, int) -> None
        self.y = y
        self.x = x
        self.z = z
        self.offset = offset

    @property
    def n_obs(self):
        # type: () -> int
        return int(self.y.size)

    def adjusted(self, beta):
        # type: (GlobalCoefficients) -> np.ndarray
        """Response net of the state-independent part, ``y - x'beta``."""
        if beta is None or beta.p == 0:
            return self.y
        return self.y - self.x @ beta.beta


def series_values(series):
    # type: (SeriesLike) -> np.ndarray
    if isinstance(series, BinnedSeries):
        return series.values
    values = np.asarray(series, dtype=float).reshape(-1)
    if not np.all(np.isfinite(values)):
        raise RegressionException("Series values must be finite")
    return values


def design_rows(series, spec):
    # type: (SeriesLike, ModelSpec) -> DesignMatrix
    """Build the regression rows of a series for a model spec.

    Mean: ``z = 1``. FixedAR: ``x = y_{t-1}``, ``z = 1``. AR:
    ``z = (1, y_{t-1})``. Lag specs start at the second observation.

    :param series: Binned series or plain values.
    :type series: Union[BinnedSeries, Sequence[float]]
    :param spec: Model spec.
    :type spec: ModelSpec
    :rtype: DesignMatrix
    :raises: :py:class:`paleobreaks_core.exceptions.RegressionException`
        when the series is too short.
    """
    values = series_values(series)
    offset = 1 if spec.kind.uses_lag else 0
    if values.size < offset + 1:
        raise RegressionException(
            "Series of length {} too short for the {} model".format(
                values.size, spec.kind.value))

    y = values[offset:]
    ones = np.ones((y.size, 1))
    if spec.kind is ModelKind.MEAN:
        return DesignMatrix(y, np.empty((y.size, 0)), ones, offset)
    lag = values[:-1][:, None]
    if spec.kind is ModelKind.FIXED_AR:
        return DesignMatrix(y, lag, ones, offset)
    return DesignMatrix(y, np.empty((y.size, 0)), np.hstack([ones, lag]),
                        offset)


class SegmentCost(object):
    """OLS residual sums of squares of every segment of a sample.

    Cumulative moments of the (globally demeaned) response and lag are
    kept so that the SSR of any segment ``[i, j]`` is available in O(1)
    from within-segment centered moments. For the AR model a segment
    whose moment matrix has condition number above ``CONDITION_LIMIT``
    is degenerate and costs ``+inf``.

    :param y: Response of the estimation sample (already net of any
        state-independent part).
    :type y: numpy.ndarray
    :param lag: Segment-specific lag regressor, None for an
        intercept-only segment model.
    :type lag: numpy.ndarray
    """

    def __init__(self, y, lag=None):
        # type: (np.ndarray, Optional[np.ndarray]) -> None
        y = np.asarray(y, dtype=float)
        yc = y - y.mean()
        self.n_obs = int(y.size)
        self.q = 1 if lag is None else 2
        self._sy = np.concatenate(([0.0], np.cumsum(yc)))
        self._syy = np.concatenate(([0.0], np.cumsum(yc * yc)))
        if lag is not None:
            lag = np.asarray(lag, dtype=float)
            xc = lag - lag.mean()
            self._sx = np.concatenate(([0.0], np.cumsum(xc)))
            self._sxx = np.concatenate(([0.0], np.cumsum(xc * xc)))
            self._sxy = np.concatenate(([0.0], np.cumsum(xc * yc)))

    @classmethod
    def from_design(cls, design, beta=None):
        # type: (DesignMatrix, Optional[GlobalCoefficients]) -> SegmentCost
        lag = design.z[:, 1] if design.z.shape[1] > 1 else None
        return cls(design.adjusted(beta), lag)

    def __len__(self):
        # type: () -> int
        return self.n_obs

    def block(self, starts, ends):
        # type: (np.ndarray, np.ndarray) -> np.ndarray
        """SSR of segments ``[starts, ends]`` (broadcast, inclusive,
        ``ends >= starts``).
        """
        starts = np.asarray(starts)
        ends = np.asarray(ends) + 1
        n = (ends - starts).astype(float)
        sy = self._sy[ends] - self._sy[starts]
        syy = self._syy[ends] - self._syy[starts]
        ssr = syy - sy * sy / n
        if self.q == 2:
            sx = self._sx[ends] - self._sx[starts]
            sxx_c = self._sxx[ends] - self._sxx[starts] - sx * sx / n
            sxy_c = self._sxy[ends] - self._sxy[starts] - sx * sy / n
            trace = n + sxx_c + sx * sx / n
            determinant = n * sxx_c
            largest = trace / 2.0 + np.sqrt(
                np.maximum(trace * trace / 4.0 - determinant, 0.0))
            degenerate = determinant <= largest * largest / CONDITION_LIMIT
            with np.errstate(divide="ignore", invalid="ignore"):
                ssr = ssr - sxy_c * sxy_c / sxx_c
            ssr = np.where(degenerate, np.inf, ssr)
        return np.maximum(ssr, 0.0)

    def matrix(self, min_len=1):
        # type: (int) -> np.ndarray
        """Dense table ``SSR[i, j]``; entries with ``j - i + 1 <
        min_len`` are ``+inf``.
        """
        positions = np.arange(self.n_obs)
        starts = positions[:, None]
        ends = positions[None, :]
        admissible = ends - starts + 1 >= max(int(min_len), 1)
        table = np.full((self.n_obs, self.n_obs), np.inf)
        table[admissible] = self.block(
            np.broadcast_to(starts, table.shape)[admissible],
            np.broadcast_to(ends, table.shape)[admissible])
        return table


def segment_ssr_table(series, spec, beta=None):
    # type: (SeriesLike, ModelSpec, Optional[GlobalCoefficients]) -> np.ndarray
    """Triangular table of segment SSRs on the estimation sample.

    ``table[i, j]`` is the SSR of regressing ``y_t - x_t'beta`` on
    ``z_t`` over sample rows ``i..j``; segments shorter than the
    segment coefficient count are ``+inf``, as are degenerate ones.

    :param series: Binned series or plain values.
    :param spec: Model spec.
    :type spec: ModelSpec
    :param beta: State-independent coefficients, needed for FixedAR.
    :type beta: GlobalCoefficients
    :rtype: numpy.ndarray
    """
    design = design_rows(series, spec)
    if spec.p and (beta is None or beta.p != spec.p):
        raise RegressionException(
            "The {} model needs {} fixed coefficient(s)".format(
                spec.kind.value, spec.p))
    return SegmentCost.from_design(design, beta).matrix(spec.q)


def sample_segments(breaks, n_obs, offset):
    # type: (Sequence[int], int, int) -> List[Tuple[int, int]]
    """Inclusive (start, end) sample rows of the regimes delimited by
    breaks given on the original index (last position of a regime).
    """
    ends = [int(b) - offset for b in breaks] + [n_obs - 1]
    starts = [0] + [e + 1 for e in ends[:-1]]
    return list(zip(starts, ends))


def _check_breaks(breaks, design, spec):
    # type: (Sequence[int], DesignMatrix, ModelSpec) -> List[Tuple[int, int]]
    breaks = [int(b) for b in breaks]
    if any(b_next <= b for b, b_next in zip(breaks, breaks[1:])):
        raise RegressionException(
            "Breaks must be strictly increasing: {}".format(breaks))
    segments = sample_segments(breaks, design.n_obs, design.offset)
    for start, end in segments:
        if end - start + 1 < spec.min_segment_obs:
            raise RegressionException(
                "Segment [{}, {}] shorter than the minimum of {} "
                "observations".format(
                    start + design.offset, end + design.offset,
                    spec.min_segment_obs))
    return segments


def regime_design(design, segments):
    # type: (DesignMatrix, List[Tuple[int, int]]) -> np.ndarray
    """Full-sample regressor matrix: regime-interacted ``z`` blocks
    followed by the state-independent ``x`` columns.
    """
    q = design.z.shape[1]
    blocks = np.zeros((design.n_obs, q * len(segments)))
    for j, (start, end) in enumerate(segments):
        blocks[start:end + 1, j * q:(j + 1) * q] = design.z[start:end + 1]
    return np.hstack([blocks, design.x])


def _segment_fit(design, response, start, end):
    # type: (DesignMatrix, np.ndarray, int, int) -> Tuple[np.ndarray, np.ndarray]
    y = response[start:end + 1]
    z = design.z[start:end + 1]
    if z.shape[1] == 1:
        delta = np.array([y.mean()])
    else:
        if np.linalg.cond(z.T @ z) > CONDITION_LIMIT:
            raise RegressionException(
                "Degenerate segment [{}, {}]".format(
                    start + design.offset, end + design.offset))
        delta = np.linalg.lstsq(z, y, rcond=None)[0]
    return delta, y - z @ delta


def fit_segments(series, spec, breaks, beta=None):
    # type: (SeriesLike, ModelSpec, Sequence[int], Optional[GlobalCoefficients]) -> Tuple[List[SegmentFit], GlobalCoefficients, float]
    """Fit every regime of a partition.

    With ``beta`` given (or for pure structural change specs) each
    regime regresses ``y - x'beta`` on ``z``. For FixedAR without
    ``beta``, ``(beta, delta)`` are estimated jointly by full-sample
    OLS with regime dummies.

    :param series: Binned series or plain values.
    :param spec: Model spec.
    :type spec: ModelSpec
    :param breaks: Last position of each regime but the final one, on
        the original index, strictly increasing.
    :type breaks: Sequence[int]
    :param beta: State-independent coefficients to hold fixed.
    :type beta: GlobalCoefficients
    :return: Regime fits, the state-independent coefficients and the
        total SSR.
    :rtype: tuple(list(SegmentFit), GlobalCoefficients, float)
    :raises: :py:class:`paleobreaks_core.exceptions.RegressionException`
    """
    design = design_rows(series, spec)
    segments = _check_breaks(breaks, design, spec)

    if spec.p and beta is None:
        regressors = regime_design(design, segments)
        if np.linalg.cond(regressors.T @ regressors) > CONDITION_LIMIT:
            raise RegressionException("Joint regime regression is singular")
        coefficients = np.linalg.lstsq(regressors, design.y, rcond=None)[0]
        beta = GlobalCoefficients(coefficients[regressors.shape[1] -
                                               spec.p:])
    elif beta is None:
        beta = GlobalCoefficients()

    response = design.adjusted(beta)
    fits = []
    total = 0.0
    for start, end in segments:
        delta, residuals = _segment_fit(design, response, start, end)
        ssr = float(residuals @ residuals)
        dof = end - start + 1 - spec.q
        fits.append(SegmentFit(
            start=start + design.offset, end=end + design.offset,
            delta=[float(d) for d in delta],
            sigma2=ssr / dof if dof > 0 else None, ssr=ssr))
        total += ssr
    return fits, beta, total


def residuals_of(design, fits, beta):
    # type: (DesignMatrix, List[SegmentFit], GlobalCoefficients) -> np.ndarray
    """Full-sample residuals of a fitted partition."""
    response = design.adjusted(beta)
    residuals = np.empty(design.n_obs)
    for fit in fits:
        start, end = fit.start - design.offset, fit.end - design.offset
        z = design.z[start:end + 1]
        residuals[start:end + 1] = response[start:end + 1] - z @ np.asarray(
            fit.delta)
    return residuals
