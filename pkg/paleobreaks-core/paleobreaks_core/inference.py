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
import math
import typing

import numpy as np
import pandas as pd
from scipy import optimize
from scipy.stats import norm
from statsmodels.tsa.stattools import adfuller

from .binning import BinnedSeries
from .exceptions import InferenceException
from .hac import hac_covariance
from .regression import regime_design, residuals_of, series_values

if typing.TYPE_CHECKING:
    from typing import Dict, List, Optional, Sequence, Tuple, Union
    from .engine import BreakFit, SsrByM
    from .regression import DesignMatrix

logger = logging.getLogger("paleobreaks.core")

DEFAULT_LEVEL = 0.95
VANISHING_CHANGE = 1e-14
QUANTILE_TOLERANCE = 1e-8
LWZ_C0 = 0.299
LWZ_DELTA0 = 0.1
ADF_MIN_OBS = 25
ADF_LEVELS = {0.01: "1%", 0.05: "5%", 0.10: "10%"}


class BreakCI(object):
    """Confidence interval of one break date.

    ``lower_index <= break_index <= upper_index`` on the series index;
    ``lower`` and ``upper`` are the ages in Ma of those positions, so for
    a series ordered oldest first ``lower`` is the older bound. An
    interval around a vanishing coefficient change is unbounded: indices
    and ages are None and ``flags`` says why. Bounds reaching past the
    estimation sample are clamped to it and flagged ``truncated``.
    """
    deserialized_types = {
        'break_index': 'int',
        'estimate': 'float',
        'lower': 'float',
        'upper': 'float',
        'lower_index': 'int',
        'upper_index': 'int',
        'level': 'float',
        'flags': 'list[str]'
    }

    attribute_map = {
        'break_index': 'break_index',
        'estimate': 'estimate_Ma',
        'lower': 'lower_Ma',
        'upper': 'upper_Ma',
        'lower_index': 'lower_index',
        'upper_index': 'upper_index',
        'level': 'level',
        'flags': 'flags'
    }

    def __init__(
            self, break_index=None, estimate=None, lower=None, upper=None,
            lower_index=None, upper_index=None, level=DEFAULT_LEVEL,
            flags=None):
        # type: (int, Optional[float], Optional[float], Optional[float], Optional[int], Optional[int], float, List[str]) -> None
        self.break_index = break_index
        self.estimate = estimate
        self.lower = lower
        self.upper = upper
        self.lower_index = lower_index
        self.upper_index = upper_index
        self.level = level
        self.flags = flags or []

    @property
    def bounded(self):
        # type: () -> bool
        return self.lower_index is not None and self.upper_index is not None

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, BreakCI):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def _signed_exp_sum(terms):
    # type: (Sequence[Tuple[float, float]]) -> float
    return sum(sign * math.exp(log_value) for sign, log_value in terms)


def argmax_cdf(x, xi=1.0, phi=1.0):
    # type: (float, float, float) -> float
    """CDF of the argmax of a two-sided Brownian motion with triangular
    drift, the limit law of a break date estimator.

    ``xi`` is the ratio of the second-moment quadratic forms of the
    coefficient change after and before the break, ``phi`` the ratio of
    the long-run variance forms.

    :rtype: float
    """
    if xi <= 0 or phi <= 0:
        raise InferenceException("Limit law ratios must be positive")
    a = abs(float(x))
    if x < 0:
        frac = xi / phi
        terms = [
            (-1.0, 0.5 * math.log(a) - a / 8.0 - 0.5 * math.log(2 * math.pi))
            if a > 0 else (0.0, 0.0),
            (-1.0, math.log(phi / xi * (phi + 2 * xi) / (phi + xi)) +
             frac * (1 + frac) * a / 2.0 +
             norm.logcdf(-(0.5 + frac) * math.sqrt(a))),
            (1.0, math.log(a / 2.0 - 2 + (phi + 2 * xi) ** 2 /
                           ((phi + xi) * xi)) +
             norm.logcdf(-math.sqrt(a) / 2.0)),
        ]
        return _signed_exp_sum(terms)

    frac = xi * xi / phi
    terms = [
        (math.sqrt(frac),
         0.5 * math.log(a) - frac * a / 8.0 - 0.5 * math.log(2 * math.pi))
        if a > 0 else (0.0, 0.0),
        (1.0, math.log(xi / phi * (2 * phi + xi) / (phi + xi)) +
         (phi + xi) * a / 2.0 +
         norm.logcdf(-(phi + xi / 2.0) / math.sqrt(phi) * math.sqrt(a))),
        (-1.0, math.log((2 * phi + xi) ** 2 / ((phi + xi) * phi) - 2 +
                        frac * a / 2.0) +
         norm.logcdf(-math.sqrt(frac) * math.sqrt(a) / 2.0)),
    ]
    return 1.0 + _signed_exp_sum(terms)


def argmax_quantile(probability, xi=1.0, phi=1.0):
    # type: (float, float, float) -> float
    """Invert :py:func:`argmax_cdf` by bisection to ``1e-8``.

    :rtype: float
    """
    if not 0.0 < probability < 1.0:
        raise InferenceException("Probability must lie in (0, 1)")

    def excess(x):
        # type: (float) -> float
        return argmax_cdf(x, xi, phi) - probability

    at_zero = excess(0.0)
    if at_zero == 0.0:
        return 0.0
    direction = 1.0 if at_zero < 0 else -1.0
    bound = 1.0
    while excess(direction * bound) * at_zero > 0:
        bound *= 2.0
        if bound > 1e8:
            raise InferenceException(
                "Quantile {} of the break date law not bracketed".format(
                    probability))
    low, high = sorted((0.0, direction * bound))
    return optimize.bisect(excess, low, high, xtol=QUANTILE_TOLERANCE)


def _regime_rows(fit, design):
    # type: (BreakFit, DesignMatrix) -> List[Tuple[int, int]]
    return [(s.start - design.offset, s.end - design.offset)
            for s in fit.segment_fits]


def _regime_moments(fit, design, residuals):
    # type: (BreakFit, DesignMatrix, np.ndarray) -> List[Tuple[np.ndarray, np.ndarray]]
    """Per regime, the second-moment matrix of ``z`` and the long-run
    covariance of ``z * u`` (both per observation).
    """
    rows = _regime_rows(fit, design)
    pooled = float(residuals @ residuals) / residuals.size
    moments = []
    for start, end in rows:
        z = design.z[start:end + 1]
        u = residuals[start:end + 1]
        q_matrix = z.T @ z / z.shape[0]
        if fit.spec.hetero_variance:
            omega = hac_covariance(z * u[:, None], fit.spec.hac).covariance
        else:
            omega = pooled * q_matrix
        moments.append((q_matrix, omega))
    return moments


def break_confidence_intervals(fit, level=DEFAULT_LEVEL):
    # type: (BreakFit, float) -> List[BreakCI]
    """Asymmetric confidence intervals of the break dates of a fit.

    Each interval uses the regime-specific moment matrices and HAC
    long-run covariances on both sides of the break and the quantiles of
    the break date limit law. The intervals are also stored on
    ``fit.confidence_intervals``.

    :param fit: Fit with at least one break and its series attached.
    :type fit: paleobreaks_core.engine.BreakFit
    :param level: Coverage probability.
    :type level: float
    :rtype: list(BreakCI)
    :raises: :py:class:`paleobreaks_core.exceptions.InferenceException`
    """
    if fit.m is None or fit.m < 1:
        raise InferenceException("Confidence intervals need a break")
    if not 0.0 < level < 1.0:
        raise InferenceException("Level must lie in (0, 1)")

    design = fit.design
    residuals = residuals_of(design, fit.segment_fits, fit.beta)
    moments = _regime_moments(fit, design, residuals)
    tail = (1.0 - level) / 2.0
    series = fit.series if isinstance(fit.series, BinnedSeries) else None
    first, last = design.offset, design.offset + design.n_obs - 1

    intervals = []
    for i, break_index in enumerate(fit.break_indices):
        before, after = fit.segment_fits[i], fit.segment_fits[i + 1]
        change = np.asarray(after.delta) - np.asarray(before.delta)
        (q1, omega1), (q2, omega2) = moments[i], moments[i + 1]
        qprod1, qprod2 = change @ q1 @ change, change @ q2 @ change
        oprod1, oprod2 = change @ omega1 @ change, change @ omega2 @ change
        estimate = (series.age_of(break_index)
                    if series is not None else None)

        if min(qprod1, qprod2, oprod1, oprod2) <= VANISHING_CHANGE:
            logger.warning(
                "Break %d has a vanishing coefficient change; its "
                "interval is unbounded", break_index)
            intervals.append(BreakCI(
                break_index=break_index, estimate=estimate, level=level,
                flags=["vanishing-change"]))
            continue

        xi = qprod2 / qprod1
        phi = oprod2 / oprod1
        scale = oprod1 / qprod1 ** 2
        upper_q = argmax_quantile(1.0 - tail, xi, phi)
        lower_q = argmax_quantile(tail, xi, phi)
        raw_lower = int(math.floor(break_index - upper_q * scale))
        raw_upper = int(math.ceil(break_index - lower_q * scale))
        lower_index = max(raw_lower, first)
        upper_index = min(raw_upper, last)
        flags = []
        if (lower_index, upper_index) != (raw_lower, raw_upper):
            logger.info(
                "Interval of break %d truncated to the sample [%d, %d]",
                break_index, first, last)
            flags.append("truncated")
        intervals.append(BreakCI(
            break_index=break_index, estimate=estimate,
            lower=series.age_of(lower_index) if series is not None else None,
            upper=series.age_of(upper_index) if series is not None else None,
            lower_index=lower_index, upper_index=upper_index, level=level,
            flags=flags))

    fit.confidence_intervals = intervals
    return intervals


def coefficient_covariance(fit):
    # type: (BreakFit) -> np.ndarray
    """HAC sandwich covariance of the regime coefficients followed by the
    state-independent ones, with regime-specific long-run covariances.

    :rtype: numpy.ndarray
    """
    design = fit.design
    rows = _regime_rows(fit, design)
    regressors = regime_design(design, rows)
    residuals = residuals_of(design, fit.segment_fits, fit.beta)
    q = design.z.shape[1]
    fixed = list(range(q * len(rows), regressors.shape[1]))

    meat = np.zeros((regressors.shape[1], regressors.shape[1]))
    if fit.spec.hetero_variance:
        for j, (start, end) in enumerate(rows):
            active = list(range(j * q, (j + 1) * q)) + fixed
            scores = (regressors[start:end + 1][:, active] *
                      residuals[start:end + 1, None])
            omega = hac_covariance(scores, fit.spec.hac).covariance
            meat[np.ix_(active, active)] += scores.shape[0] * omega
    else:
        scores = regressors * residuals[:, None]
        meat = scores.shape[0] * hac_covariance(
            scores, fit.spec.hac).covariance

    bread = np.linalg.pinv(regressors.T @ regressors)
    covariance = bread @ meat @ bread
    return (covariance + covariance.T) / 2.0


def attach_standard_errors(fit):
    # type: (BreakFit) -> BreakFit
    """Fill ``delta_se`` of every regime and ``beta_se`` of the fit.

    :rtype: paleobreaks_core.engine.BreakFit
    """
    covariance = coefficient_covariance(fit)
    errors = np.sqrt(np.clip(np.diag(covariance), 0.0, None))
    q = fit.spec.q
    for j, segment in enumerate(fit.segment_fits):
        segment.delta_se = [float(e) for e in errors[j * q:(j + 1) * q]]
    fit.beta.beta_se = [float(e) for e in errors[q * len(fit.segment_fits):]]
    return fit


class IcRow(object):
    """Information criteria of one break count."""
    deserialized_types = {
        'm': 'int',
        'ssr': 'float',
        'n_params': 'int',
        'bic': 'float',
        'lwz': 'float',
        'kt': 'float'
    }

    attribute_map = {
        'm': 'm',
        'ssr': 'ssr',
        'n_params': 'n_params',
        'bic': 'bic',
        'lwz': 'lwz',
        'kt': 'kt'
    }

    def __init__(self, m=None, ssr=None, n_params=None, bic=None, lwz=None,
                 kt=None):
        # type: (int, float, int, float, float, Optional[float]) -> None
        self.m = m
        self.ssr = ssr
        self.n_params = n_params
        self.bic = bic
        self.lwz = lwz
        self.kt = kt

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, IcRow):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class IcTable(object):
    """Information criteria by break count with the selected counts.

    Each selection is the first minimizer of its column, so ties go to
    the smallest ``m``.
    """
    deserialized_types = {
        'rows': 'list[paleobreaks_core.inference.IcRow]',
        'n_obs': 'int',
        'selected_bic': 'int',
        'selected_lwz': 'int',
        'selected_kt': 'int'
    }

    attribute_map = {
        'rows': 'rows',
        'n_obs': 'n_obs',
        'selected_bic': 'selected_bic',
        'selected_lwz': 'selected_lwz',
        'selected_kt': 'selected_kt'
    }

    def __init__(self, rows=None, n_obs=None, selected_bic=None,
                 selected_lwz=None, selected_kt=None):
        # type: (List[IcRow], int, int, int, Optional[int]) -> None
        self.rows = rows or []
        self.n_obs = n_obs
        self.selected_bic = selected_bic
        self.selected_lwz = selected_lwz
        self.selected_kt = selected_kt

    @property
    def selected(self):
        # type: () -> Dict[str, Optional[int]]
        return {"bic": self.selected_bic, "lwz": self.selected_lwz,
                "kt": self.selected_kt}

    def to_frame(self):
        # type: () -> pd.DataFrame
        """Table with columns ``m, ssr, bic, lwz, kt``."""
        return pd.DataFrame(
            [[r.m, r.ssr, r.bic, r.lwz, r.kt] for r in self.rows],
            columns=["m", "ssr", "bic", "lwz", "kt"])


def n_parameters(m, q, p):
    # type: (int, int, int) -> int
    """Estimated coefficient count including the break dates."""
    return (m + 1) * q + p + m


def _first_argmin(values):
    # type: (List[float]) -> Optional[int]
    array = np.asarray(values, dtype=float)
    if array.size == 0 or np.all(np.isnan(array)):
        return None
    return int(np.nanargmin(array))


def information_criteria(ssr_by_m, n_obs, q, p):
    # type: (SsrByM, int, int, int) -> IcTable
    """BIC, LWZ and KT for every break count of an SSR path.

    ``BIC = ln(SSR/T) + p_m ln(T)/T``;
    ``LWZ = ln(SSR/(T - p_m)) + p_m 0.299 (ln T)^2.1 / T``;
    ``KT = ln(SSR/T) + (q sum_j ln(T_j) + p ln(T) + 2 m ln(T)) / T``
    with ``T_j`` the regime lengths and ``p_m = (m + 1) q + p + m``.

    :param ssr_by_m: Optimal SSR per break count from ``m = 0``.
    :type ssr_by_m: paleobreaks_core.engine.SsrByM
    :param n_obs: Estimation sample size T.
    :type n_obs: int
    :param q: Regime-specific coefficient count.
    :type q: int
    :param p: State-independent coefficient count.
    :type p: int
    :rtype: IcTable
    """
    log_t = math.log(n_obs)
    rows = []
    for m, ssr in enumerate(ssr_by_m.optimal_ssr):
        n_params = n_parameters(m, q, p)
        with np.errstate(divide="ignore"):
            log_ssr = float(np.log(ssr / n_obs))
            log_lwz = (float(np.log(ssr / (n_obs - n_params)))
                       if n_obs > n_params else float("nan"))
        bic = log_ssr + n_params * log_t / n_obs
        lwz = log_lwz + n_params * LWZ_C0 * log_t ** (2 + LWZ_DELTA0) / n_obs
        kt = None
        if ssr_by_m.optimal_breaks[m] is not None and math.isfinite(ssr):
            lengths = ssr_by_m.segment_lengths(m)
            kt = log_ssr + (q * sum(math.log(n) for n in lengths) +
                            p * log_t + 2 * m * log_t) / n_obs
        rows.append(IcRow(m=m, ssr=float(ssr), n_params=n_params, bic=bic,
                          lwz=lwz, kt=kt))

    def pick(name):
        # type: (str) -> Optional[int]
        values = [getattr(r, name) for r in rows]
        values = [float("nan") if v is None else v for v in values]
        return _first_argmin(values)

    return IcTable(rows=rows, n_obs=n_obs, selected_bic=pick("bic"),
                   selected_lwz=pick("lwz"), selected_kt=pick("kt"))


class AdfResult(object):
    """Augmented Dickey-Fuller unit-root test outcome.

    The test is left-tailed: the unit-root null is rejected when the
    statistic lies below the critical value.
    """
    deserialized_types = {
        'statistic': 'float',
        'lag_order': 'int',
        'p_value': 'float',
        'critical_values': 'dict(str, float)',
        'critical_value_1pct': 'float',
        'reject_at_1pct': 'bool',
        'alpha': 'float',
        'reject': 'bool',
        'regression': 'str',
        'n_obs': 'int'
    }

    attribute_map = {
        'statistic': 'statistic',
        'lag_order': 'lag_order',
        'p_value': 'p_value',
        'critical_values': 'critical_values',
        'critical_value_1pct': 'critical_value_1pct',
        'reject_at_1pct': 'reject_at_1pct',
        'alpha': 'alpha',
        'reject': 'reject',
        'regression': 'regression',
        'n_obs': 'n_obs'
    }

    def __init__(
            self, statistic=None, lag_order=None, p_value=None,
            critical_values=None, critical_value_1pct=None,
            reject_at_1pct=None, alpha=0.01, reject=None, regression="c",
            n_obs=None):
        # type: (float, int, float, Dict[str, float], float, bool, float, bool, str, int) -> None
        self.statistic = statistic
        self.lag_order = lag_order
        self.p_value = p_value
        self.critical_values = critical_values or {}
        self.critical_value_1pct = critical_value_1pct
        self.reject_at_1pct = reject_at_1pct
        self.alpha = alpha
        self.reject = reject
        self.regression = regression
        self.n_obs = n_obs


def adf_max_lag(n_obs):
    # type: (int) -> int
    return int(math.floor(12 * (n_obs / 100.0) ** 0.25))


def adf_test(series, alpha=0.01, regression="c"):
    # type: (Union[BinnedSeries, Sequence[float]], float, str) -> AdfResult
    """ADF test with the lag order chosen by AIC up to
    ``floor(12 (T/100)^(1/4))``.

    :param series: Binned series or plain values, at least 25 long.
    :param alpha: Significance level, one of 0.01, 0.05, 0.10.
    :type alpha: float
    :param regression: ``"c"`` for an intercept, ``"ct"`` for intercept
        and trend.
    :type regression: str
    :rtype: AdfResult
    :raises: :py:class:`paleobreaks_core.exceptions.InferenceException`
    """
    values = series_values(series)
    if values.size < ADF_MIN_OBS:
        raise InferenceException(
            "ADF test needs at least {} observations, got {}".format(
                ADF_MIN_OBS, values.size))
    if regression not in ("c", "ct"):
        raise InferenceException(
            "Unsupported ADF regression '{}'".format(regression))
    level_key = ADF_LEVELS.get(round(alpha, 4))
    if level_key is None:
        raise InferenceException(
            "Unsupported ADF significance level {}".format(alpha))

    statistic, p_value, lag_order, n_used, critical, _ = adfuller(
        values, maxlag=adf_max_lag(values.size), regression=regression,
        autolag="AIC")
    critical = {k: float(v) for k, v in critical.items()}
    return AdfResult(
        statistic=float(statistic), lag_order=int(lag_order),
        p_value=float(p_value), critical_values=critical,
        critical_value_1pct=critical["1%"],
        reject_at_1pct=bool(statistic < critical["1%"]), alpha=alpha,
        reject=bool(statistic < critical[level_key]),
        regression=regression, n_obs=int(n_used))
