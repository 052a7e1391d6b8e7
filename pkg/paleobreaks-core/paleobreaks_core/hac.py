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
from scipy import signal

from .exceptions import HacException, SingularRegressionException

if typing.TYPE_CHECKING:
    from typing import List, Optional, Tuple

logger = logging.getLogger("paleobreaks.core")

QUADRATIC_SPECTRAL = "quadratic-spectral"
AR1_APPROXIMATION = "ar1"

EIGENVALUE_BOUND = 0.97
CONDITION_LIMIT = 1e12
QS_BANDWIDTH_CONSTANT = 1.3221


class HacConfig(object):
    """Long-run covariance settings.

    Only the quadratic-spectral kernel with the AR(1) plug-in bandwidth
    is offered. ``prewhiten`` and ``bandwidth`` (a fixed bandwidth that
    overrides the plug-in rule) exist for ablation runs.

    :param prewhiten: Filter scores through a VAR(1) before smoothing.
    :type prewhiten: bool
    :param kernel: Kernel name, only ``"quadratic-spectral"``.
    :type kernel: str
    :param bandwidth_rule: Bandwidth rule name, only ``"ar1"``.
    :type bandwidth_rule: str
    :param bandwidth: Fixed bandwidth, None for the plug-in rule.
    :type bandwidth: float
    :raises: :py:class:`paleobreaks_core.exceptions.HacException`
    """
    deserialized_types = {
        'prewhiten': 'bool',
        'kernel': 'str',
        'bandwidth_rule': 'str',
        'bandwidth': 'float'
    }

    attribute_map = {
        'prewhiten': 'prewhiten',
        'kernel': 'kernel',
        'bandwidth_rule': 'bandwidth_rule',
        'bandwidth': 'bandwidth'
    }

    def __init__(
            self, prewhiten=True, kernel=QUADRATIC_SPECTRAL,
            bandwidth_rule=AR1_APPROXIMATION, bandwidth=None):
        # type: (bool, str, str, Optional[float]) -> None
        if kernel != QUADRATIC_SPECTRAL:
            raise HacException("Unsupported kernel: {}".format(kernel))
        if bandwidth_rule != AR1_APPROXIMATION:
            raise HacException(
                "Unsupported bandwidth rule: {}".format(bandwidth_rule))
        if bandwidth is not None and bandwidth < 0:
            raise HacException("Bandwidth must be >= 0")
        self.prewhiten = bool(prewhiten)
        self.kernel = kernel
        self.bandwidth_rule = bandwidth_rule
        self.bandwidth = bandwidth

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, HacConfig):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


class HacResult(object):
    """Long-run covariance estimate.

    :param covariance: Symmetric PSD matrix over the score dimension.
    :type covariance: numpy.ndarray
    :param bandwidth: Bandwidth used by the kernel.
    :type bandwidth: float
    :param prewhitening_coefficients: VAR(1) matrix used for
        recoloring, None when no prewhitening took place.
    :type prewhitening_coefficients: numpy.ndarray
    :param flags: Notes such as ``"prewhitening-skipped"`` or
        ``"psd-clipped"``.
    :type flags: list(str)
    """

    def __init__(
            self, covariance, bandwidth, prewhitening_coefficients=None,
            flags=None):
        # type: (np.ndarray, float, Optional[np.ndarray], List[str]) -> None
        self.covariance = covariance
        self.bandwidth = bandwidth
        self.prewhitening_coefficients = prewhitening_coefficients
        self.flags = flags or []

    @property
    def prewhitened(self):
        # type: () -> bool
        return self.prewhitening_coefficients is not None


def qs_kernel(x):
    # type: (typing.Union[float, np.ndarray]) -> typing.Union[float, np.ndarray]
    """Quadratic-spectral kernel weight, with ``k(0) = 1``.

    :param x: Lag divided by bandwidth.
    :type x: Union[float, numpy.ndarray]
    :rtype: Union[float, numpy.ndarray]
    """
    x = np.asarray(x, dtype=float)
    z = 6.0 * np.pi * x / 5.0
    safe = np.where(x == 0.0, 1.0, x)
    safe_z = np.where(x == 0.0, 1.0, z)
    weight = 25.0 / (12.0 * np.pi ** 2 * safe ** 2) * (
        np.sin(safe_z) / safe_z - np.cos(safe_z))
    weight = np.where(x == 0.0, 1.0, weight)
    if weight.ndim == 0:
        return float(weight)
    return weight


def _as_matrix(scores):
    # type: (np.ndarray) -> np.ndarray
    scores = np.asarray(scores, dtype=float)
    if scores.ndim == 1:
        scores = scores[:, None]
    if scores.ndim != 2:
        raise HacException("Scores must be a vector or a T x d matrix")
    return scores


def prewhiten(scores, eigenvalue_bound=EIGENVALUE_BOUND):
    # type: (np.ndarray, float) -> Tuple[np.ndarray, np.ndarray]
    """Fit a VAR(1) without intercept to the scores.

    Singular values of the coefficient matrix are capped at
    ``eigenvalue_bound``, which bounds every eigenvalue modulus by the
    same value; residuals are computed with the capped matrix.

    :param scores: T x d score sequence (or a length-T vector).
    :type scores: numpy.ndarray
    :param eigenvalue_bound: Cap on the coefficient matrix.
    :type eigenvalue_bound: float
    :return: Filtered residuals (T - 1 rows) and the d x d coefficient
        matrix ``A`` with ``v_t = A v_{t-1} + e_t``.
    :rtype: tuple(numpy.ndarray, numpy.ndarray)
    :raises: :py:class:`paleobreaks_core.exceptions.SingularRegressionException`
    """
    v = _as_matrix(scores)
    n_obs, dim = v.shape
    if n_obs < dim + 2:
        raise HacException(
            "Prewhitening needs at least {} observations, got {}".format(
                dim + 2, n_obs))

    lagged, current = v[:-1], v[1:]
    gram = lagged.T @ lagged
    if (np.linalg.matrix_rank(gram) < dim or
            np.linalg.cond(gram) > CONDITION_LIMIT):
        raise SingularRegressionException(
            "Prewhitening regression is singular")

    coefficients = np.linalg.solve(gram, lagged.T @ current).T
    left, singular, right = np.linalg.svd(coefficients)
    if singular.max() > eigenvalue_bound:
        coefficients = (
            left @ np.diag(np.minimum(singular, eigenvalue_bound)) @ right)
    return current - lagged @ coefficients.T, coefficients


def ar1_bandwidth(residuals):
    # type: (np.ndarray) -> float
    """AR(1) plug-in bandwidth for the quadratic-spectral kernel, with
    equal weights over components.

    :param residuals: T x d sequence.
    :type residuals: numpy.ndarray
    :rtype: float
    """
    e = _as_matrix(residuals)
    n_obs = e.shape[0]
    numerator = denominator = 0.0
    for component in e.T:
        lagged, current = component[:-1], component[1:]
        lag_ss = float(lagged @ lagged)
        if lag_ss <= 0.0:
            continue
        rho = float(lagged @ current) / lag_ss
        sigma2 = float(np.mean((current - rho * lagged) ** 2))
        if sigma2 <= 0.0:
            continue
        one_minus = max(1.0 - rho, 1e-8)
        numerator += 4.0 * rho ** 2 * sigma2 ** 2 / one_minus ** 8
        denominator += sigma2 ** 2 / one_minus ** 4
    if denominator <= 0.0:
        return 0.0
    return QS_BANDWIDTH_CONSTANT * (numerator / denominator * n_obs) ** 0.2


def _autocovariances(e):
    # type: (np.ndarray) -> np.ndarray
    """Gamma_j for j = 0..T-1, each d x d, ``Gamma_j[a, b]`` being the
    average of ``e_a[t] * e_b[t - j]``.
    """
    n_obs, dim = e.shape
    gammas = np.empty((n_obs, dim, dim))
    for a in range(dim):
        for b in range(dim):
            full = signal.correlate(e[:, a], e[:, b], mode="full",
                                    method="fft")
            gammas[:, a, b] = full[n_obs - 1:] / n_obs
    gammas[0] = e.T @ e / n_obs
    return gammas


def long_run_variance(residuals, bandwidth):
    # type: (np.ndarray, float) -> np.ndarray
    """Kernel-weighted sum of autocovariances.

    :param residuals: T x d sequence.
    :type residuals: numpy.ndarray
    :param bandwidth: Kernel bandwidth; 0 keeps only the lag-0 term.
    :type bandwidth: float
    :rtype: numpy.ndarray
    """
    e = _as_matrix(residuals)
    n_obs = e.shape[0]
    if bandwidth <= 0.0 or n_obs < 2:
        return e.T @ e / n_obs

    gammas = _autocovariances(e)
    weights = qs_kernel(np.arange(1, n_obs) / bandwidth)
    weighted = np.tensordot(weights, gammas[1:], axes=(0, 0))
    return gammas[0] + weighted + weighted.T


def _clip_psd(matrix, flags):
    # type: (np.ndarray, List[str]) -> np.ndarray
    matrix = (matrix + matrix.T) / 2.0
    eigenvalues, vectors = np.linalg.eigh(matrix)
    if eigenvalues.min() < 0.0:
        flags.append("psd-clipped")
        logger.debug("Clipped negative eigenvalues %s", eigenvalues)
        eigenvalues = np.maximum(eigenvalues, 0.0)
        matrix = (vectors * eigenvalues) @ vectors.T
        matrix = (matrix + matrix.T) / 2.0
    return matrix


def hac_covariance(scores, config=None):
    # type: (np.ndarray, Optional[HacConfig]) -> HacResult
    """Prewhitened quadratic-spectral long-run covariance of scores.

    :param scores: T x d score sequence (or a length-T vector), T >= 4.
    :type scores: numpy.ndarray
    :param config: Settings, defaults to :py:class:`HacConfig`.
    :type config: HacConfig
    :return: Covariance with bandwidth and prewhitening diagnostics.
    :rtype: HacResult
    :raises: :py:class:`paleobreaks_core.exceptions.HacException`
    """
    config = config or HacConfig()
    v = _as_matrix(scores)
    n_obs, dim = v.shape
    if n_obs < 4:
        raise HacException(
            "HAC estimation needs at least 4 observations, got {}".format(
                n_obs))
    if not np.any(v):
        return HacResult(
            covariance=np.zeros((dim, dim)), bandwidth=0.0,
            flags=["zero-scores"])

    flags = []  # type: List[str]
    coefficients = None
    filtered = v
    if config.prewhiten:
        try:
            filtered, coefficients = prewhiten(v)
        except SingularRegressionException:
            logger.debug("Prewhitening skipped: singular regression")
            flags.append("prewhitening-skipped")

    if config.bandwidth is not None:
        bandwidth = float(config.bandwidth)
    else:
        bandwidth = ar1_bandwidth(filtered)

    covariance = long_run_variance(filtered, bandwidth)
    if coefficients is not None:
        recolor = np.linalg.inv(np.eye(dim) - coefficients)
        covariance = recolor @ covariance @ recolor.T

    return HacResult(
        covariance=_clip_psd(covariance, flags), bandwidth=bandwidth,
        prewhitening_coefficients=coefficients, flags=flags)
