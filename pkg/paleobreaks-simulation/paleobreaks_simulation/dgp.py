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
from scipy.signal import lfilter

from .exceptions import SimulationException

if typing.TYPE_CHECKING:
    from typing import Dict, Optional, Tuple, Union

DEFAULT_N_OBS = 500
DEFAULT_BREAK_AT = 250
DEFAULT_PSI = 0.5
DEFAULT_THETA = 0.5

# label: (sigma, c1, c2, phi1, phi2, description)
DGP_TABLE = {
    "1": (1.0, 0.1, 0.2, 1.0, 1.0,
          "Small break in the drift term of a RW"),
    "2": (1.0, 0.1, 1.0, 1.0, 1.0,
          "Large break in the drift term of a RW"),
    "3": (1.0, 0.1, 1.0, 0.95, 0.95,
          "Large break in the intercept and a fixed AR-coefficient"),
    "4": (1.0, 0.1, 1.0, 0.95, 1.0,
          "Break in the intercept and small break in the AR-coefficient"),
    "5": (1.0, 0.1, 1.0, 0.5, 1.0,
          "Break in the intercept and large break in the AR-coefficient"),
    "6": (1.0, 1.0, 1.0, 1.0, 1.0,
          "RW with a drift without a breakpoint"),
    "7": (0.5, 0.1, 1.0, 1.0, 1.0,
          "Large break in the drift of a RW with low variance"),
    "8": (1.0, 0.1, 1.0, 0.5, 0.5,
          "Large break in the intercept and a low fixed AR-coefficient"),
}  # type: Dict[str, Tuple[float, float, float, float, float, str]]

ARMA_LABELS = ("2s", "3s", "4s", "5s", "7s", "8s")


class ErrorKind(Enum):
    """Error process of a data-generating process.

    * ``IID``: i.i.d. Normal(0, sigma^2).
    * ``ARMA``: stationary ARMA(1, 1) with variance sigma^2.
    """
    IID = "iid"
    ARMA = "arma"


class DgpConfig(object):
    """Two-regime AR(1) data-generating process with one break.

    ``y_t = c1 + phi1 * y_{t-1} + e_t`` for ``t <= break_at`` and
    ``y_t = c2 + phi2 * y_{t-1} + e_t`` afterwards, ``t = 1..n_obs``,
    started at ``y_0 = 0``.

    :param sigma: Standard deviation of the errors.
    :type sigma: float
    :param c1: Intercept of the first regime.
    :type c1: float
    :param c2: Intercept of the second regime.
    :type c2: float
    :param phi1: AR coefficient of the first regime.
    :type phi1: float
    :param phi2: AR coefficient of the second regime.
    :type phi2: float
    :param n_obs: Number of generated observations.
    :type n_obs: int
    :param break_at: Last time of the first regime.
    :type break_at: int
    :param error_kind: Error process, a :py:class:`ErrorKind` or its
        value string.
    :type error_kind: Union[ErrorKind, str]
    :param psi: AR coefficient of ARMA errors.
    :type psi: float
    :param theta: MA coefficient of ARMA errors.
    :type theta: float
    :param include_initial: Prepend ``y_0`` to the generated series so
        estimation conditions on it.
    :type include_initial: bool
    :param label: Table label such as ``"5s"``.
    :type label: str
    :raises: :py:class:`paleobreaks_simulation.exceptions.SimulationException`
    """
    deserialized_types = {
        'sigma': 'float',
        'c1': 'float',
        'c2': 'float',
        'phi1': 'float',
        'phi2': 'float',
        'n_obs': 'int',
        'break_at': 'int',
        'error_kind': 'str',
        'psi': 'float',
        'theta': 'float',
        'include_initial': 'bool',
        'label': 'str'
    }

    attribute_map = {
        'sigma': 'sigma',
        'c1': 'c1',
        'c2': 'c2',
        'phi1': 'phi1',
        'phi2': 'phi2',
        'n_obs': 'n_obs',
        'break_at': 'break_at',
        'error_kind': 'error_kind',
        'psi': 'psi',
        'theta': 'theta',
        'include_initial': 'include_initial',
        'label': 'label'
    }

    def __init__(
            self, sigma=1.0, c1=0.0, c2=0.0, phi1=0.0, phi2=0.0,
            n_obs=DEFAULT_N_OBS, break_at=DEFAULT_BREAK_AT,
            error_kind=ErrorKind.IID, psi=DEFAULT_PSI, theta=DEFAULT_THETA,
            include_initial=False, label=None):
        # type: (float, float, float, float, float, int, int, Union[ErrorKind, str], float, float, bool, Optional[str]) -> None
        if sigma is None or sigma < 0:
            raise SimulationException(
                "Error standard deviation must be non-negative, got "
                "{}".format(sigma))
        if not 0 < break_at < n_obs:
            raise SimulationException(
                "Break time {} must lie strictly inside 1..{}".format(
                    break_at, n_obs))
        try:
            self.error_kind = ErrorKind(error_kind)
        except ValueError:
            raise SimulationException(
                "Unknown error kind '{}'".format(error_kind))
        if self.error_kind is ErrorKind.ARMA:
            if abs(psi) >= 1:
                raise SimulationException(
                    "ARMA errors need |psi| < 1, got {}".format(psi))
            if 1 + theta ** 2 + 2 * psi * theta <= 0:
                raise SimulationException(
                    "ARMA coefficients give no positive innovation variance")

        self.sigma = float(sigma)
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.phi1 = float(phi1)
        self.phi2 = float(phi2)
        self.n_obs = int(n_obs)
        self.break_at = int(break_at)
        self.psi = float(psi)
        self.theta = float(theta)
        self.include_initial = bool(include_initial)
        self.label = label

    @property
    def eta_variance(self):
        # type: () -> float
        """Innovation variance that gives ARMA errors variance sigma^2."""
        if self.error_kind is ErrorKind.IID:
            return self.sigma ** 2
        return self.sigma ** 2 * (1 - self.psi ** 2) / (
            1 + self.theta ** 2 + 2 * self.psi * self.theta)

    @property
    def has_break(self):
        # type: () -> bool
        return self.c1 != self.c2 or self.phi1 != self.phi2

    @property
    def true_break_index(self):
        # type: () -> int
        """Position of ``y_{break_at}`` in the generated series."""
        return self.break_at - 1 + int(self.include_initial)

    @property
    def series_length(self):
        # type: () -> int
        return self.n_obs + int(self.include_initial)

    def position_of(self, index):
        # type: (int) -> int
        """Time ``t`` of a series position."""
        return int(index) + 1 - int(self.include_initial)

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, DgpConfig):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def dgp_config(label, **kwargs):
    # type: (Union[str, int], typing.Any) -> DgpConfig
    """Look up a tabulated process. A trailing ``s`` selects ARMA
    errors; keyword arguments override the tabulated settings.

    :rtype: DgpConfig
    :raises: :py:class:`paleobreaks_simulation.exceptions.SimulationException`
        for unknown labels.
    """
    label = str(label).strip().lower()
    if label in ARMA_LABELS:
        base, error_kind = label[:-1], ErrorKind.ARMA
    elif label in DGP_TABLE:
        base, error_kind = label, ErrorKind.IID
    else:
        raise SimulationException(
            "Unknown DGP '{}', expected one of {}".format(
                label, ", ".join(list(DGP_TABLE) + list(ARMA_LABELS))))
    settings = dict(zip(("sigma", "c1", "c2", "phi1", "phi2"),
                        DGP_TABLE[base][:5]))
    settings.update(error_kind=error_kind, label=label)
    settings.update(kwargs)
    return DgpConfig(**settings)


def describe(label):
    # type: (Union[str, int]) -> str
    label = str(label).strip().lower()
    base = label[:-1] if label in ARMA_LABELS else label
    if base not in DGP_TABLE:
        raise SimulationException("Unknown DGP '{}'".format(label))
    description = DGP_TABLE[base][-1]
    if label in ARMA_LABELS:
        description += ", ARMA(1,1) errors"
    return description


def _generator(rng):
    # type: (Union[np.random.Generator, int, None]) -> np.random.Generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def arma_errors(n_obs, sigma, psi=DEFAULT_PSI, theta=DEFAULT_THETA,
                rng=None):
    # type: (int, float, float, float, Union[np.random.Generator, int, None]) -> np.ndarray
    """Stationary ARMA(1, 1) errors ``e_t = psi e_{t-1} + theta n_{t-1}
    + n_t`` with variance ``sigma^2``.

    The start ``(e_0, n_0)`` is drawn from its joint stationary law, so
    every returned ``e_1..e_n`` has the target variance.

    :rtype: numpy.ndarray
    """
    rng = _generator(rng)
    eta_var = sigma ** 2 * (1 - psi ** 2) / (1 + theta ** 2 + 2 * psi * theta)
    eta_sd = np.sqrt(eta_var)
    eta = rng.normal(0.0, eta_sd, n_obs + 1)
    # Cov(e_0, n_0) = eta_var
    extra = np.sqrt(max(sigma ** 2 - eta_var, 0.0))
    eps0 = eta[0] + extra * rng.normal()
    zi = [psi * eps0 + theta * eta[0]]
    errors, _ = lfilter([1.0, theta], [1.0, -psi], eta[1:], zi=zi)
    return errors


def _ar_recursion(intercept, phi, errors, previous):
    # type: (float, float, np.ndarray, float) -> np.ndarray
    path, _ = lfilter([1.0], [1.0, -phi], intercept + errors,
                      zi=[phi * previous])
    return path


def generate(config, rng=None):
    # type: (DgpConfig, Union[np.random.Generator, int, None]) -> np.ndarray
    """Simulate one path of a data-generating process.

    :param config: Process settings.
    :type config: DgpConfig
    :param rng: Generator or seed.
    :type rng: Union[numpy.random.Generator, int]
    :return: ``y_1..y_n``, or ``y_0..y_n`` when ``include_initial``.
    :rtype: numpy.ndarray
    """
    rng = _generator(rng)
    if config.error_kind is ErrorKind.ARMA:
        errors = arma_errors(config.n_obs, config.sigma, config.psi,
                             config.theta, rng)
    else:
        errors = rng.normal(0.0, config.sigma, config.n_obs)

    first = _ar_recursion(config.c1, config.phi1,
                          errors[:config.break_at], 0.0)
    second = _ar_recursion(config.c2, config.phi2,
                           errors[config.break_at:], first[-1])
    path = np.concatenate([first, second])
    if config.include_initial:
        path = np.concatenate([[0.0], path])
    return path
