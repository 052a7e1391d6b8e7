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

from .exceptions import BinningException

if typing.TYPE_CHECKING:
    from typing import List, Optional, Sequence, Tuple, Union
    from .ingest import RawSeries

#: Reference climate-state boundaries in Ma, oldest first.
WESTERHOLD_BOUNDARIES = (56.0, 47.0, 34.0, 13.9, 3.3)
#: Names of the states delimited by :py:data:`WESTERHOLD_BOUNDARIES`.
WESTERHOLD_STATE_NAMES = (
    "Warmhouse I", "Hothouse", "Warmhouse II", "Coolhouse I",
    "Coolhouse II", "Icehouse")

# ages within this many Ma label the same bin center
AGE_TOLERANCE = 1e-9
# edge quotient rounding, absorbs representation error of Ma * 1000
_EDGE_DECIMALS = 9


class BinnedSeries(object):
    """Equidistant series produced by mean binning.

    ``age(i) = start_age - direction * i * bin_size / 1000`` maps a
    position to the bin-center age in Ma; ``direction`` is 1 for the
    natural oldest-to-youngest order and -1 for a time-reversed series.

    :param bin_size: Bin width in kyr.
    :type bin_size: float
    :param start_age: Center age in Ma of the first bin.
    :type start_age: float
    :param values: Bin values.
    :type values: Sequence[float]
    :param interpolated: Per bin, True when the value was filled by
        interpolation. Derived from ``n_source_obs`` when omitted.
    :type interpolated: Sequence[bool]
    :param n_source_obs: Number of raw observations per bin. Defaults
        to one per bin.
    :type n_source_obs: Sequence[int]
    :param direction: 1 oldest to youngest, -1 youngest to oldest.
    :type direction: int
    :raises: :py:class:`paleobreaks_core.exceptions.BinningException`
    """
    deserialized_types = {
        'bin_size': 'float',
        'start_age': 'float',
        'values': 'list[float]',
        'interpolated': 'list[bool]',
        'n_source_obs': 'list[int]',
        'direction': 'int'
    }

    attribute_map = {
        'bin_size': 'bin_size_kyr',
        'start_age': 'start_age_Ma',
        'values': 'values',
        'interpolated': 'interpolated',
        'n_source_obs': 'n_source_obs',
        'direction': 'direction'
    }

    def __init__(
            self, bin_size, start_age, values, interpolated=None,
            n_source_obs=None, direction=1):
        # type: (float, float, Sequence[float], Optional[Sequence[bool]], Optional[Sequence[int]], int) -> None
        if bin_size is None or bin_size <= 0:
            raise BinningException(
                "Bin size must be positive, got {}".format(bin_size))
        values = np.asarray(values, dtype=float).reshape(-1)
        if values.size < 1:
            raise BinningException("A binned series needs at least 1 bin")
        if not np.all(np.isfinite(values)):
            raise BinningException("Every bin value must be finite")
        if direction not in (1, -1):
            raise BinningException("Direction must be 1 or -1")

        if n_source_obs is None:
            if interpolated is None:
                n_source_obs = np.ones(values.size, dtype=np.int64)
            else:
                n_source_obs = np.where(
                    np.asarray(interpolated, dtype=bool), 0, 1)
        n_source_obs = np.asarray(n_source_obs, dtype=np.int64).reshape(-1)
        derived = n_source_obs == 0
        if interpolated is not None:
            interpolated = np.asarray(interpolated, dtype=bool).reshape(-1)
            if not np.array_equal(interpolated, derived):
                raise BinningException(
                    "Interpolation flags must mark exactly the bins without "
                    "source observations")
        if n_source_obs.size != values.size:
            raise BinningException(
                "Per-bin counts and values differ in length")

        self.bin_size = float(bin_size)
        self.start_age = float(start_age)
        self.values = values
        self.n_source_obs = n_source_obs
        self.interpolated = derived
        self.direction = int(direction)

    def __len__(self):
        # type: () -> int
        return int(self.values.size)

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, BinnedSeries):
            return False
        return (self.bin_size == other.bin_size and
                np.isclose(self.start_age, other.start_age, rtol=0.0,
                           atol=AGE_TOLERANCE) and
                self.direction == other.direction and
                np.array_equal(self.values, other.values) and
                np.array_equal(self.n_source_obs, other.n_source_obs))

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    @property
    def step(self):
        # type: () -> float
        """Signed age decrement in Ma from one position to the next."""
        return self.direction * self.bin_size / 1000.0

    @property
    def ages(self):
        # type: () -> np.ndarray
        """Bin-center ages in Ma, in series order."""
        return self.age_of(np.arange(len(self)))

    def age_of(self, index):
        # type: (Union[int, float, np.ndarray]) -> Union[float, np.ndarray]
        """Age in Ma of a position; positions outside the sample are
        extrapolated along the same affine map.
        """
        result = self.start_age - np.asarray(index, dtype=float) * self.step
        if np.ndim(result) == 0:
            return float(result)
        return result

    def index_of(self, age):
        # type: (float) -> int
        """Nearest position of an age in Ma."""
        return int(np.round((self.start_age - age) / self.step))

    def reversed(self):
        # type: () -> BinnedSeries
        """Return the series in reversed time order.

        :rtype: BinnedSeries
        """
        return BinnedSeries(
            bin_size=self.bin_size, start_age=self.age_of(len(self) - 1),
            values=self.values[::-1], n_source_obs=self.n_source_obs[::-1],
            direction=-self.direction)

    def between(self, older, younger):
        # type: (float, float) -> BinnedSeries
        """Sub-series of the bins whose center age lies in
        ``(younger, older]``.

        :raises: :py:class:`paleobreaks_core.exceptions.BinningException`
            if no bin falls in the window.
        """
        ages = self.ages
        positions = np.flatnonzero((ages <= older) & (ages > younger))
        if positions.size == 0:
            raise BinningException(
                "No bins between {} and {} Ma".format(older, younger))
        first, last = positions[0], positions[-1]
        return BinnedSeries(
            bin_size=self.bin_size, start_age=self.age_of(first),
            values=self.values[first:last + 1],
            n_source_obs=self.n_source_obs[first:last + 1],
            direction=self.direction)


class StateSummary(object):
    """Descriptive statistics of one climate state (or of the whole
    sample). Statistics are None when undefined for the state size.
    """
    deserialized_types = {
        'label': 'str',
        'older_age': 'float',
        'younger_age': 'float',
        'mean': 'float',
        'sd': 'float',
        'max': 'float',
        'min': 'float',
        'n': 'int'
    }

    attribute_map = {
        'label': 'state',
        'older_age': 'older_age_Ma',
        'younger_age': 'younger_age_Ma',
        'mean': 'mean',
        'sd': 'sd',
        'max': 'max',
        'min': 'min',
        'n': 'n'
    }

    def __init__(
            self, label=None, older_age=None, younger_age=None, mean=None,
            sd=None, max=None, min=None, n=None):
        # type: (str, float, float, float, float, float, float, int) -> None
        self.label = label
        self.older_age = older_age
        self.younger_age = younger_age
        self.mean = mean
        self.sd = sd
        self.max = max
        self.min = min
        self.n = n

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, StateSummary):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def interpolate_gaps(values):
    # type: (Sequence[Optional[float]]) -> Tuple[np.ndarray, np.ndarray]
    """Fill interior holes by linear interpolation between the
    bracketing filled bins.

    :param values: Bin values with holes given as None or NaN.
    :type values: Sequence[Optional[float]]
    :return: Filled values and the per-bin interpolation flags.
    :rtype: tuple(numpy.ndarray, numpy.ndarray)
    :raises: :py:class:`paleobreaks_core.exceptions.BinningException`
        if every bin, the first bin or the last bin is empty.
    """
    values = np.asarray(
        [np.nan if v is None else v for v in values], dtype=float)
    holes = np.isnan(values)
    if holes.all():
        raise BinningException("All bins are empty")
    if holes[0] or holes[-1]:
        raise BinningException("First and last bins must be filled")

    filled = values.copy()
    if holes.any():
        positions = np.arange(values.size)
        filled[holes] = np.interp(
            positions[holes], positions[~holes], values[~holes])
    return filled, holes


def bin_mean(series, bin_size):
    # type: (RawSeries, float) -> BinnedSeries
    """Mean-bin a raw record into an equidistant series.

    Bins are anchored at the present: bin ``k`` holds ages in
    ``(k * bin_size, (k + 1) * bin_size]`` kyr, so an age on an edge
    belongs to the younger bin. Bins are ordered oldest to youngest,
    stamped at their center, empty interior bins are filled by
    :py:func:`interpolate_gaps` and bins beyond the oldest and
    youngest observation are not produced.

    :param series: Raw record.
    :type series: paleobreaks_core.ingest.RawSeries
    :param bin_size: Bin width in kyr.
    :type bin_size: float
    :return: Binned series.
    :rtype: BinnedSeries
    :raises: :py:class:`paleobreaks_core.exceptions.BinningException`
        for a non-positive bin size or an empty series.
    """
    if bin_size is None or bin_size <= 0:
        raise BinningException(
            "Bin size must be positive, got {}".format(bin_size))
    if len(series) == 0:
        raise BinningException("Cannot bin an empty series")

    quotient = np.round(series.ages * 1000.0 / bin_size, _EDGE_DECIMALS)
    k = np.maximum(np.ceil(quotient).astype(np.int64) - 1, 0)
    k_max = int(k.max())
    n_bins = k_max - int(k.min()) + 1
    position = k_max - k

    counts = np.bincount(position, minlength=n_bins)
    sums = np.bincount(position, weights=series.values, minlength=n_bins)
    values = np.full(n_bins, np.nan)
    occupied = counts > 0
    values[occupied] = sums[occupied] / counts[occupied]

    values, _ = interpolate_gaps(values)
    return BinnedSeries(
        bin_size=bin_size,
        start_age=(k_max + 0.5) * bin_size / 1000.0,
        values=values, n_source_obs=counts)


def _describe(label, older_age, younger_age, values):
    # type: (str, float, float, np.ndarray) -> StateSummary
    n = int(values.size)
    return StateSummary(
        label=label, older_age=older_age, younger_age=younger_age,
        mean=float(values.mean()) if n else None,
        sd=float(values.std(ddof=1)) if n > 1 else None,
        max=float(values.max()) if n else None,
        min=float(values.min()) if n else None,
        n=n)


def full_sample_summary(binned):
    # type: (BinnedSeries) -> StateSummary
    """Descriptive statistics over every bin of the series."""
    ages = binned.ages
    return _describe(
        "Full sample", float(ages.max()), float(ages.min()), binned.values)


def state_summary(binned, boundaries=WESTERHOLD_BOUNDARIES, names=None):
    # type: (BinnedSeries, Sequence[float], Optional[Sequence[str]]) -> List[StateSummary]
    """Per-state descriptive statistics for given state boundaries.

    A bin belongs to the older state when its center age is greater
    than the boundary. States are reported oldest first; ``sd`` uses
    the ``n - 1`` divisor.

    :param binned: Binned series, in either time direction.
    :type binned: BinnedSeries
    :param boundaries: Boundary ages in Ma, strictly decreasing.
    :type boundaries: Sequence[float]
    :param names: One label per state, defaults to the reference state
        names for the reference boundaries and "State i" otherwise.
    :type names: Sequence[str]
    :return: One summary per state.
    :rtype: list(StateSummary)
    :raises: :py:class:`paleobreaks_core.exceptions.BinningException`
        for non-monotone boundaries or boundaries outside the span.
    """
    boundaries = [float(b) for b in boundaries]
    if any(b_next >= b for b, b_next in zip(boundaries, boundaries[1:])):
        raise BinningException(
            "Boundaries must be strictly decreasing in Ma: {}".format(
                boundaries))

    ages = binned.ages
    oldest, youngest = float(ages.max()), float(ages.min())
    for b in boundaries:
        if not youngest < b < oldest:
            raise BinningException(
                "Boundary {} Ma outside the series span ({}, {})".format(
                    b, oldest, youngest))

    if names is None:
        if tuple(boundaries) == WESTERHOLD_BOUNDARIES:
            names = WESTERHOLD_STATE_NAMES
        else:
            names = ["State {}".format(i + 1)
                     for i in range(len(boundaries) + 1)]
    if len(names) != len(boundaries) + 1:
        raise BinningException(
            "Expected {} state names, got {}".format(
                len(boundaries) + 1, len(names)))

    edges = [oldest] + boundaries + [youngest]
    upper = [np.inf] + boundaries
    lower = boundaries + [-np.inf]
    summaries = []
    for j, name in enumerate(names):
        mask = (ages > lower[j]) & (ages <= upper[j])
        summaries.append(_describe(
            name, edges[j], edges[j + 1], binned.values[mask]))
    return summaries
