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
import io
import logging
import os
import typing

import numpy as np
import pandas as pd

from .exceptions import IngestException

if typing.TYPE_CHECKING:
    from typing import List, Optional, Sequence, Union
    from .binning import BinnedSeries

logger = logging.getLogger("paleobreaks.core")

DEFAULT_AGE_COLUMN = "age_Ma"
DEFAULT_VALUE_COLUMN = "d18O_corr"
MISSING_TOKENS = frozenset(
    ["", "NA", "N/A", "NaN", "nan", "NAN", "NULL", "null", "None", "-"])


class RawSeries(object):
    """Irregularly stamped observation record.

    Ages are in Ma before present at full file precision. After
    :py:func:`load_csv` the observations are ordered oldest to
    youngest; :py:meth:`reversed` flips the order and toggles
    ``reversed_time``. Observations sharing an age are kept as
    separate rows.

    :param ages: Observation ages in Ma.
    :type ages: Sequence[float]
    :param values: Observation values, one per age.
    :type values: Sequence[float]
    :param source_label: Free text identifying the record.
    :type source_label: str
    :param dropped_rows: 1-based data row numbers removed at load
        because a value was missing.
    :type dropped_rows: list(int)
    :param reversed_time: True when ordered youngest to oldest.
    :type reversed_time: bool
    :raises: :py:class:`paleobreaks_core.exceptions.IngestException`
        for mismatched lengths, non-finite or negative entries.
    """
    deserialized_types = {
        'ages': 'list[float]',
        'values': 'list[float]',
        'source_label': 'str',
        'dropped_rows': 'list[int]',
        'reversed_time': 'bool'
    }

    attribute_map = {
        'ages': 'age_Ma',
        'values': 'value',
        'source_label': 'source_label',
        'dropped_rows': 'dropped_rows',
        'reversed_time': 'reversed_time'
    }

    def __init__(
            self, ages, values, source_label=None, dropped_rows=None,
            reversed_time=False):
        # type: (Sequence[float], Sequence[float], str, List[int], bool) -> None
        ages = np.asarray(ages, dtype=float).reshape(-1)
        values = np.asarray(values, dtype=float).reshape(-1)
        if ages.shape != values.shape:
            raise IngestException(
                "Ages and values differ in length: {} vs {}".format(
                    ages.size, values.size))
        if not np.all(np.isfinite(ages)) or np.any(ages < 0):
            raise IngestException("Every age must be finite and >= 0")
        if not np.all(np.isfinite(values)):
            raise IngestException("Every value must be finite")

        self.ages = ages
        self.values = values
        self.source_label = source_label
        self.dropped_rows = list(dropped_rows or [])
        self.reversed_time = bool(reversed_time)

    def __len__(self):
        # type: () -> int
        return int(self.ages.size)

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, RawSeries):
            return False
        return (np.array_equal(self.ages, other.ages) and
                np.array_equal(self.values, other.values) and
                self.source_label == other.source_label and
                self.dropped_rows == other.dropped_rows and
                self.reversed_time == other.reversed_time)

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other

    def reversed(self):
        # type: () -> RawSeries
        """Return the record with observation order reversed.

        :rtype: RawSeries
        """
        return RawSeries(
            ages=self.ages[::-1], values=self.values[::-1],
            source_label=self.source_label, dropped_rows=self.dropped_rows,
            reversed_time=not self.reversed_time)


class GapReport(object):
    """Sampling-gap statistics of a raw record.

    Gaps are measured in kyr between consecutive distinct ages.
    ``duplicate_stamp_count`` is the number of observations whose age
    repeats an age already seen, ``max_multiplicity`` the largest
    number of observations sharing one age.
    """
    deserialized_types = {
        'n_observations': 'int',
        'mean_gap': 'float',
        'max_gap': 'float',
        'threshold': 'float',
        'count_gaps_over_threshold': 'int',
        'duplicate_stamp_count': 'int',
        'max_multiplicity': 'int'
    }

    attribute_map = {
        'n_observations': 'n_observations',
        'mean_gap': 'mean_gap_kyr',
        'max_gap': 'max_gap_kyr',
        'threshold': 'threshold_kyr',
        'count_gaps_over_threshold': 'count_gaps_over_threshold',
        'duplicate_stamp_count': 'duplicate_stamp_count',
        'max_multiplicity': 'max_multiplicity'
    }

    def __init__(
            self, n_observations=None, mean_gap=None, max_gap=None,
            threshold=None, count_gaps_over_threshold=None,
            duplicate_stamp_count=None, max_multiplicity=None):
        # type: (int, float, float, float, int, int, int) -> None
        self.n_observations = n_observations
        self.mean_gap = mean_gap
        self.max_gap = max_gap
        self.threshold = threshold
        self.count_gaps_over_threshold = count_gaps_over_threshold
        self.duplicate_stamp_count = duplicate_stamp_count
        self.max_multiplicity = max_multiplicity

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, GapReport):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other


def _detect_separator(path):
    # type: (str) -> str
    with io.open(path, "r", encoding="utf-8-sig") as f:
        for line in f:
            if line.strip() and not line.startswith("#"):
                return "\t" if "\t" in line else ","
    return ","


def load_csv(
        path, age_column=DEFAULT_AGE_COLUMN,
        value_column=DEFAULT_VALUE_COLUMN, source_label=None):
    # type: (str, str, str, Optional[str]) -> RawSeries
    """Load a delimited text record into a :py:class:`RawSeries`.

    The separator (comma or tab) is detected from the header row. Rows
    with a missing age or value are dropped and their 1-based data row
    numbers kept in ``dropped_rows``. The remaining rows are sorted
    oldest to youngest; rows with equal ages keep their file order.

    :param path: Path of the delimited file.
    :type path: str
    :param age_column: Header of the age column (Ma).
    :type age_column: str
    :param value_column: Header of the value column.
    :type value_column: str
    :param source_label: Label stored on the series, defaults to the
        file name.
    :type source_label: str
    :return: Normalized raw series.
    :rtype: RawSeries
    :raises: :py:class:`paleobreaks_core.exceptions.IngestException`
        for a missing file, missing column or non-numeric cell.
    """
    if not os.path.isfile(path):
        raise IngestException("Input file not found: {}".format(path))

    try:
        frame = pd.read_csv(
            path, sep=_detect_separator(path), dtype=str,
            keep_default_na=False, comment="#", encoding="utf-8-sig")
    except (ValueError, pd.errors.ParserError) as e:
        raise IngestException(
            "Unable to parse {}: {}".format(path, str(e)))

    frame.columns = [str(c).strip() for c in frame.columns]
    for column in (age_column, value_column):
        if column not in frame.columns:
            raise IngestException(
                "Column '{}' not found in {}; available columns: {}".format(
                    column, path, ", ".join(frame.columns)))

    age_text = frame[age_column].str.strip()
    value_text = frame[value_column].str.strip()
    missing = (age_text.isin(MISSING_TOKENS) |
               value_text.isin(MISSING_TOKENS)).to_numpy()

    ages = pd.to_numeric(age_text.where(~missing), errors="coerce")
    values = pd.to_numeric(value_text.where(~missing), errors="coerce")
    bad = (~missing) & (ages.isna() | values.isna()).to_numpy()
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise IngestException(
            "Non-numeric cell in data row {} of {}: age={!r}, "
            "value={!r}".format(
                row + 1, path, age_text.iloc[row], value_text.iloc[row]))

    dropped_rows = [int(r) + 1 for r in np.flatnonzero(missing)]
    ages = ages[~missing].to_numpy(dtype=float)
    values = values[~missing].to_numpy(dtype=float)
    if ages.size and (not np.all(np.isfinite(ages)) or np.any(ages < 0)):
        raise IngestException(
            "Ages in {} must be finite and >= 0".format(path))

    order = np.argsort(-ages, kind="stable")
    if dropped_rows:
        logger.info(
            "Dropped %d rows with missing values from %s",
            len(dropped_rows), path)

    return RawSeries(
        ages=ages[order], values=values[order],
        source_label=source_label or os.path.basename(path),
        dropped_rows=dropped_rows)


def gap_statistics(series, threshold=10.0):
    # type: (RawSeries, float) -> GapReport
    """Summarize sampling gaps of a raw record.

    :param series: Raw record with at least two observations.
    :type series: RawSeries
    :param threshold: Gap length in kyr above which gaps are counted.
    :type threshold: float
    :return: Gap report
    :rtype: GapReport
    :raises: :py:class:`paleobreaks_core.exceptions.IngestException`
        if the record has fewer than two observations.
    """
    if len(series) < 2:
        raise IngestException(
            "Gap statistics need at least 2 observations, got {}".format(
                len(series)))

    distinct, counts = np.unique(series.ages, return_counts=True)
    gaps = np.diff(distinct) * 1000.0
    if gaps.size == 0:
        mean_gap = max_gap = 0.0
    else:
        mean_gap = float(gaps.mean())
        max_gap = float(gaps.max())

    return GapReport(
        n_observations=len(series),
        mean_gap=mean_gap,
        max_gap=max_gap,
        threshold=float(threshold),
        count_gaps_over_threshold=int(np.count_nonzero(gaps > threshold)),
        duplicate_stamp_count=int(len(series) - distinct.size),
        max_multiplicity=int(counts.max()))


def reverse_time(series):
    # type: (Union[RawSeries, BinnedSeries]) -> Union[RawSeries, BinnedSeries]
    """Reverse the observation order of a raw or binned series.

    Age labels travel with their observations, so break dates found on
    the reversed series are still reported in Ma before present.

    :param series: Series to reverse.
    :type series: Union[RawSeries, BinnedSeries]
    :return: Series of the same type in reversed order.
    """
    return series.reversed()
