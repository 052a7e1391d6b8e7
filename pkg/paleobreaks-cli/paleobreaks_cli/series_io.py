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
import hashlib
import logging
import typing

import numpy as np
import pandas as pd

from paleobreaks_core.binning import BinnedSeries, bin_mean
from paleobreaks_core.exceptions import IngestException
from paleobreaks_core.ingest import load_csv, reverse_time

if typing.TYPE_CHECKING:
    from typing import Optional
    from paleobreaks_core.ingest import RawSeries
    from .config import RunConfig

logger = logging.getLogger("paleobreaks.cli")

BINNED_COLUMNS = ["age_Ma", "value", "n_source_obs", "interpolated",
                  "bin_size_kyr"]
RAW_COLUMNS = ["age_Ma", "value"]


def file_checksum(path):
    # type: (Optional[str]) -> Optional[str]
    """SHA-256 of a file's bytes."""
    if path is None:
        return None
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def raw_frame(raw):
    # type: (RawSeries) -> pd.DataFrame
    """Normalized raw record, oldest first, without the dropped rows."""
    return pd.DataFrame({"age_Ma": raw.ages, "value": raw.values},
                        columns=RAW_COLUMNS)


def binned_frame(binned):
    # type: (BinnedSeries) -> pd.DataFrame
    """Binned series as a table, one row per bin in series order."""
    return pd.DataFrame({
        "age_Ma": np.round(binned.ages, 9),
        "value": binned.values,
        "n_source_obs": binned.n_source_obs,
        "interpolated": binned.interpolated,
        "bin_size_kyr": binned.bin_size,
    }, columns=BINNED_COLUMNS)


def is_binned_csv(path):
    # type: (str) -> bool
    columns = pd.read_csv(path, comment="#", nrows=0).columns
    return set(BINNED_COLUMNS) <= set(columns)


def read_binned_csv(path):
    # type: (str) -> BinnedSeries
    """Read a binned CSV written by the ``bin`` command.

    The time direction follows the age order of the rows.

    :rtype: paleobreaks_core.binning.BinnedSeries
    :raises: :py:class:`paleobreaks_core.exceptions.IngestException`
    """
    frame = pd.read_csv(path, comment="#")
    missing = set(BINNED_COLUMNS) - set(frame.columns)
    if missing or frame.empty:
        raise IngestException(
            "{} is not a binned series file (missing {})".format(
                path, ", ".join(sorted(missing)) or "rows"))
    ages = frame["age_Ma"].to_numpy(dtype=float)
    direction = -1 if ages.size > 1 and ages[1] > ages[0] else 1
    return BinnedSeries(
        bin_size=float(frame["bin_size_kyr"].iloc[0]),
        start_age=float(ages[0]),
        values=frame["value"].to_numpy(dtype=float),
        n_source_obs=frame["n_source_obs"].to_numpy(dtype=np.int64),
        direction=direction)


def load_series(config, bin_size=None, reverse=None):
    # type: (RunConfig, Optional[float], Optional[bool]) -> BinnedSeries
    """Series a command runs on: a binned CSV as is, or a raw record
    mean-binned at ``bin_size``, the first configured bin size by
    default. ``reverse``, ``--reverse`` by default, flips the time
    order.

    :rtype: paleobreaks_core.binning.BinnedSeries
    """
    path = config.resolve(config.input_path)
    if is_binned_csv(path):
        series = read_binned_csv(path)
    else:
        raw = load_csv(path, age_column=config.age_column,
                       value_column=config.value_column)
        series = bin_mean(
            raw, config.bin_sizes[0] if bin_size is None else bin_size)
    if reverse is None:
        reverse = config.reverse
    if reverse:
        logger.debug("Reversing the time order of %s", path)
        series = reverse_time(series)
    return series
