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
import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from paleobreaks_cli.config import RunConfig
from paleobreaks_cli.series_io import (
    binned_frame, file_checksum, is_binned_csv, load_series,
    read_binned_csv)
from paleobreaks_cli.writer import ResultWriter
from paleobreaks_core.binning import BinnedSeries
from paleobreaks_core.exceptions import IngestException


class TestSeriesIo(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.raw_path = os.path.join(self.directory.name, "raw.csv")
        pd.DataFrame({
            "age_Ma": (np.arange(40) + 0.5) * 0.005,
            "d18O_corr": np.where(np.arange(40) >= 20, 1.0, 3.0),
        }).to_csv(self.raw_path, index=False)
        self.binned = BinnedSeries(
            bin_size=25, start_age=0.1125, values=[1.0, 2.0, 4.0],
            n_source_obs=[2, 0, 3])

    def _write_binned(self, binned, name="binned.csv"):
        config = RunConfig(command="bin", output_path=self.directory.name)
        return ResultWriter(config).write_frame(
            os.path.join(self.directory.name, name), binned_frame(binned))

    def test_binned_file_is_read_back(self):
        path = self._write_binned(self.binned)

        assert is_binned_csv(path), "Binned file wasn't recognized"
        assert read_binned_csv(path) == self.binned, (
            "Binned series changed through its CSV file")

    def test_reversed_binned_file_keeps_direction(self):
        path = self._write_binned(self.binned.reversed())

        series = read_binned_csv(path)

        assert series.direction == -1, "Reversed direction was lost"
        np.testing.assert_allclose(series.ages, self.binned.ages[::-1])

    def test_raw_file_is_not_binned(self):
        assert not is_binned_csv(self.raw_path), (
            "Raw record was taken for a binned series")

    def test_empty_binned_file_raises(self):
        path = os.path.join(self.directory.name, "empty.csv")
        with open(path, "w") as f:
            f.write("age_Ma,value,n_source_obs,interpolated,bin_size_kyr\n")

        with self.assertRaises(IngestException):
            read_binned_csv(path)

    def test_load_series_bins_raw_record(self):
        config = RunConfig(command="estimate", input_path=self.raw_path,
                           bin_kyr=[25])

        series = load_series(config)

        assert len(series) == 8, "Raw record wasn't binned at 25 kyr"
        assert series.values[0] == 1.0 and series.values[-1] == 3.0, (
            "Binned series isn't ordered oldest first")

    def test_load_series_reverses(self):
        config = RunConfig(command="estimate", input_path=self.raw_path,
                           bin_kyr=[25], reverse=True)

        series = load_series(config)

        assert series.direction == -1 and series.values[0] == 3.0, (
            "Series wasn't reversed")

    def test_checksum(self):
        assert file_checksum(None) is None, (
            "Checksum of no file isn't None")
        assert file_checksum(self.raw_path) == file_checksum(
            self.raw_path), "Checksum isn't stable"
