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
import typing
from enum import Enum

from paleobreaks_core.inference import ADF_LEVELS
from paleobreaks_core.regression import ModelKind
from paleobreaks_simulation.study import StudyMode

from .exceptions import RunConfigException

if typing.TYPE_CHECKING:
    from typing import Any, List, Optional

DATA_DIR_ENV = "PALEOBREAKS_DATA_DIR"
DEFAULT_BIN_LIST = [10.0, 25.0]
DEFAULT_BIN = 25.0
DEFAULT_SPEC = ModelKind.FIXED_AR.value
DEFAULT_H_MYR = 2.5
DEFAULT_CI_LEVEL = 0.95


class Command(Enum):
    INGEST = "ingest"
    BIN = "bin"
    ESTIMATE = "estimate"
    PATH = "path"
    SELECT = "select"
    ADF = "adf"
    SIMULATE = "simulate"
    REVERSE = "reverse"


SINGLE_BIN_COMMANDS = (Command.ESTIMATE, Command.PATH, Command.ADF)
SINGLE_SPEC_COMMANDS = (Command.ESTIMATE, Command.PATH, Command.SIMULATE)


class RunConfig(object):
    """Settings of one command line run.

    Every output written by the run carries the serialized config in
    its metadata block.
    """
    deserialized_types = {
        'command': 'str',
        'input_path': 'str',
        'output_path': 'str',
        'bin_kyr': 'list[float]',
        'spec': 'list[str]',
        'm': 'int',
        'm_max': 'int',
        'h_myr': 'float',
        'ci_level': 'float',
        'seed': 'int',
        'age_column': 'str',
        'value_column': 'str',
        'gap_threshold': 'float',
        'boundaries': 'list[float]',
        'states': 'bool',
        'adf_trend': 'bool',
        'adf_alpha': 'float',
        'reverse': 'bool',
        'with_kt': 'bool',
        'dgp': 'str',
        'reps': 'int',
        'mode': 'str',
        'min_len': 'int',
        'workers': 'int',
        'include_initial': 'bool',
        'study_config': 'str',
        'plot_dir': 'str',
        'svg': 'bool'
    }

    attribute_map = {
        'command': 'command',
        'input_path': 'input',
        'output_path': 'output',
        'bin_kyr': 'bin_kyr',
        'spec': 'spec',
        'm': 'm',
        'm_max': 'm_max',
        'h_myr': 'h_myr',
        'ci_level': 'ci_level',
        'seed': 'seed',
        'age_column': 'age_column',
        'value_column': 'value_column',
        'gap_threshold': 'gap_threshold_kyr',
        'boundaries': 'boundaries_Ma',
        'states': 'states',
        'adf_trend': 'adf_trend',
        'adf_alpha': 'adf_alpha',
        'reverse': 'reverse',
        'with_kt': 'with_kt',
        'dgp': 'dgp',
        'reps': 'reps',
        'mode': 'mode',
        'min_len': 'min_len',
        'workers': 'workers',
        'include_initial': 'include_initial',
        'study_config': 'study_config',
        'plot_dir': 'plot_dir',
        'svg': 'svg'
    }

    def __init__(
            self, command=None, input_path=None, output_path=None,
            bin_kyr=None, spec=None, m=None, m_max=None,
            h_myr=DEFAULT_H_MYR, ci_level=DEFAULT_CI_LEVEL, seed=0,
            age_column="age_Ma", value_column="d18O_corr",
            gap_threshold=10.0, boundaries=None, states=False,
            adf_trend=False, adf_alpha=0.01, reverse=False, with_kt=False,
            dgp=None, reps=1000, mode=StudyMode.FIXED.value, min_len=25,
            workers=1, include_initial=False, study_config=None,
            plot_dir=None, svg=False):
        # type: (str, Optional[str], Optional[str], Optional[List[float]], Optional[List[str]], Optional[int], Optional[int], float, float, int, str, str, float, Optional[List[float]], bool, bool, float, bool, bool, Optional[str], int, str, int, int, bool, Optional[str], Optional[str], bool) -> None
        self.command = command
        self.input_path = input_path
        self.output_path = output_path
        self.bin_kyr = bin_kyr
        self.spec = spec
        self.m = m
        self.m_max = m_max
        self.h_myr = h_myr
        self.ci_level = ci_level
        self.seed = seed
        self.age_column = age_column
        self.value_column = value_column
        self.gap_threshold = gap_threshold
        self.boundaries = boundaries
        self.states = states
        self.adf_trend = adf_trend
        self.adf_alpha = adf_alpha
        self.reverse = reverse
        self.with_kt = with_kt
        self.dgp = dgp
        self.reps = reps
        self.mode = mode
        self.min_len = min_len
        self.workers = workers
        self.include_initial = include_initial
        self.study_config = study_config
        self.plot_dir = plot_dir
        self.svg = svg

    @classmethod
    def from_namespace(cls, namespace):
        # type: (Any) -> RunConfig
        """Build a config from parsed arguments, ignoring options the
        config does not know.
        """
        values = vars(namespace)
        return cls(**{k: values[k] for k in cls.deserialized_types
                      if values.get(k) is not None})

    @property
    def command_kind(self):
        # type: () -> Command
        try:
            return Command(self.command)
        except ValueError:
            raise RunConfigException(
                "Unknown command '{}', expected one of {}".format(
                    self.command, ", ".join(c.value for c in Command)))

    @property
    def bin_sizes(self):
        # type: () -> List[float]
        if self.bin_kyr:
            return [float(b) for b in self.bin_kyr]
        if self.command_kind in SINGLE_BIN_COMMANDS:
            return [DEFAULT_BIN]
        return list(DEFAULT_BIN_LIST)

    @property
    def specs(self):
        # type: () -> List[str]
        return list(self.spec) if self.spec else [DEFAULT_SPEC]

    def resolve(self, path):
        # type: (Optional[str]) -> Optional[str]
        """Relative input paths are taken from ``PALEOBREAKS_DATA_DIR``
        when it is set.
        """
        if path is None or os.path.isabs(path):
            return path
        data_dir = os.environ.get(DATA_DIR_ENV)
        return os.path.join(data_dir, path) if data_dir else path

    def validate(self):
        # type: () -> None
        """Check the settings the command needs.

        :raises: :py:class:`paleobreaks_cli.exceptions.RunConfigException`
        """
        command = self.command_kind
        if not self.output_path:
            raise RunConfigException(
                "The {} command needs an output path".format(command.value))
        if command is not Command.SIMULATE and not self.input_path:
            raise RunConfigException(
                "The {} command needs an input file".format(command.value))
        if command is Command.INGEST and \
                self.output_path.lower().endswith(".csv"):
            raise RunConfigException(
                "The ingest report is JSON; the normalized record is written "
                "next to it as .csv, so the output path can't end in .csv")

        if any(b <= 0 for b in self.bin_sizes):
            raise RunConfigException("Bin sizes must be positive")
        if command in SINGLE_BIN_COMMANDS and len(self.bin_sizes) != 1:
            raise RunConfigException(
                "The {} command takes one bin size".format(command.value))
        for spec in self.specs:
            if spec not in [k.value for k in ModelKind]:
                raise RunConfigException(
                    "Unknown spec '{}', expected one of {}".format(
                        spec, ", ".join(k.value for k in ModelKind)))
        if command in SINGLE_SPEC_COMMANDS and len(self.specs) != 1:
            raise RunConfigException(
                "The {} command takes one spec".format(command.value))
        if self.h_myr is None or self.h_myr <= 0:
            raise RunConfigException("--h-myr must be positive")
        if not 0.0 < self.ci_level < 1.0:
            raise RunConfigException("--ci-level must lie in (0, 1)")

        if command is Command.ESTIMATE and (self.m is None or self.m < 0):
            raise RunConfigException(
                "The estimate command needs a break count --m >= 0")
        if self.m_max is not None and self.m_max < 1:
            raise RunConfigException("--m-max must be at least 1")
        if command is Command.ADF and self.adf_alpha not in ADF_LEVELS:
            raise RunConfigException(
                "--alpha must be one of {}".format(
                    ", ".join(str(a) for a in sorted(ADF_LEVELS))))
        if self.boundaries is not None and any(
                b_next >= b for b, b_next in zip(self.boundaries,
                                                 self.boundaries[1:])):
            raise RunConfigException(
                "--boundaries must be strictly decreasing in Ma")
        if command is Command.SIMULATE:
            if not self.dgp and not self.study_config:
                raise RunConfigException(
                    "The simulate command needs --dgp or --config")
            if self.reps is None or self.reps < 1:
                raise RunConfigException("--reps must be at least 1")
            if self.mode not in [m.value for m in StudyMode]:
                raise RunConfigException(
                    "Unknown study mode '{}'".format(self.mode))
            if self.workers is None or self.workers < 1:
                raise RunConfigException("--workers must be at least 1")

    def __eq__(self, other):
        # type: (object) -> bool
        if not isinstance(other, RunConfig):
            return False
        return self.__dict__ == other.__dict__

    def __ne__(self, other):
        # type: (object) -> bool
        return not self == other
