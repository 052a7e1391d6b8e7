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
import unittest

try:
    import mock
except ImportError:
    from unittest import mock

from paleobreaks_cli.command_input import CommandInput
from paleobreaks_cli.config import RunConfig
from paleobreaks_cli.exceptions import RunConfigException
from paleobreaks_cli.predicate import is_command, is_exception_type
from paleobreaks_core.exceptions import IngestException
from paleobreaks_runtime.exceptions import PaleoBreaksException


class TestPredicates(unittest.TestCase):
    def setUp(self):
        self.command_input = CommandInput(
            RunConfig(command="estimate"), writer=mock.MagicMock())

    def test_is_command_match(self):
        assert is_command("estimate")(self.command_input), (
            "is_command didn't match the input's command")

    def test_is_command_mismatch(self):
        assert not is_command("select")(self.command_input), (
            "is_command matched a different command")

    def test_is_exception_type(self):
        predicate = is_exception_type(PaleoBreaksException)

        assert predicate(self.command_input, IngestException("x")), (
            "is_exception_type didn't match a subclass")
        assert not predicate(self.command_input, ValueError("x")), (
            "is_exception_type matched an unrelated exception")

    def test_is_exception_type_any_of(self):
        predicate = is_exception_type(RunConfigException, OSError)

        assert predicate(self.command_input, FileNotFoundError("x")), (
            "is_exception_type didn't match the second type")
