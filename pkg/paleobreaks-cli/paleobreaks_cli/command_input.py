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
import sys
import typing

from paleobreaks_core.serialize import DefaultSerializer

if typing.TYPE_CHECKING:
    from typing import IO, List, Optional
    from .config import RunConfig
    from .writer import ResultWriter


class CommandInput(object):
    """Input to the command handlers: the run config with the services
    a handler writes its outputs through.

    :param config: Run configuration.
    :type config: paleobreaks_cli.config.RunConfig
    :param writer: Atomic output writer.
    :type writer: paleobreaks_cli.writer.ResultWriter
    :param serializer: Model serializer.
    :type serializer: paleobreaks_core.serialize.DefaultSerializer
    :param error_stream: Stream receiving error documents.
    :type error_stream: IO
    """
    def __init__(self, config, writer, serializer=None, error_stream=None):
        # type: (RunConfig, ResultWriter, Optional[DefaultSerializer], Optional[IO]) -> None
        self.config = config
        self.writer = writer
        self.serializer = serializer or DefaultSerializer()
        self.error_stream = error_stream or sys.stderr


class CommandResult(object):
    """Exit status and written files of a command."""
    def __init__(self, exit_code=0, outputs=None, error=None):
        # type: (int, Optional[List[str]], Optional[dict]) -> None
        self.exit_code = exit_code
        self.outputs = outputs or []
        self.error = error
