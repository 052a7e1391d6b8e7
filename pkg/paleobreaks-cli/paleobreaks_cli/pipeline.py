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

from paleobreaks_runtime.dispatch import GenericCommandDispatcher
from paleobreaks_runtime.pipeline import AbstractPipeline
from paleobreaks_runtime.pipeline_builder import AbstractPipelineBuilder

if typing.TYPE_CHECKING:
    from paleobreaks_runtime.pipeline import RuntimeConfiguration
    from .command_input import CommandInput, CommandResult


class CommandPipeline(AbstractPipeline):
    """Top level container for the command dispatcher.

    :param runtime_configuration: Registered dispatch components.
    :type runtime_configuration: paleobreaks_runtime.pipeline.RuntimeConfiguration
    """
    def __init__(self, runtime_configuration):
        # type: (RuntimeConfiguration) -> None
        self.command_dispatcher = GenericCommandDispatcher(
            options=runtime_configuration)

    def supports(self, pipeline_input):
        # type: (CommandInput) -> bool
        return getattr(pipeline_input, "config", None) is not None

    def invoke(self, pipeline_input):
        # type: (CommandInput) -> CommandResult
        """Dispatch the command input to its handler.

        :param pipeline_input: Command input.
        :type pipeline_input: paleobreaks_cli.command_input.CommandInput
        :rtype: paleobreaks_cli.command_input.CommandResult
        """
        return self.command_dispatcher.dispatch(pipeline_input)


class PipelineBuilder(AbstractPipelineBuilder):
    """Pipeline Builder with helper functions for building a
    :py:class:`CommandPipeline`.
    """
    def create(self):
        # type: () -> CommandPipeline
        return CommandPipeline(
            self.runtime_configuration_builder.get_runtime_configuration())
