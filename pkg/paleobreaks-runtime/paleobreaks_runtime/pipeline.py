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

from abc import ABCMeta, abstractmethod
from .exceptions import RuntimeConfigException
from .dispatch_components import (
    AbstractCommandHandler, AbstractCommandInterceptor,
    AbstractResultInterceptor, AbstractExceptionHandler,
    GenericCommandHandlerChain, GenericCommandMapper,
    GenericExceptionMapper)

if typing.TYPE_CHECKING:
    from typing import List, TypeVar
    PipelineInput = TypeVar('PipelineInput')
    PipelineOutput = TypeVar('PipelineOutput')


class RuntimeConfiguration(object):
    """Configuration Object that holds the components needed to build
    the dispatcher of an :py:class:`AbstractPipeline`.

    :param command_mappers: List of command mapper instances.
    :type command_mappers: list(GenericCommandMapper)
    :param command_interceptors: List of global command interceptors.
    :type command_interceptors: list(AbstractCommandInterceptor)
    :param result_interceptors: List of global result interceptors.
    :type result_interceptors: list(AbstractResultInterceptor)
    :param exception_mapper: Exception mapper instance.
    :type exception_mapper: GenericExceptionMapper
    """

    def __init__(
            self, command_mappers, command_interceptors=None,
            result_interceptors=None, exception_mapper=None):
        # type: (List[GenericCommandMapper], List[AbstractCommandInterceptor], List[AbstractResultInterceptor], GenericExceptionMapper) -> None
        self.command_mappers = command_mappers or []
        self.command_interceptors = command_interceptors or []
        self.result_interceptors = result_interceptors or []
        self.exception_mapper = exception_mapper


def _checked(component, expected):
    # type: (object, type) -> object
    if component is None:
        raise RuntimeConfigException(
            "No {} provided".format(expected.__name__))
    if not isinstance(component, expected):
        raise RuntimeConfigException(
            "Expected an instance of {}, got {}".format(
                expected.__name__, type(component).__name__))
    return component


class RuntimeConfigurationBuilder(object):
    """Collects dispatch components and builds a
    :py:class:`RuntimeConfiguration` from them.

    :raises: :py:class:`paleobreaks_runtime.exceptions.RuntimeConfigException`
        when a component is missing or of the wrong type.
    """

    def __init__(self):
        # type: () -> None
        self.command_handler_chains = []  # type: List
        self.global_command_interceptors = []  # type: List
        self.global_result_interceptors = []  # type: List
        self.exception_handlers = []  # type: List

    def add_command_handler(self, command_handler):
        # type: (AbstractCommandHandler) -> None
        self.command_handler_chains.append(GenericCommandHandlerChain(
            command_handler=_checked(
                command_handler, AbstractCommandHandler)))

    def add_command_handlers(self, command_handlers):
        # type: (List[AbstractCommandHandler]) -> None
        for command_handler in command_handlers:
            self.add_command_handler(command_handler)

    def add_exception_handler(self, exception_handler):
        # type: (AbstractExceptionHandler) -> None
        self.exception_handlers.append(
            _checked(exception_handler, AbstractExceptionHandler))

    def add_global_command_interceptor(self, command_interceptor):
        # type: (AbstractCommandInterceptor) -> None
        self.global_command_interceptors.append(
            _checked(command_interceptor, AbstractCommandInterceptor))

    def add_global_result_interceptor(self, result_interceptor):
        # type: (AbstractResultInterceptor) -> None
        self.global_result_interceptors.append(
            _checked(result_interceptor, AbstractResultInterceptor))

    def get_runtime_configuration(self):
        # type: () -> RuntimeConfiguration
        """Configuration with a single command mapper over every
        registered handler, in registration order.

        :rtype: RuntimeConfiguration
        """
        return RuntimeConfiguration(
            command_mappers=[GenericCommandMapper(
                command_handler_chains=self.command_handler_chains)],
            exception_mapper=GenericExceptionMapper(
                exception_handlers=self.exception_handlers),
            command_interceptors=self.global_command_interceptors,
            result_interceptors=self.global_result_interceptors)


class AbstractPipeline(object):
    """Abstract class that acts as entry level container for running
    a pipeline command.

    Concrete pipelines implement the `supports` and `invoke` methods.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def supports(self, pipeline_input):
        # type: (PipelineInput) -> bool
        """Check if the pipeline supports the corresponding input.

        :param pipeline_input: input instance containing the command
        :type pipeline_input: PipelineInput
        :rtype: bool
        """
        raise NotImplementedError

    @abstractmethod
    def invoke(self, pipeline_input):
        # type: (PipelineInput) -> PipelineOutput
        """Invokes the dispatcher to run the input and return the
        pipeline output.

        :param pipeline_input: input instance containing the command
        :type pipeline_input: PipelineInput
        :return: output generated by the command
        :rtype: PipelineOutput
        """
        raise NotImplementedError
