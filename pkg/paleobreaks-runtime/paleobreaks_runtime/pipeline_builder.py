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
from .pipeline import RuntimeConfigurationBuilder

from .dispatch_components import (
    AbstractCommandHandler, AbstractCommandInterceptor,
    AbstractResultInterceptor, AbstractExceptionHandler)
from .exceptions import PipelineBuilderException


if typing.TYPE_CHECKING:
    from typing import Callable, TypeVar
    from .pipeline import AbstractPipeline
    Input = TypeVar('Input')


def _class_name(prefix, func):
    # type: (str, Callable) -> str
    return "{}{}".format(prefix, func.__name__.title().replace("_", ""))


class AbstractPipelineBuilder(object):
    """Abstract Pipeline Builder with helper functions for building an
    :py:class:`paleobreaks_runtime.pipeline.AbstractPipeline` object.

    Concrete builders implement the `create` method that returns the
    pipeline for their command set.
    """
    __metaclass__ = ABCMeta

    def __init__(self):
        # type: () -> None
        self.runtime_configuration_builder = RuntimeConfigurationBuilder()

    def add_command_handler(self, command_handler):
        # type: (AbstractCommandHandler) -> None
        self.runtime_configuration_builder.add_command_handler(
            command_handler)

    def add_exception_handler(self, exception_handler):
        # type: (AbstractExceptionHandler) -> None
        self.runtime_configuration_builder.add_exception_handler(
            exception_handler)

    def add_global_command_interceptor(self, command_interceptor):
        # type: (AbstractCommandInterceptor) -> None
        self.runtime_configuration_builder.add_global_command_interceptor(
            command_interceptor)

    def add_global_result_interceptor(self, result_interceptor):
        # type: (AbstractResultInterceptor) -> None
        self.runtime_configuration_builder.add_global_result_interceptor(
            result_interceptor)

    def command_handler(self, can_handle_func):
        # type: (Callable[[Input], bool]) -> Callable
        """Decorator that can be used to add command handlers easily to
        the builder.

        The can_handle_func has to be a Callable taking the command
        input as its single parameter. The decorated function receives
        the same input and returns the command result, following the
        signature of the handle function in
        :py:class:`paleobreaks_runtime.dispatch_components.AbstractCommandHandler`.

        :param can_handle_func: The function that validates if the
            command can be handled.
        :type can_handle_func: Callable[[Input], bool]
        :return: Wrapper function that can be decorated on a handle
            function.
        """
        def wrapper(handle_func):
            if not callable(can_handle_func) or not callable(handle_func):
                raise PipelineBuilderException(
                    "Command Handler can_handle_func and handle_func "
                    "input parameters should be callable")

            class_attributes = {
                "can_handle": lambda self, command_input: can_handle_func(
                    command_input),
                "handle": lambda self, command_input: handle_func(
                    command_input)
            }

            command_handler_class = type(
                _class_name("CommandHandler", handle_func),
                (AbstractCommandHandler,), class_attributes)

            self.add_command_handler(command_handler=command_handler_class())
            return handle_func
        return wrapper

    def exception_handler(self, can_handle_func):
        # type: (Callable[[Input, Exception], bool]) -> Callable
        """Decorator that can be used to add exception handlers easily
        to the builder.

        The can_handle_func takes the command input and the raised
        exception. The decorated function follows the signature of the
        handle function in
        :py:class:`paleobreaks_runtime.dispatch_components.AbstractExceptionHandler`.

        :param can_handle_func: The function that validates if the
            exception can be handled.
        :type can_handle_func: Callable[[Input, Exception], bool]
        :return: Wrapper function that can be decorated on a handle
            function.
        """
        def wrapper(handle_func):
            if not callable(can_handle_func) or not callable(handle_func):
                raise PipelineBuilderException(
                    "Exception Handler can_handle_func and handle_func input "
                    "parameters should be callable")

            class_attributes = {
                "can_handle": (
                    lambda self, command_input, exception: can_handle_func(
                        command_input, exception)),
                "handle": lambda self, command_input, exception: handle_func(
                    command_input, exception)
            }

            exception_handler_class = type(
                _class_name("ExceptionHandler", handle_func),
                (AbstractExceptionHandler,), class_attributes)

            self.add_exception_handler(
                exception_handler=exception_handler_class())
            return handle_func
        return wrapper

    def global_command_interceptor(self):
        # type: () -> Callable
        """Decorator that registers a function taking the command input
        as a global command interceptor.

        :return: Wrapper function that can be decorated on a
            interceptor process function.
        """
        def wrapper(process_func):
            if not callable(process_func):
                raise PipelineBuilderException(
                    "Global Command Interceptor process_func input "
                    "parameter should be callable")

            class_attributes = {
                "process": lambda self, command_input: process_func(
                    command_input)
            }

            command_interceptor = type(
                _class_name("CommandInterceptor", process_func),
                (AbstractCommandInterceptor,), class_attributes)

            self.add_global_command_interceptor(
                command_interceptor=command_interceptor())
            return process_func
        return wrapper

    def global_result_interceptor(self):
        # type: () -> Callable
        """Decorator that registers a function taking the command input
        and the handler result as a global result interceptor.

        :return: Wrapper function that can be decorated on a
            interceptor process function.
        """
        def wrapper(process_func):
            if not callable(process_func):
                raise PipelineBuilderException(
                    "Global Result Interceptor process_func input "
                    "parameter should be callable")

            class_attributes = {
                "process": (
                    lambda self, command_input, result: process_func(
                        command_input, result))
            }

            result_interceptor = type(
                _class_name("ResultInterceptor", process_func),
                (AbstractResultInterceptor,), class_attributes)

            self.add_global_result_interceptor(
                result_interceptor=result_interceptor())
            return process_func
        return wrapper

    @abstractmethod
    def create(self):
        # type: () -> AbstractPipeline
        """Create a pipeline object using the registered components.

        :return: a pipeline object that can be used for invocation.
        :rtype: AbstractPipeline
        """
        raise NotImplementedError
