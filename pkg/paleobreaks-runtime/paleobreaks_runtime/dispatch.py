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

from .exceptions import DispatchException

if typing.TYPE_CHECKING:
    from typing import Union, TypeVar
    from .pipeline import RuntimeConfiguration
    Input = TypeVar('Input')
    Output = TypeVar('Output')


class AbstractCommandDispatcher(object):
    """Dispatcher which hands a command input to the handler that runs
    the corresponding pipeline stage.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def dispatch(self, command_input):
        # type: (Input) -> Union[Output, None]
        """Dispatches a command input to the appropriate command
        handler and returns the result.

        :param command_input: generic input to the dispatcher
        :type command_input: Input
        :return: generic output returned by the handler
        :rtype: Union[None, Output]
        """
        pass


class GenericCommandDispatcher(AbstractCommandDispatcher):
    """Generic implementation of :py:class:`AbstractCommandDispatcher`.

    Using the list of
    :py:class:`paleobreaks_runtime.dispatch_components.GenericCommandMapper`
    from the runtime configuration, the dispatcher finds the handler
    chain for the input and runs it between the global and chain level
    interceptors. If anything raises, the exception is handed to the
    :py:class:`paleobreaks_runtime.dispatch_components.GenericExceptionMapper`
    to be handled, or raised to the upper stack.
    """

    def __init__(self, options):
        # type: (RuntimeConfiguration) -> None
        """Generic implementation of :py:class:`AbstractCommandDispatcher`.

        :param options: Runtime configuration instance, containing the
            dispatch components.
        :type options: RuntimeConfiguration
        """
        self.command_mappers = options.command_mappers or []
        self.exception_mapper = options.exception_mapper
        self.command_interceptors = options.command_interceptors or []
        self.result_interceptors = options.result_interceptors or []

    def dispatch(self, command_input):
        # type: (Input) -> Union[Output, None]
        """Dispatches a command input to the appropriate handler and
        returns the result.

        Global command interceptors run before the handler chain and
        global result interceptors after it, on successful results only.

        :param command_input: generic input to the dispatcher
        :type command_input: Input
        :return: generic output of the handler or of the exception
            handler that dealt with a failure
        :rtype: Union[None, Output]
        :raises: :py:class:`paleobreaks_runtime.exceptions.DispatchException`
        """
        try:
            for command_interceptor in self.command_interceptors:
                command_interceptor.process(command_input=command_input)

            result = self.__dispatch_command(command_input)  # type: Union[Output, None]

            for result_interceptor in self.result_interceptors:
                result_interceptor.process(
                    command_input=command_input, result=result)

            return result
        except Exception as e:
            if self.exception_mapper is not None:
                exception_handler = self.exception_mapper.get_handler(
                    command_input, e)
                if exception_handler is None:
                    raise e
                return exception_handler.handle(command_input, e)
            else:
                raise e

    def __dispatch_command(self, command_input):
        # type: (Input) -> Union[Output, None]
        """Find the handler chain for the input and run it.

        :param command_input: generic input to the dispatcher
        :type command_input: Input
        :return: Output of the handler's ``handle`` method
        :rtype: Union[None, Output]
        :raises: DispatchException if no handler chain supports the input
        """
        command_handler_chain = None
        for mapper in self.command_mappers:
            command_handler_chain = mapper.get_command_handler_chain(
                command_input)
            if command_handler_chain is not None:
                break

        if command_handler_chain is None:
            raise DispatchException(
                "Unable to find a suitable command handler")

        for interceptor in command_handler_chain.command_interceptors:
            interceptor.process(command_input=command_input)

        result = command_handler_chain.command_handler.handle(
            command_input)  # type: Union[Output, None]

        for interceptor in command_handler_chain.result_interceptors:
            interceptor.process(command_input=command_input, result=result)

        return result
