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

from ..exceptions import DispatchException

if typing.TYPE_CHECKING:
    from typing import Union, List, TypeVar
    Input = TypeVar('Input')
    Output = TypeVar('Output')


class AbstractCommandHandler(object):
    """Command Handlers run one pipeline stage for a dispatch input
    and produce its result.

    Custom command handlers need to implement ``can_handle`` and
    ``handle`` methods. ``can_handle`` returns True if the handler runs
    the command carried by the input. ``handle`` executes the stage and
    may return a result.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def can_handle(self, command_input):
        # type: (Input) -> bool
        """Returns true if Command Handler can handle the dispatch input.

        :param command_input: Generic input passed to the dispatcher.
        :type command_input: Input
        :return: Boolean value that tells the dispatcher if the
            current input can be handled by this handler.
        :rtype: bool
        """
        raise NotImplementedError

    @abstractmethod
    def handle(self, command_input):
        # type: (Input) -> Union[None, Output]
        """Runs the command and provides a result for the dispatcher
        to return.

        :param command_input: Generic input passed to the dispatcher.
        :type command_input: Input
        :return: Generic result for the dispatcher to return or None
        :rtype: Union[Output, None]
        """
        raise NotImplementedError


class AbstractCommandInterceptor(object):
    """Interceptor that runs before the command handler is called."""
    __metaclass__ = ABCMeta

    @abstractmethod
    def process(self, command_input):
        # type: (Input) -> None
        """Process the input before the handler is run.

        :param command_input: Generic input passed to the dispatcher.
        :type command_input: Input
        :rtype: None
        """
        raise NotImplementedError


class AbstractResultInterceptor(object):
    """Interceptor that runs after the command handler returned."""
    __metaclass__ = ABCMeta

    @abstractmethod
    def process(self, command_input, result):
        # type: (Input, Output) -> None
        """Process the input and the result of the handler.

        :param command_input: Generic input passed to the dispatcher.
        :type command_input: Input
        :param result: Result returned by the handler.
        :type result: Union[None, Output]
        :rtype: None
        """
        raise NotImplementedError


class GenericCommandHandlerChain(object):
    """Command handler along with the interceptors that run only
    around it.

    :param command_handler: Registered command handler instance.
    :type command_handler: AbstractCommandHandler
    :param command_interceptors: Interceptors run before the handler.
    :type command_interceptors: list(AbstractCommandInterceptor)
    :param result_interceptors: Interceptors run after the handler.
    :type result_interceptors: list(AbstractResultInterceptor)
    :raises: :py:class:`paleobreaks_runtime.exceptions.DispatchException`
        if a null handler is provided.
    """

    def __init__(
            self, command_handler, command_interceptors=None,
            result_interceptors=None):
        # type: (AbstractCommandHandler, List[AbstractCommandInterceptor], List[AbstractResultInterceptor]) -> None
        self.command_handler = command_handler
        self.command_interceptors = command_interceptors or []
        self.result_interceptors = result_interceptors or []

    @property
    def command_handler(self):
        # type: () -> AbstractCommandHandler
        return self._command_handler

    @command_handler.setter
    def command_handler(self, command_handler):
        # type: (AbstractCommandHandler) -> None
        if command_handler is None:
            raise DispatchException("No Command Handler provided")
        self._command_handler = command_handler

    def add_command_interceptor(self, interceptor):
        # type: (AbstractCommandInterceptor) -> None
        self.command_interceptors.append(interceptor)

    def add_result_interceptor(self, interceptor):
        # type: (AbstractResultInterceptor) -> None
        self.result_interceptors.append(interceptor)


class GenericCommandMapper(object):
    """Maps a dispatch input to the first registered handler chain
    whose handler can handle it.

    :param command_handler_chains: Registered handler chains, searched
        in registration order.
    :type command_handler_chains: list(GenericCommandHandlerChain)
    """

    def __init__(self, command_handler_chains):
        # type: (List[GenericCommandHandlerChain]) -> None
        self.command_handler_chains = command_handler_chains

    @property
    def command_handler_chains(self):
        # type: () -> List[GenericCommandHandlerChain]
        return self._command_handler_chains

    @command_handler_chains.setter
    def command_handler_chains(self, command_handler_chains):
        # type: (List[GenericCommandHandlerChain]) -> None
        self._command_handler_chains = []  # type: List
        if command_handler_chains is not None:
            for chain in command_handler_chains:
                self.add_command_handler_chain(chain)

    def add_command_handler_chain(self, command_handler_chain):
        # type: (GenericCommandHandlerChain) -> None
        """Checks the type before adding it to the chains list.

        :param command_handler_chain: Handler chain to be registered.
        :type command_handler_chain: GenericCommandHandlerChain
        :raises: :py:class:`paleobreaks_runtime.exceptions.DispatchException`
            if the input is not a handler chain.
        """
        if not isinstance(command_handler_chain, GenericCommandHandlerChain):
            raise DispatchException(
                "Command Handler Chain is not a GenericCommandHandlerChain "
                "instance")
        self._command_handler_chains.append(command_handler_chain)

    def get_command_handler_chain(self, command_input):
        # type: (Input) -> Union[GenericCommandHandlerChain, None]
        """Get the handler chain that can handle the dispatch input.

        :param command_input: Generic input passed to the dispatcher.
        :type command_input: Input
        :return: Handler Chain that can handle the input, or None.
        :rtype: Union[None, GenericCommandHandlerChain]
        """
        for chain in self.command_handler_chains:
            if chain.command_handler.can_handle(command_input):
                return chain
        return None
