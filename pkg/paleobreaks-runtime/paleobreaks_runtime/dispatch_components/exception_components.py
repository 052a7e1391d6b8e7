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
    from typing import Iterable, List, Optional, TypeVar
    Input = TypeVar('Input')
    Output = TypeVar('Output')


class AbstractExceptionHandler(object):
    """Turns an exception raised by a command into the command's
    output, typically an error result with an exit status.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def can_handle(self, command_input, exception):
        # type: (Input, Exception) -> bool
        """True when this handler deals with ``exception``."""
        raise NotImplementedError

    @abstractmethod
    def handle(self, command_input, exception):
        # type: (Input, Exception) -> Output
        """Output returned by the dispatcher in place of the failed
        command's result.
        """
        raise NotImplementedError


class GenericExceptionMapper(object):
    """Exception handlers in registration order. Register the most
    specific handlers first; a catch-all ``Exception`` handler last.

    :param exception_handlers: Handlers to register.
    :type exception_handlers: list(AbstractExceptionHandler)
    :raises: :py:class:`paleobreaks_runtime.exceptions.DispatchException`
        if an entry is not an :py:class:`AbstractExceptionHandler`.
    """

    def __init__(self, exception_handlers=None):
        # type: (Optional[Iterable[AbstractExceptionHandler]]) -> None
        self.exception_handlers = []  # type: List[AbstractExceptionHandler]
        for handler in exception_handlers or []:
            self.add_exception_handler(handler)

    def add_exception_handler(self, exception_handler):
        # type: (AbstractExceptionHandler) -> None
        if not isinstance(exception_handler, AbstractExceptionHandler):
            raise DispatchException(
                "Expected an AbstractExceptionHandler, got {}".format(
                    type(exception_handler).__name__))
        self.exception_handlers.append(exception_handler)

    def get_handler(self, command_input, exception):
        # type: (Input, Exception) -> Optional[AbstractExceptionHandler]
        """First registered handler that can handle ``exception``, or
        None.
        """
        return next(
            (handler for handler in self.exception_handlers
             if handler.can_handle(command_input=command_input,
                                   exception=exception)), None)
