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

if typing.TYPE_CHECKING:
    from typing import Callable
    from .command_input import CommandInput


def is_command(command):
    # type: (str) -> Callable[[CommandInput], bool]
    """A predicate function returning a boolean, when the input's
    command is the passed-in command.

    :param command: Command name to be matched with the input's config
    :type command: str
    :return: Predicate function that can be used to check the command
        of the input
    :rtype: Callable[[CommandInput], bool]
    """
    def can_handle_wrapper(command_input):
        # type: (CommandInput) -> bool
        return command_input.config.command == command
    return can_handle_wrapper


def is_exception_type(*exception_types):
    # type: (type) -> Callable[[CommandInput, Exception], bool]
    """A predicate function on a command input and exception, true when
    the exception is an instance of any of the passed-in types.
    """
    def can_handle_wrapper(command_input, exception):
        # type: (CommandInput, Exception) -> bool
        return isinstance(exception, exception_types)
    return can_handle_wrapper
