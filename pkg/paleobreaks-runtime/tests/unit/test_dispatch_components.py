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

from paleobreaks_runtime.dispatch_components import (
    AbstractCommandHandler, GenericCommandHandlerChain, GenericCommandMapper,
    AbstractExceptionHandler, GenericExceptionMapper)
from paleobreaks_runtime.exceptions import DispatchException

try:
    import mock
except ImportError:
    from unittest import mock


class TestCommandHandlerChain(unittest.TestCase):
    def test_no_handler_raises(self):
        with self.assertRaises(DispatchException) as exc:
            GenericCommandHandlerChain(command_handler=None)

        assert "No Command Handler provided" in str(exc.exception), (
            "Handler chain accepted a null command handler")

    def test_add_interceptors(self):
        chain = GenericCommandHandlerChain(
            command_handler=mock.MagicMock(spec=AbstractCommandHandler))
        interceptor = mock.Mock()
        chain.add_command_interceptor(interceptor)
        chain.add_result_interceptor(interceptor)

        assert chain.command_interceptors == [interceptor], (
            "Command interceptor not registered on handler chain")
        assert chain.result_interceptors == [interceptor], (
            "Result interceptor not registered on handler chain")


class TestCommandMapper(unittest.TestCase):
    def test_non_chain_rejected(self):
        with self.assertRaises(DispatchException) as exc:
            GenericCommandMapper(command_handler_chains=["not a chain"])

        assert "GenericCommandHandlerChain" in str(exc.exception), (
            "Command mapper accepted an invalid handler chain")

    def test_first_matching_chain_returned(self):
        first = mock.MagicMock(spec=AbstractCommandHandler)
        first.can_handle.return_value = False
        second = mock.MagicMock(spec=AbstractCommandHandler)
        second.can_handle.return_value = True
        third = mock.MagicMock(spec=AbstractCommandHandler)
        third.can_handle.return_value = True
        chains = [GenericCommandHandlerChain(command_handler=h)
                  for h in (first, second, third)]
        mapper = GenericCommandMapper(command_handler_chains=chains)

        assert mapper.get_command_handler_chain(mock.Mock()) is chains[1], (
            "Command mapper didn't return the first supporting chain")

    def test_no_matching_chain_returns_none(self):
        handler = mock.MagicMock(spec=AbstractCommandHandler)
        handler.can_handle.return_value = False
        mapper = GenericCommandMapper(command_handler_chains=[
            GenericCommandHandlerChain(command_handler=handler)])

        assert mapper.get_command_handler_chain(mock.Mock()) is None, (
            "Command mapper returned a chain that cannot handle the input")


class TestExceptionMapper(unittest.TestCase):
    def test_invalid_handler_rejected(self):
        with self.assertRaises(DispatchException):
            GenericExceptionMapper(exception_handlers=[None])

    def test_get_handler_returns_first_supporting_handler(self):
        first = mock.MagicMock(spec=AbstractExceptionHandler)
        first.can_handle.return_value = False
        second = mock.MagicMock(spec=AbstractExceptionHandler)
        second.can_handle.return_value = True
        mapper = GenericExceptionMapper(exception_handlers=[first, second])

        assert mapper.get_handler(
            mock.Mock(), ValueError("test")) is second, (
            "Exception mapper returned an unexpected handler")

    def test_get_handler_returns_none_without_supporting_handler(self):
        handler = mock.MagicMock(spec=AbstractExceptionHandler)
        handler.can_handle.return_value = False
        mapper = GenericExceptionMapper(exception_handlers=[handler])

        assert mapper.get_handler(mock.Mock(), ValueError("test")) is None, (
            "Exception mapper returned a handler for unsupported exception")
