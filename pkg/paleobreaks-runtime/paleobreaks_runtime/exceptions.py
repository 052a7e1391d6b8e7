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


class PaleoBreaksException(Exception):
    """Base class for exceptions raised by the toolkit."""
    pass


class DispatchException(PaleoBreaksException):
    """Class for exceptions raised during command dispatch logic."""
    pass


class PipelineBuilderException(PaleoBreaksException):
    """Base exception class for Pipeline Builder exceptions."""
    pass


class RuntimeConfigException(PaleoBreaksException):
    """Base exception class for Runtime Configuration Builder exceptions."""
    pass
