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
from paleobreaks_runtime.exceptions import (
    PaleoBreaksException, DispatchException, PipelineBuilderException)


class IngestException(PaleoBreaksException):
    """Class for exceptions raised while loading raw records."""
    pass


class BinningException(PaleoBreaksException):
    """Class for exceptions raised while binning a record."""
    pass


class RegressionException(PaleoBreaksException):
    """Class for exceptions raised by segment regressions."""
    pass


class DegenerateSegmentException(RegressionException):
    """Raised when a segment's moment matrix is numerically singular."""
    pass


class InfeasibleBreaksException(RegressionException):
    """Raised when the requested number of breaks cannot be placed
    under the minimum segment length.

    :param message: Error message
    :type message: str
    :param max_feasible_m: Largest break count that fits, or -1 when
        even a single segment is too short.
    :type max_feasible_m: int
    """
    def __init__(self, message, max_feasible_m=None):
        # type: (str, int) -> None
        super(InfeasibleBreaksException, self).__init__(message)
        self.max_feasible_m = max_feasible_m


class HacException(PaleoBreaksException):
    """Class for exceptions raised by long-run covariance estimation."""
    pass


class SingularRegressionException(HacException):
    """Raised when the prewhitening autoregression is singular."""
    pass


class InferenceException(PaleoBreaksException):
    """Class for exceptions raised by break-date inference and
    unit-root testing.
    """
    pass


class SerializationException(PaleoBreaksException):
    """Class for exceptions raised during
    serialization/deserialization.
    """
    pass


class TemplateRendererException(PaleoBreaksException):
    """Exception class for plot template rendering."""
    pass
