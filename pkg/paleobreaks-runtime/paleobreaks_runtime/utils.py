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
import sys


def tool_version_info(package_version, extra=None):
    # type: (str, str) -> str
    """Return the tool identification string along with the Python
    version information.

    :param package_version: Version of the package being used.
    :type package_version: str
    :param extra: Optional extra token appended to the string, for
        eg. the name of the command being run.
    :type extra: str
    :return: Tool identification string
    :rtype: str
    """
    python_version = ".".join(str(x) for x in sys.version_info[0:3])
    info = "paleobreaks/{} Python/{}".format(package_version, python_version)
    if extra is None:
        return info
    return info + " {}".format(extra)
