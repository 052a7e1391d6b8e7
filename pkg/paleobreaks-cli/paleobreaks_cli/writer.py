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
import datetime
import json
import os
import tempfile
import typing

from paleobreaks_core.serialize import DefaultSerializer
from paleobreaks_runtime.utils import tool_version_info

from .__version__ import __version__
from .series_io import file_checksum

if typing.TYPE_CHECKING:
    from typing import Any, Dict, Optional
    import pandas as pd
    from .config import RunConfig


class ResultWriter(object):
    """Writes command outputs atomically with a metadata block.

    JSON documents have the layout ``{"metadata": ..., "result": ...}``;
    CSV files start with a ``#`` comment line holding the metadata as
    JSON. The metadata carries the tool version, the run config and the
    input checksum; only ``created_at`` varies between identical runs.

    :param config: Run configuration echoed into the metadata.
    :type config: paleobreaks_cli.config.RunConfig
    :param serializer: Model serializer.
    :type serializer: paleobreaks_core.serialize.DefaultSerializer
    """
    def __init__(self, config, serializer=None):
        # type: (RunConfig, Optional[DefaultSerializer]) -> None
        self.config = config
        self.serializer = serializer or DefaultSerializer()
        self._checksum = None  # type: Optional[str]

    def metadata(self):
        # type: () -> Dict[str, Any]
        if self._checksum is None and self.config.input_path:
            self._checksum = file_checksum(
                self.config.resolve(self.config.input_path))
        return {
            "tool": tool_version_info(__version__, self.config.command),
            "config": self.serializer.serialize(self.config),
            "input_sha256": self._checksum,
            "created_at": datetime.datetime.now(
                datetime.timezone.utc).isoformat(),
        }

    @staticmethod
    def write_text(path, text):
        # type: (str, str) -> str
        """Write text through a temporary file renamed into place."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, temp_path = tempfile.mkstemp(
            dir=directory, prefix=".paleobreaks-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(temp_path, path)
        except BaseException:
            if os.path.exists(temp_path):
                os.remove(temp_path)
            raise
        return path

    def document(self, result):
        # type: (Any) -> str
        document = {"metadata": self.metadata(),
                    "result": self.serializer.serialize(result)}
        return json.dumps(document, indent=2, sort_keys=True,
                          allow_nan=False) + "\n"

    def write_json(self, path, result):
        # type: (str, Any) -> str
        """Write a model object, or a structure of them, as a JSON
        document.

        :return: The written path.
        :rtype: str
        """
        return self.write_text(path, self.document(result))

    def write_frame(self, path, frame):
        # type: (str, pd.DataFrame) -> str
        """Write a table as CSV behind a metadata comment line.

        :return: The written path.
        :rtype: str
        """
        header = "# " + json.dumps(self.metadata(), sort_keys=True) + "\n"
        return self.write_text(
            path, header + frame.to_csv(index=False, lineterminator="\n"))
