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
import argparse
import json
import logging
import sys
import typing

from .__version__ import __version__
from .command_input import CommandInput
from .config import Command, RunConfig
from .handlers import EXIT_CONFIG_ERROR, pipeline_builder
from .writer import ResultWriter

if typing.TYPE_CHECKING:
    from typing import Callable, List, Optional


class JsonErrorParser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as a JSON error document.

    The document has the layout the pipeline writes for a
    :py:class:`paleobreaks_cli.config.RunConfigException`, and the
    process exits with the configuration error status.
    """
    command = None  # type: Optional[str]

    def parse_known_args(self, args=None, namespace=None):
        # type: (Optional[List[str]], Optional[argparse.Namespace]) -> tuple
        namespace, extras = super(JsonErrorParser, self).parse_known_args(
            args, namespace)
        self.command = getattr(namespace, "command", None)
        return namespace, extras

    def error(self, message):
        # type: (str) -> None
        words = self.prog.split()
        command = words[-1] if len(words) > 1 else self.command
        error = {"error": {"type": "RunConfigException",
                           "message": message,
                           "command": command}}
        sys.stderr.write(json.dumps(error, sort_keys=True) + "\n")
        self.exit(EXIT_CONFIG_ERROR)


def _comma_list(convert):
    # type: (Callable) -> Callable[[str], list]
    def parse(text):
        # type: (str) -> list
        try:
            return [convert(item.strip()) for item in text.split(",")
                    if item.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(
                "invalid comma separated list: '{}'".format(text))
    return parse


def _add_columns(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument("--age-column", default="age_Ma")
    parser.add_argument("--value-column", default="d18O_corr")


def _add_estimation(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument("--bin-kyr", type=_comma_list(float))
    parser.add_argument("--spec", type=_comma_list(str),
                        help="mean, fixed-ar or ar")
    parser.add_argument("--h-myr", type=float,
                        help="minimum regime duration in Myr")
    parser.add_argument("--ci-level", type=float)
    parser.add_argument("--reverse", action="store_true",
                        help="estimate on the time-reversed series")


def _add_plot(parser):
    # type: (argparse.ArgumentParser) -> None
    parser.add_argument("--plot-dir",
                        help="directory for the figure layer CSV files")
    parser.add_argument("--svg", action="store_true",
                        help="also render plot.svg into --plot-dir")


def build_parser():
    # type: () -> argparse.ArgumentParser
    """Argument parser with one subcommand per pipeline stage."""
    parser = JsonErrorParser(
        prog="paleobreaks", allow_abbrev=False,
        description="Structural break analysis of paleoclimate records.")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def command(name, help_text, with_input=True):
        # type: (str, str, bool) -> argparse.ArgumentParser
        sub = commands.add_parser(name, help=help_text, allow_abbrev=False)
        if with_input:
            sub.add_argument("input_path", metavar="INPUT")
        sub.add_argument("-o", "--output", dest="output_path",
                         required=True)
        sub.add_argument("-v", "--verbose", action="store_true",
                         default=argparse.SUPPRESS)
        return sub

    ingest = command(Command.INGEST.value,
                     "load a raw record and report sampling gaps")
    _add_columns(ingest)
    ingest.add_argument("--gap-threshold", type=float,
                        help="gap size in kyr to count")

    binning = command(Command.BIN.value,
                      "mean-bin a raw record into an output directory")
    _add_columns(binning)
    binning.add_argument("--bin-kyr", type=_comma_list(float))
    binning.add_argument("--boundaries", type=_comma_list(float),
                         help="state boundaries in Ma, oldest first")

    estimate = command(Command.ESTIMATE.value,
                       "estimate a model with a given break count")
    _add_columns(estimate)
    _add_estimation(estimate)
    estimate.add_argument("--m", type=int, help="number of breaks")
    _add_plot(estimate)

    path = command(Command.PATH.value,
                   "estimate the models with 1..m-max breaks")
    _add_columns(path)
    _add_estimation(path)
    path.add_argument("--m-max", type=int)
    _add_plot(path)

    select = command(Command.SELECT.value,
                     "information criteria per bin size and spec")
    _add_columns(select)
    _add_estimation(select)
    select.add_argument("--m-max", type=int)
    select.add_argument("--with-kt", action="store_true",
                        help="also report the KT criterion")

    adf = command(Command.ADF.value, "augmented Dickey-Fuller screen")
    _add_columns(adf)
    adf.add_argument("--bin-kyr", type=_comma_list(float))
    adf.add_argument("--reverse", action="store_true")
    adf.add_argument("--states", action="store_true",
                     help="also screen every state")
    adf.add_argument("--boundaries", type=_comma_list(float))
    adf.add_argument("--adf-trend", action="store_true",
                     help="include a linear trend in the test regression")
    adf.add_argument("--alpha", dest="adf_alpha", type=float)

    simulate = command(Command.SIMULATE.value, "Monte Carlo study",
                       with_input=False)
    simulate.add_argument("--dgp", help="1-8 or 2s, 3s, 4s, 5s, 7s, 8s")
    simulate.add_argument("--config", dest="study_config",
                          help="study configuration JSON file")
    simulate.add_argument("--spec", type=_comma_list(str))
    simulate.add_argument("--reps", type=int)
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--mode", choices=["fixed", "select"])
    simulate.add_argument("--m", type=int)
    simulate.add_argument("--m-max", type=int)
    simulate.add_argument("--min-len", type=int,
                          help="minimum segment length in observations")
    simulate.add_argument("--ci-level", type=float)
    simulate.add_argument("--workers", type=int)
    simulate.add_argument("--include-initial", action="store_true",
                          help="condition estimation on y_0")

    reverse = command(Command.REVERSE.value,
                      "reverse the time order of a binned series")
    _add_columns(reverse)
    reverse.add_argument("--bin-kyr", type=_comma_list(float))
    return parser


def main(argv=None):
    # type: (Optional[List[str]]) -> int
    """Run one command and return its exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    config = RunConfig.from_namespace(args)
    pipeline = pipeline_builder.create()
    result = pipeline.invoke(CommandInput(config, ResultWriter(config)))
    return result.exit_code


def run():
    # type: () -> None
    sys.exit(main())


if __name__ == "__main__":
    run()
