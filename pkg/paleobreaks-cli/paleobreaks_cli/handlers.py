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
import json
import logging
import os
import typing

from paleobreaks_core.binning import (
    WESTERHOLD_BOUNDARIES, WESTERHOLD_STATE_NAMES, bin_mean,
    full_sample_summary, state_summary)
from paleobreaks_core.engine import estimate, estimate_path, ssr_path
from paleobreaks_core.inference import (
    adf_test, attach_standard_errors, break_confidence_intervals,
    information_criteria)
from paleobreaks_core.ingest import gap_statistics, load_csv
from paleobreaks_core.regression import ModelSpec
from paleobreaks_runtime.exceptions import PaleoBreaksException
from paleobreaks_simulation.density import density_export
from paleobreaks_simulation.dgp import dgp_config
from paleobreaks_simulation.study import (
    StudyConfig, StudyMode, replication_frame, run_study)

from .command_input import CommandResult
from .config import Command
from .exceptions import RunConfigException
from .pipeline import PipelineBuilder
from .plot_data import emit_plot_data
from .predicate import is_command, is_exception_type
from .series_io import binned_frame, load_series, raw_frame

if typing.TYPE_CHECKING:
    from typing import Any, Dict, List
    from paleobreaks_core.binning import BinnedSeries
    from paleobreaks_core.engine import BreakFit
    from .command_input import CommandInput

logger = logging.getLogger("paleobreaks.cli")

EXIT_CONFIG_ERROR = 2
EXIT_FAILURE = 1

pipeline_builder = PipelineBuilder()


def normalized_path(output_path):
    # type: (str) -> str
    """Path of the normalized record written next to an ingest report."""
    return os.path.splitext(output_path)[0] + ".csv"


def _model_spec(config, kind, bin_size):
    # type: (Any, str, float) -> ModelSpec
    return ModelSpec.from_h(kind, config.h_myr, bin_size)


def _with_inference(fit, level):
    # type: (BreakFit, float) -> BreakFit
    if fit.m:
        break_confidence_intervals(fit, level)
    return attach_standard_errors(fit)


def _plot(command_input, fits, series):
    # type: (CommandInput, List[BreakFit], BinnedSeries) -> List[str]
    config = command_input.config
    if not config.plot_dir:
        return []
    return emit_plot_data(fits, series, config.plot_dir,
                          command_input.writer, svg=config.svg)


def _states(config, series):
    # type: (Any, BinnedSeries) -> List[Any]
    """State windows ``(name, older, younger)``; the reference states
    are dropped with a warning when the series does not span them.
    """
    if config.boundaries:
        boundaries = list(config.boundaries)
        names = ["State {}".format(i + 1)
                 for i in range(len(boundaries) + 1)]
    else:
        boundaries = list(WESTERHOLD_BOUNDARIES)
        names = list(WESTERHOLD_STATE_NAMES)
        ages = series.ages
        if not all(ages.min() < b < ages.max() for b in boundaries):
            logger.warning(
                "Series %.3f-%.3f Ma doesn't span the reference state "
                "boundaries; states are skipped", ages.max(), ages.min())
            return []
    edges = [float("inf")] + boundaries + [float("-inf")]
    return list(zip(names, edges, edges[1:]))


@pipeline_builder.global_command_interceptor()
def validate_config(command_input):
    # type: (CommandInput) -> None
    command_input.config.validate()


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.INGEST.value))
def ingest_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    path = config.resolve(config.input_path)
    raw = load_csv(path, age_column=config.age_column,
                   value_column=config.value_column)
    result = {
        "source": raw.source_label,
        "n_observations": len(raw),
        "dropped_rows": raw.dropped_rows,
        "oldest_Ma": float(raw.ages.max()),
        "youngest_Ma": float(raw.ages.min()),
        "gaps": gap_statistics(raw, config.gap_threshold),
    }
    writer = command_input.writer
    return CommandResult(outputs=[
        writer.write_json(config.output_path, result),
        writer.write_frame(normalized_path(config.output_path),
                           raw_frame(raw))])


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.BIN.value))
def bin_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    writer = command_input.writer
    raw = load_csv(config.resolve(config.input_path),
                   age_column=config.age_column,
                   value_column=config.value_column)
    outputs = []
    for bin_size in config.bin_sizes:
        binned = bin_mean(raw, bin_size)
        outputs.append(writer.write_frame(
            os.path.join(config.output_path,
                         "binned_{:g}kyr.csv".format(bin_size)),
            binned_frame(binned)))
        windows = _states(config, binned)
        states = []
        if windows:
            states = state_summary(
                binned, [older for _, older, _ in windows[1:]],
                [name for name, _, _ in windows])
        outputs.append(writer.write_json(
            os.path.join(config.output_path,
                         "states_{:g}kyr.json".format(bin_size)),
            {"bin_kyr": bin_size, "n_bins": len(binned),
             "n_interpolated": int(binned.interpolated.sum()),
             "full_sample": full_sample_summary(binned),
             "states": states}))
    return CommandResult(outputs=outputs)


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.ESTIMATE.value))
def estimate_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    series = load_series(config)
    spec = _model_spec(config, config.specs[0], series.bin_size)
    fit = _with_inference(estimate(series, spec, config.m), config.ci_level)
    outputs = [command_input.writer.write_json(config.output_path, fit)]
    outputs.extend(_plot(command_input, [fit], series))
    return CommandResult(outputs=outputs)


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.PATH.value))
def path_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    series = load_series(config)
    spec = _model_spec(config, config.specs[0], series.bin_size)
    fits = [_with_inference(fit, config.ci_level)
            for fit in estimate_path(series, spec, config.m_max)]
    outputs = [command_input.writer.write_json(config.output_path, fits)]
    outputs.extend(_plot(command_input, fits, series))
    return CommandResult(outputs=outputs)


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.SELECT.value))
def select_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    serializer = command_input.serializer
    tables = []  # type: List[Dict[str, Any]]
    summary = []  # type: List[Dict[str, Any]]
    for bin_size in config.bin_sizes:
        series = load_series(config, bin_size=bin_size)
        for kind in config.specs:
            spec = _model_spec(config, kind, series.bin_size)
            path = ssr_path(series, spec, config.m_max)
            table = serializer.serialize(
                information_criteria(path, path.n_obs, spec.q, spec.p))
            row = {"bin_kyr": series.bin_size, "spec": kind,
                   "bic": table["selected_bic"],
                   "lwz": table["selected_lwz"]}
            if config.with_kt:
                row["kt"] = table["selected_kt"]
            else:
                table.pop("selected_kt", None)
                for ic_row in table["rows"]:
                    ic_row.pop("kt", None)
            tables.append({"bin_kyr": series.bin_size, "spec": kind,
                           "min_segment_obs": spec.min_segment_obs,
                           "max_breaks": path.max_breaks,
                           "table": table})
            summary.append(row)
    result = {"tables": tables, "summary": summary}
    return CommandResult(outputs=[
        command_input.writer.write_json(config.output_path, result)])


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.ADF.value))
def adf_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    series = load_series(config)
    regression = "ct" if config.adf_trend else "c"
    result = {"full_sample": adf_test(series, config.adf_alpha, regression),
              "states": []}  # type: Dict[str, Any]
    if config.states:
        for name, older, younger in _states(config, series):
            entry = {"state": name}  # type: Dict[str, Any]
            try:
                window = series.between(older, younger)
                entry["older_Ma"] = float(window.ages.max())
                entry["younger_Ma"] = float(window.ages.min())
                entry["adf"] = adf_test(window, config.adf_alpha, regression)
            except PaleoBreaksException as e:
                logger.warning("ADF screen of %s skipped: %s", name, e)
                entry["error"] = str(e)
            result["states"].append(entry)
    return CommandResult(outputs=[
        command_input.writer.write_json(config.output_path, result)])


def _study_config(command_input):
    # type: (CommandInput) -> StudyConfig
    config = command_input.config
    serializer = command_input.serializer
    if config.study_config:
        with open(config.resolve(config.study_config), "r") as f:
            payload = json.load(f)
        if isinstance(payload.get("dgp"), (str, int)):
            payload["dgp"] = serializer.serialize(dgp_config(payload["dgp"]))
        return serializer.deserialize_data(
            payload, "paleobreaks_simulation.study.StudyConfig")
    return StudyConfig(
        dgp=dgp_config(config.dgp, include_initial=config.include_initial),
        spec_kind=config.specs[0], replications=config.reps,
        seed=config.seed, mode=config.mode,
        m=config.m if config.m else 1,
        max_breaks=config.m_max if config.m_max else 3,
        min_segment_obs=config.min_len, level=config.ci_level,
        workers=config.workers)


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.SIMULATE.value))
def simulate_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    writer = command_input.writer
    result = run_study(_study_config(command_input))
    stem = os.path.splitext(config.output_path)[0]
    outputs = [
        writer.write_json(config.output_path, result),
        writer.write_frame(stem + "_replications.csv",
                           replication_frame(result))]
    with_breaks = [r for r in result.successful if r.break_indices]
    if result.config.mode == StudyMode.FIXED.value and len(with_breaks) > 1:
        outputs.append(writer.write_frame(stem + "_density.csv",
                                          density_export(result)))
    return CommandResult(outputs=outputs)


@pipeline_builder.command_handler(
    can_handle_func=is_command(Command.REVERSE.value))
def reverse_handler(command_input):
    # type: (CommandInput) -> CommandResult
    config = command_input.config
    series = load_series(config, reverse=True)
    return CommandResult(outputs=[command_input.writer.write_frame(
        config.output_path, binned_frame(series))])


def _error_result(command_input, exception, exit_code):
    # type: (CommandInput, Exception, int) -> CommandResult
    error = {"error": {"type": type(exception).__name__,
                       "message": str(exception),
                       "command": command_input.config.command}}
    command_input.error_stream.write(json.dumps(error, sort_keys=True) + "\n")
    return CommandResult(exit_code=exit_code, error=error)


@pipeline_builder.exception_handler(
    can_handle_func=is_exception_type(RunConfigException))
def config_error_handler(command_input, exception):
    # type: (CommandInput, Exception) -> CommandResult
    logger.error("Invalid configuration: %s", exception)
    return _error_result(command_input, exception, EXIT_CONFIG_ERROR)


@pipeline_builder.exception_handler(
    can_handle_func=is_exception_type(PaleoBreaksException, OSError))
def command_error_handler(command_input, exception):
    # type: (CommandInput, Exception) -> CommandResult
    logger.error("%s failed: %s", command_input.config.command, exception)
    return _error_result(command_input, exception, EXIT_FAILURE)


@pipeline_builder.exception_handler(
    can_handle_func=is_exception_type(Exception))
def unexpected_error_handler(command_input, exception):
    # type: (CommandInput, Exception) -> CommandResult
    logger.exception("Unexpected error in %s", command_input.config.command)
    return _error_result(command_input, exception, EXIT_FAILURE)
