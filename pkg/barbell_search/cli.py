#!/usr/bin/env python3
"""Quantum-walk search on the weighted barbell graph.

Simulates the continuous-time search in the 5D symmetric subspace, finds
success-probability peaks, runs the two-stage algorithm and writes the
probability curves as CSV and SVG.
"""

import argparse
import math
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple, NoReturn

from . import __version__
from .asymptotics import schedule_constants
from .barbell import BarbellParams, fullspace_cap, TYPE_LABELS, validate_params, WalkKind
from .errors import (
    BarbellError,
    NegativeWeight,
    NonPositiveGamma,
    NTooSmall,
    NumericError,
    OddN,
    ParamsError,
    UsageError,
)
from .experiments import (
    run_single_stage,
    run_two_stage,
    sweep_weights,
    SweepResult,
    oracle_crosscheck,
)
from .files import emit_csv, emit_summary_csv, get_outputs_file_paths, OutputsFilePaths
from .graphs import make_graph
from .log import logger, setup_logging
from .plots import Curve, emit_svg
from .propagator import find_first_peak, PeakObservable, TimeSeries

DEFAULT_N = 1024
DEFAULT_SAMPLES = 2001

FIGURE_WEIGHTS = (1.0, 256.0, 512.0, 768.0, 1024.0, 2048.0)
TRANSITION_PANELS = {
    "a": (430.0, 460.0, 477.0, 484.0, 498.0),
    "b": (512.0, 522.0, 532.0, 542.0, 552.0),
    "c": (562.0, 576.0, 590.0, 615.0, 710.0),
}
SIZES = (1024, 2048, 4096)


class OutputFormat(Enum):
    CSV = "csv"
    SVG = "svg"
    BOTH = "both"

    @property
    def with_csv(self) -> bool:
        return self is not OutputFormat.SVG

    @property
    def with_svg(self) -> bool:
        return self is not OutputFormat.CSV


@dataclass(frozen=True, kw_only=True)
class RunConfig:
    command: str
    n_vertices: int = DEFAULT_N
    weights: tuple[float, ...] = (1.0,)
    gamma: float
    walk_kind: WalkKind = WalkKind.ADJACENCY
    t_max: float
    n_samples: int = DEFAULT_SAMPLES
    output_format: OutputFormat = OutputFormat.BOTH
    per_vertex: bool = False
    which: PeakObservable = PeakObservable.MARKED_VERTEX
    stage2_weight: float = 1.0
    switch_time: float | None = None
    detect_switch: bool = False
    n_times: int = 50
    workers: int | None = None
    figure: int | None = None
    outputs_folder: Path | None = None
    outputs_filename: str
    debug: bool = False
    fullspace_cap: int

    @property
    def params(self) -> BarbellParams:
        return validate_params(self.n_vertices, self.weights[0], self.gamma, self.walk_kind)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _walk_parent() -> argparse.ArgumentParser:
    parent = _ArgumentParser(add_help=False)
    parent.add_argument(
        "--n",
        type=int,
        default=DEFAULT_N,
        help=f"number of vertices, even and at least 6 (default {DEFAULT_N})",
    )
    parent.add_argument(
        "--gamma",
        type=float,
        help="jumping rate. If not set the critical value 2/N is used",
    )
    parent.add_argument(
        "--kind",
        choices=[str(k) for k in WalkKind],
        default=str(WalkKind.ADJACENCY),
        help="Laplacian or adjacency quantum walk",
    )
    return parent


def _output_parent() -> argparse.ArgumentParser:
    parent = _ArgumentParser(add_help=False)
    parent.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help=f"number of time samples per curve (default {DEFAULT_SAMPLES})",
    )
    parent.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.BOTH.value,
        help="which outputs to write",
    )
    parent.add_argument(
        "--per-vertex",
        action="store_true",
        help="write per-vertex instead of per-type probabilities to CSV",
    )
    return parent


def _make_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
        allow_abbrev=False,
    )
    parser.add_argument(
        "-V",
        "--version",
        action="version",
        version=__version__,
    )
    parser.add_argument(
        "-d",
        "--debug",
        action="store_true",
        help="show additional information for debug purposes",
    )
    parser.add_argument(
        "--outputs-folder",
        help="path to outputs folder. If not set $HOME/.local/barbell-search/outputs/ is used",
    )
    parser.add_argument(
        "--outputs-filename",
        help="outputs filename. If not set a name derived from the command is used",
    )

    walk, output = _walk_parent(), _output_parent()
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=_ArgumentParser
    )

    evolve = subparsers.add_parser(
        "evolve", parents=[walk, output], help="sample the evolution of one configuration"
    )
    evolve.add_argument("--w", type=float, default=1.0, help="bridge weight")
    evolve.add_argument("--tmax", type=float, help="end of the time window (default 5 sqrt(N))")

    peak = subparsers.add_parser("peak", parents=[walk], help="locate the first peak")
    peak.add_argument("--w", type=float, default=1.0, help="bridge weight")
    peak.add_argument("--tmax", type=float, help="end of the scan window (default 6 sqrt(N))")
    peak.add_argument(
        "--which",
        choices=[str(o).replace("_", "-") for o in PeakObservable],
        default="marked-vertex",
        help="observable whose peak is located",
    )

    sweep = subparsers.add_parser(
        "sweep", parents=[walk, output], help="first peaks over a list of bridge weights"
    )
    sweep.add_argument("--w", type=float, nargs="+", required=True, help="bridge weights")
    sweep.add_argument("--workers", type=int, help="number of worker threads")

    two_stage = subparsers.add_parser(
        "two-stage", parents=[output], help="resonant bridge, then switch to stage-2 weight"
    )
    two_stage.add_argument("--n", type=int, default=DEFAULT_N, help="number of vertices")
    two_stage.add_argument(
        "--stage2-weight", type=float, default=1.0, help="bridge weight after the switch"
    )
    two_stage.add_argument(
        "--switch-time", type=float, help="switch time. If not set 3.265 sqrt(N) is used"
    )
    two_stage.add_argument(
        "--detect-switch",
        action="store_true",
        help="switch at the numerically detected clique peak",
    )

    subparsers.add_parser("constants", help="print the large-N schedule constants")

    oracle = subparsers.add_parser(
        "oracle-check", parents=[walk], help="compare full-space and 5D evolution"
    )
    oracle.add_argument("--w", type=float, default=1.0, help="bridge weight")
    oracle.add_argument("--times", type=int, default=50, help="number of sampled times")

    figure = subparsers.add_parser(
        "figure", parents=[output], help="reproduce one of the reference figures"
    )
    figure.add_argument("number", type=int, choices=range(3, 11), help="figure number")

    return parser


def _flag_for(error: ParamsError) -> str:
    match error:
        case OddN() | NTooSmall():
            return "--n"
        case NegativeWeight():
            return "--w"
        case NonPositiveGamma():
            return "--gamma"
    return "arguments"


def _finite_positive(value: float) -> bool:
    return math.isfinite(value) and value > 0


def _default_filename(args: argparse.Namespace, weights: Sequence[float]) -> str:
    match args.command:
        case "figure":
            return f"figure-{args.number}"
        case "evolve" | "peak" | "oracle-check":
            return f"{args.command}-n{args.n}-w{weights[0]:g}-{args.kind}"
        case "sweep":
            return f"sweep-n{args.n}-{args.kind}"
        case "two-stage":
            return f"two-stage-n{args.n}-w{args.stage2_weight:g}"
    return str(args.command)


def parse_cli(argv: Sequence[str] | None = None) -> RunConfig:
    args = _make_parser().parse_args(argv)

    n_vertices = getattr(args, "n", DEFAULT_N)
    raw_weights = getattr(args, "w", 1.0)
    weights = tuple(raw_weights) if isinstance(raw_weights, list) else (raw_weights,)
    walk_kind = WalkKind.from_name(getattr(args, "kind", str(WalkKind.ADJACENCY)))
    gamma = getattr(args, "gamma", None)

    try:
        for w in weights:
            validate_params(n_vertices, w, gamma, walk_kind)
    except ParamsError as e:
        raise UsageError(f"argument {_flag_for(e)}: {e}") from e

    if (n_samples := getattr(args, "samples", DEFAULT_SAMPLES)) < 2:
        raise UsageError(f"argument --samples: at least 2 samples are needed, got {n_samples}")
    if (t_max := getattr(args, "tmax", None)) is not None and not _finite_positive(t_max):
        raise UsageError(f"argument --tmax: must be finite and positive, got {t_max}")
    stage2_weight = getattr(args, "stage2_weight", 1.0)
    if not (math.isfinite(stage2_weight) and stage2_weight >= 0):
        raise UsageError(
            f"argument --stage2-weight: must be finite and non-negative, got {stage2_weight}"
        )
    switch_time = getattr(args, "switch_time", None)
    if switch_time is not None and not _finite_positive(switch_time):
        raise UsageError(f"argument --switch-time: must be finite and positive, got {switch_time}")
    if (n_times := getattr(args, "times", 50)) < 2:
        raise UsageError(f"argument --times: at least 2 times are needed, got {n_times}")

    try:
        cap = fullspace_cap()
    except ParamsError as e:
        raise UsageError(str(e)) from e

    horizon = 6.0 if args.command == "peak" else 5.0
    return RunConfig(
        command=args.command,
        n_vertices=n_vertices,
        weights=weights,
        gamma=2.0 / n_vertices if gamma is None else gamma,
        walk_kind=walk_kind,
        t_max=horizon * math.sqrt(n_vertices) if t_max is None else t_max,
        n_samples=n_samples,
        output_format=OutputFormat(getattr(args, "format", OutputFormat.BOTH.value)),
        per_vertex=getattr(args, "per_vertex", False),
        which=PeakObservable[getattr(args, "which", "marked-vertex").upper().replace("-", "_")],
        stage2_weight=stage2_weight,
        switch_time=switch_time,
        detect_switch=getattr(args, "detect_switch", False),
        n_times=n_times,
        workers=getattr(args, "workers", None),
        figure=getattr(args, "number", None),
        outputs_folder=Path(args.outputs_folder) if args.outputs_folder else None,
        outputs_filename=args.outputs_filename or _default_filename(args, weights),
        debug=args.debug,
        fullspace_cap=cap,
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_cli(argv)
    except UsageError as e:
        sys.stderr.write(f"barbell_search: error: {e}\n")
        return 1

    outputs_filepaths = get_outputs_file_paths(config.outputs_folder, config.outputs_filename)
    setup_logging(outputs_filepaths.log, config.debug)
    logger.info("Run %s", config)

    try:
        _run(config, outputs_filepaths)
    except ParamsError as e:
        logger.error("Invalid parameters: %s", e)
        sys.stderr.write(f"barbell_search: error: {e}\n")
        return 1
    except (NumericError, OSError) as e:
        logger.error("Run failed: %s", e)
        sys.stderr.write(f"barbell_search: error: {e}\n")
        return 2
    except BarbellError as e:
        logger.error("Run failed: %s", e)
        sys.stderr.write(f"barbell_search: error: {e}\n")
        return 1
    return 0


def _run(config: RunConfig, paths: OutputsFilePaths) -> None:
    match config.command:
        case "evolve":
            _run_evolve(config, paths)
        case "peak":
            peak = find_first_peak(config.params, config.which, config.t_max)
            sys.stdout.write(f"{config.params}: {peak}\n")
        case "sweep":
            result = sweep_weights(
                config.n_vertices,
                config.walk_kind,
                config.weights,
                gamma=config.gamma,
                n_samples=config.n_samples,
                workers=config.workers,
            )
            _emit_sweep(config, paths, result, title=f"N={config.n_vertices}, {config.walk_kind}")
        case "two-stage":
            _run_two_stage(config, paths)
        case "constants":
            sys.stdout.write(f"{schedule_constants()}\n")
        case "oracle-check":
            deviation = oracle_crosscheck(
                config.n_vertices,
                config.weights[0],
                config.walk_kind,
                n_times=config.n_times,
                gamma=config.gamma,
            )
            sys.stdout.write(f"{config.params}: max deviation {deviation:.3e}\n")
        case "figure":
            _run_figure(config, paths)
        case _:
            raise UsageError(f"unknown command {config.command!r}")


#   .--commands------------------------------------------------------------.
#   '----------------------------------------------------------------------'


class Table(NamedTuple):
    tag: str
    series: TimeSeries
    per_vertex: bool


def _emit(
    config: RunConfig,
    paths: OutputsFilePaths,
    tables: Sequence[Table],
    curves: Sequence[Curve],
    *,
    title: str,
    switch_times: Sequence[float] = (),
) -> None:
    if config.output_format.with_csv:
        for table in tables:
            target = paths.tagged(table.tag).csv if table.tag else paths.csv
            emit_csv(table.series, target, per_vertex=table.per_vertex)
            sys.stdout.write(f"Write CSV data to {target}\n")
    if config.output_format.with_svg:
        emit_svg(curves, paths.svg, title=title, switch_times=switch_times)
        sys.stdout.write(f"Write SVG figure to {paths.svg}\n")


def _marked_curve(label: str, series: TimeSeries) -> Curve:
    return Curve(label, series.times, series.aggregate[:, 0])


def _type_curves(series: TimeSeries) -> Sequence[Curve]:
    curves = [
        Curve(label, series.times, series.aggregate[:, nr])
        for nr, label in enumerate(TYPE_LABELS)
    ]
    curves.append(Curve("a+b+c", series.times, series.clique))
    return curves


def _run_evolve(config: RunConfig, paths: OutputsFilePaths) -> None:
    series, peak = run_single_stage(config.params, config.t_max, config.n_samples)
    sys.stdout.write(f"{config.params}: {peak}\n")
    _emit(
        config,
        paths,
        [Table("", series, config.per_vertex)],
        _type_curves(series),
        title=str(config.params),
    )


def _run_two_stage(config: RunConfig, paths: OutputsFilePaths) -> None:
    result = run_two_stage(
        config.n_vertices,
        stage2_weight=config.stage2_weight,
        override_switch_time=config.switch_time,
        detect_switch=config.detect_switch,
        n_samples=config.n_samples,
    )
    sys.stdout.write(f"N={config.n_vertices}: {result}\n")
    _emit(
        config,
        paths,
        [Table("", result.series, config.per_vertex)],
        _type_curves(result.series),
        title=f"N={config.n_vertices}, two stages",
        switch_times=[result.switch_time],
    )


def _emit_sweep(
    config: RunConfig, paths: OutputsFilePaths, result: SweepResult, *, title: str
) -> None:
    for row in result.rows:
        second = f", resonant {row.second_maximum}" if row.second_maximum else ""
        sys.stdout.write(f"w={row.w:g}: {row.peak}{second}\n")
    if config.output_format.with_csv:
        summary = paths.tagged("summary").csv
        emit_summary_csv(
            [row.w for row in result.rows],
            [row.peak.t_star for row in result.rows],
            [row.peak.p_star for row in result.rows],
            summary,
            second_maxima=[row.second_maximum for row in result.rows],
        )
        sys.stdout.write(f"Write CSV data to {summary}\n")
    _emit(
        config,
        paths,
        [Table(row.curve_id, result.curve(row), config.per_vertex) for row in result.rows],
        [_marked_curve(row.curve_id, result.curve(row)) for row in result.rows],
        title=title,
    )


def _run_figure(config: RunConfig, paths: OutputsFilePaths) -> None:
    match config.figure:
        case 3:
            make_graph(paths.graph, validate_params(10, 1.0, None, WalkKind.ADJACENCY))
        case 4 | 5:
            kind = WalkKind.LAPLACIAN if config.figure == 4 else WalkKind.ADJACENCY
            result = sweep_weights(
                DEFAULT_N, kind, FIGURE_WEIGHTS, n_samples=config.n_samples, workers=config.workers
            )
            _emit_sweep(config, paths, result, title=f"N={DEFAULT_N}, {kind}")
        case 6:
            params = validate_params(DEFAULT_N, DEFAULT_N / 2, None, WalkKind.ADJACENCY)
            series, peak = run_single_stage(params, 160.0, config.n_samples)
            sys.stdout.write(f"{params}: {peak}\n")
            _emit(
                config,
                paths,
                [Table("", series, False), Table("per-vertex", series, True)],
                _type_curves(series),
                title=str(params),
            )
        case 7:
            _run_two_stage(config, paths)
        case 8:
            tables, curves = [], []
            for n in SIZES:
                params = validate_params(n, n / 2, None, WalkKind.ADJACENCY)
                series, peak = run_single_stage(params, 200.0, config.n_samples)
                sys.stdout.write(f"{params}: {peak}\n")
                tables.append(Table(f"N={n}", series, config.per_vertex))
                curves.append(_marked_curve(f"N={n}", series))
            _emit(config, paths, tables, curves, title="w = N/2")
        case 9:
            for panel, weights in TRANSITION_PANELS.items():
                result = sweep_weights(
                    DEFAULT_N,
                    WalkKind.ADJACENCY,
                    weights,
                    n_samples=config.n_samples,
                    workers=config.workers,
                )
                _emit_sweep(config, paths.tagged(panel), result, title=f"({panel})")
        case 10:
            tables, curves, switch_times = [], [], []
            for n in SIZES:
                result = run_two_stage(n, n_samples=config.n_samples)
                sys.stdout.write(f"N={n}: {result}\n")
                tables.append(Table(f"N={n}", result.series, config.per_vertex))
                curves.append(_marked_curve(f"N={n}", result.series))
                switch_times.append(result.switch_time)
            _emit(config, paths, tables, curves, title="two stages", switch_times=switch_times)
