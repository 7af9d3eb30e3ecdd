#!/usr/bin/env python3

import math
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Final

import numpy as np

from .log import logger
from .propagator import PeakResult, TimeSeries

CSV_FORMAT: Final = "%.12g"
SERIES_HEADER: Final = "t,p_a,p_b,p_c,p_d,p_e,p_clique"
PER_VERTEX_HEADER: Final = "t,pv_a,pv_b,pv_c,pv_d,pv_e,p_clique"
SUMMARY_HEADER: Final = "w,t_star,p_star"
SECOND_MAXIMUM_HEADER: Final = "t_second,p_second"


@dataclass(frozen=True, kw_only=True)
class OutputsFilePaths:
    log: Path
    csv: Path
    svg: Path
    graph: Path

    def tagged(self, tag: str) -> "OutputsFilePaths":
        """Sibling paths for one curve out of several, e.g. one sweep weight"""
        return OutputsFilePaths(
            log=self.log,
            csv=_with_tag(self.csv, tag),
            svg=_with_tag(self.svg, tag),
            graph=_with_tag(self.graph, tag),
        )


def _with_tag(path: Path, tag: str) -> Path:
    safe = "".join(c if c.isalnum() or c in "-." else "_" for c in tag)
    return path.with_name(f"{path.stem}_{safe}{path.suffix}")


def get_outputs_file_paths(outputs_folder: Path | None, outputs_filename: str) -> OutputsFilePaths:
    if not outputs_folder:
        outputs_folder = Path.home() / Path(".local", "barbell-search", "outputs")
    outputs_folder.mkdir(parents=True, exist_ok=True)
    stem = outputs_folder / outputs_filename
    return OutputsFilePaths(
        log=stem.with_suffix(".log"),
        csv=stem.with_suffix(".csv"),
        svg=stem.with_suffix(".svg"),
        graph=stem.with_suffix(".gv"),
    )


def _save_rows(path: Path, rows: np.ndarray, header: str) -> None:
    np.savetxt(
        path,
        rows,
        fmt=CSV_FORMAT,
        delimiter=",",
        newline="\n",
        header=header,
        comments="",
        encoding="utf-8",
    )


def emit_csv(series: TimeSeries, path: Path, per_vertex: bool = False) -> None:
    if not len(series):
        raise ValueError("cannot write an empty series")
    columns = series.per_vertex if per_vertex else series.aggregate
    rows = np.column_stack([series.times, columns, series.clique])
    _save_rows(path, rows, PER_VERTEX_HEADER if per_vertex else SERIES_HEADER)
    logger.info("Wrote %d rows to %s", len(series), path)


def emit_summary_csv(
    weights: Sequence[float],
    t_stars: Sequence[float],
    p_stars: Sequence[float],
    path: Path,
    second_maxima: Sequence[PeakResult | None] | None = None,
) -> None:
    """One row per weight; absent second maxima are written as nan"""
    if not weights:
        raise ValueError("cannot write an empty summary")
    columns: list[Sequence[float]] = [weights, t_stars, p_stars]
    header = SUMMARY_HEADER
    if second_maxima is not None:
        columns.append([math.nan if p is None else p.t_star for p in second_maxima])
        columns.append([math.nan if p is None else p.p_star for p in second_maxima])
        header = f"{header},{SECOND_MAXIMUM_HEADER}"
    _save_rows(path, np.column_stack(columns), header)
    logger.info("Wrote sweep summary with %d rows to %s", len(weights), path)
