#!/usr/bin/env python3
"""Search runs on the barbell: single stage, weight sweeps, the two-stage
algorithm and the full-space cross-check of the 5D reduction."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import auto, Enum
from typing import Final, NamedTuple

import numpy as np

from .asymptotics import solve_single_peak_constant, two_stage_schedule, TwoStageSchedule
from .barbell import (
    BarbellParams,
    build_fullspace_hamiltonian,
    build_fullspace_uniform_state,
    build_initial_state,
    build_search_hamiltonian,
    fullspace_cap,
    SUBSPACE_DIM,
    validate_params,
    vertex_types,
    WalkKind,
)
from .errors import CapExceeded, ParamsError
from .log import logger
from .propagator import (
    eigendecompose,
    evolve,
    evolve_many,
    find_first_peak,
    find_peaks_in_window,
    make_observable,
    peak_xatol,
    PeakObservable,
    PeakResult,
    select_first_peak,
    TimeSeries,
)
from .type_defs import ComplexArray

DEFAULT_SAMPLES: Final = 2001
SWEEP_HORIZON_X: Final = 6.0
ORACLE_HORIZON_X: Final = 5.0
# Times, in units of the resonant single-stage peak time, within which the
# resonant maximum is followed across a weight sweep
RESONANT_WINDOW: Final = (0.6, 1.2)


class CurveRun(NamedTuple):
    series: TimeSeries
    peaks: Sequence[PeakResult]


def _run_curve(
    params: BarbellParams,
    t_max: float,
    n_samples: int,
    psi0: ComplexArray | None = None,
) -> CurveRun:
    eigsys = eigendecompose(build_search_hamiltonian(params))
    start = build_initial_state(params).amplitudes if psi0 is None else psi0
    times = np.linspace(0.0, t_max, n_samples)
    series = TimeSeries.from_states(times, evolve_many(eigsys, start, times), params)
    observable = make_observable(eigsys, start, params, PeakObservable.MARKED_VERTEX)
    peaks = find_peaks_in_window(
        observable, PeakObservable.MARKED_VERTEX, t_max, peak_xatol(params.n_vertices)
    )
    return CurveRun(series, peaks)


def run_single_stage(
    params: BarbellParams, t_max: float, n_samples: int = DEFAULT_SAMPLES
) -> tuple[TimeSeries, PeakResult]:
    logger.info("Single-stage run: %s, t_max=%s", params, t_max)
    run = _run_curve(params, t_max, n_samples)
    return run.series, select_first_peak(run.peaks)


#   .--two stage-----------------------------------------------------------.
#   '----------------------------------------------------------------------'


class SwitchMode(Enum):
    ANALYTIC = auto()
    DETECTED = auto()
    OVERRIDE = auto()

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, kw_only=True)
class TwoStageResult:
    switch_time: float
    switch_mode: SwitchMode
    analytic_switch_time: float
    detected_switch_time: float
    series: TimeSeries
    final_peak: PeakResult
    schedule: TwoStageSchedule

    def __str__(self) -> str:
        return (
            f"switch at t'={self.switch_time:.3f} ({self.switch_mode}; "
            f"analytic {self.analytic_switch_time:.3f}, detected {self.detected_switch_time:.3f}), "
            f"final {self.final_peak}"
        )


def run_two_stage(
    n_vertices: int,
    stage2_weight: float = 1.0,
    override_switch_time: float | None = None,
    detect_switch: bool = False,
    n_samples: int = DEFAULT_SAMPLES,
) -> TwoStageResult:
    """Resonant bridge w = N/2 up to t', then stage2_weight, carrying the state"""
    resonant = validate_params(n_vertices, n_vertices // 2, None, WalkKind.ADJACENCY)
    relaxed = resonant.with_weight(stage2_weight)
    schedule = two_stage_schedule(n_vertices)

    detected = find_first_peak(
        resonant, PeakObservable.MARKED_CLIQUE, 1.5 * schedule.switch_time
    ).t_star
    if override_switch_time is not None:
        if not override_switch_time > 0:
            raise ParamsError(f"switch time must be positive, got {override_switch_time}")
        switch_time, mode = override_switch_time, SwitchMode.OVERRIDE
    elif detect_switch:
        switch_time, mode = detected, SwitchMode.DETECTED
    else:
        switch_time, mode = schedule.switch_time, SwitchMode.ANALYTIC

    logger.info("Two-stage run for N=%d: switch at %s (%s)", n_vertices, switch_time, mode)
    first_eigsys = eigendecompose(build_search_hamiltonian(resonant))
    psi0 = build_initial_state(resonant).amplitudes
    first_times = np.linspace(0.0, switch_time, n_samples)
    first = TimeSeries.from_states(
        first_times, evolve_many(first_eigsys, psi0, first_times), resonant
    )

    logger.info("Switch bridge weight %s -> %s", resonant.bridge_weight, stage2_weight)
    boundary = evolve(first_eigsys, psi0, switch_time)
    second = _run_curve(relaxed, 2.0 * schedule.stage2_time, n_samples, psi0=boundary)
    stage2_peak = select_first_peak(second.peaks)

    result = TwoStageResult(
        switch_time=switch_time,
        switch_mode=mode,
        analytic_switch_time=schedule.switch_time,
        detected_switch_time=detected,
        series=first.concatenated(second.series.shifted(switch_time)),
        final_peak=PeakResult(
            t_star=switch_time + stage2_peak.t_star,
            p_star=stage2_peak.p_star,
            which=stage2_peak.which,
            prominence=stage2_peak.prominence,
        ),
        schedule=schedule,
    )
    logger.info("Two-stage result: %s", result)
    return result


#   .--sweeps--------------------------------------------------------------.
#   '----------------------------------------------------------------------'


@dataclass(frozen=True, kw_only=True)
class SweepRow:
    w: float
    peak: PeakResult
    peaks: Sequence[PeakResult]
    curve_id: str
    resonant_window: tuple[float, float]

    @property
    def second_maximum(self) -> PeakResult | None:
        """Highest local maximum inside the resonant window, None far from resonance"""
        lower, upper = self.resonant_window
        inside = [p for p in self.peaks if lower <= p.t_star <= upper]
        return max(inside, key=lambda p: p.p_star, default=None)


@dataclass(frozen=True)
class SweepResult:
    rows: Sequence[SweepRow]
    curves: Mapping[str, TimeSeries]

    def curve(self, row: SweepRow) -> TimeSeries:
        return self.curves[row.curve_id]


def curve_id_for(bridge_weight: float) -> str:
    return f"w={bridge_weight:g}"


def sweep_weights(
    n_vertices: int,
    kind: WalkKind,
    weights: Sequence[float],
    gamma: float | None = None,
    n_samples: int = DEFAULT_SAMPLES,
    workers: int | None = None,
) -> SweepResult:
    if not weights:
        raise ParamsError("weight sweep needs at least one weight")
    params = [validate_params(n_vertices, w, gamma, kind) for w in sorted(set(weights))]
    t_max = SWEEP_HORIZON_X * math.sqrt(n_vertices)
    t_resonant = solve_single_peak_constant() * math.sqrt(n_vertices)
    resonant_window = (RESONANT_WINDOW[0] * t_resonant, RESONANT_WINDOW[1] * t_resonant)

    logger.info("Sweep %d weights for N=%d, %s", len(params), n_vertices, kind)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        runs = list(executor.map(lambda p: _run_curve(p, t_max, n_samples), params))

    rows = []
    curves = {}
    for p, run in zip(params, runs):
        curve_id = curve_id_for(p.bridge_weight)
        curves[curve_id] = run.series
        rows.append(
            SweepRow(
                w=p.bridge_weight,
                peak=select_first_peak(run.peaks),
                peaks=run.peaks,
                curve_id=curve_id,
                resonant_window=resonant_window,
            )
        )
        logger.debug("Sweep row %s: %s", curve_id, rows[-1].peak)
    return SweepResult(rows, curves)


#   .--oracle--------------------------------------------------------------.
#   '----------------------------------------------------------------------'


def oracle_crosscheck(
    n_vertices: int,
    bridge_weight: float,
    kind: WalkKind,
    n_times: int = 50,
    gamma: float | None = None,
    marked_index: int = 0,
) -> float:
    """Largest per-type probability gap between full-space and 5D evolution"""
    if n_vertices > (cap := fullspace_cap()):
        raise CapExceeded(f"full-space cross-check is capped at N={cap}, got {n_vertices}")
    params = validate_params(n_vertices, bridge_weight, gamma, kind)
    times = np.linspace(0.0, ORACLE_HORIZON_X * math.sqrt(n_vertices), n_times)

    full_eigsys = eigendecompose(build_fullspace_hamiltonian(params, marked_index))
    full_states = evolve_many(full_eigsys, build_fullspace_uniform_state(params), times)
    membership = np.zeros((n_vertices, SUBSPACE_DIM))
    membership[np.arange(n_vertices), vertex_types(params, marked_index)] = 1.0
    full_aggregate = (np.abs(full_states) ** 2) @ membership

    sub_eigsys = eigendecompose(build_search_hamiltonian(params))
    sub_states = evolve_many(sub_eigsys, build_initial_state(params).amplitudes, times)
    sub_aggregate = np.abs(sub_states) ** 2

    deviation = float(np.max(np.abs(full_aggregate - sub_aggregate)))
    logger.info("Oracle cross-check %s: max deviation %.3g", params, deviation)
    return deviation
