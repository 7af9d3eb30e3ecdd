#!/usr/bin/env python3
"""Large-N closed forms of the search evolution and the two-stage schedule.

All formulas are written in the scaled time x = t / sqrt(N); the constants
below are therefore independent of N.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cache
from typing import Final

import numpy as np
from scipy.optimize import bisect

from .barbell import SubspaceState
from .errors import ConvergenceFailure, NTooSmall
from .log import logger
from .type_defs import ComplexArray, RealArray

SQRT2: Final = math.sqrt(2.0)
S_PLUS: Final = math.sqrt(2.0 + SQRT2)
S_MINUS: Final = math.sqrt(2.0 - SQRT2)

ROOT_WINDOW: Final = 8.0
ROOT_GRID_STEP: Final = 1e-3
ROOT_XTOL: Final = 1e-12

# psi1 = (|a>+|b>)/sqrt2, psi2 = (-|a>+|b>)/sqrt2, psi3 = |e>
LAPLACIAN_FORM_BASIS: Final = np.array(
    [
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, SQRT2],
    ]
).T / SQRT2


def _check_n(n_vertices: int) -> None:
    if n_vertices < 6:
        raise NTooSmall(f"N must be at least 6, got {n_vertices}")


def _scaled(n_vertices: int, t: float | RealArray) -> RealArray:
    _check_n(n_vertices)
    return np.asarray(t, dtype=float) / math.sqrt(n_vertices)


def unweighted_probabilities(n_vertices: int, t: float | RealArray) -> RealArray:
    """Per-type probabilities (last axis a..e) for unweighted-like bridges"""
    phase = SQRT2 * _scaled(n_vertices, t)
    zeros = np.zeros_like(phase)
    return np.stack(
        [
            0.5 * np.sin(phase) ** 2,
            0.5 * np.cos(phase) ** 2,
            zeros,
            zeros,
            np.full_like(phase, 0.5),
        ],
        axis=-1,
    )


def _resonant_amplitudes_scaled(x: RealArray) -> ComplexArray:
    sin_p, sin_m = np.sin(S_PLUS * x), np.sin(S_MINUS * x)
    cos_p, cos_m = np.cos(S_PLUS * x), np.cos(S_MINUS * x)
    return np.stack(
        [
            1j * (S_PLUS * sin_p - S_MINUS * sin_m),
            (1.0 + SQRT2) * cos_p + (1.0 - SQRT2) * cos_m,
            1j * (S_PLUS * sin_p + S_MINUS * sin_m),
            cos_p + cos_m + 0j,
        ],
        axis=-1,
    ) / (2.0 * SQRT2)


def resonant_amplitudes(n_vertices: int, t: float | RealArray) -> ComplexArray:
    """Amplitudes on (a, b, cd, e) at w = N/2, gamma = 2/N, without the phase e^{it}"""
    return _resonant_amplitudes_scaled(_scaled(n_vertices, t))


def _cd_to_types(amplitudes: ComplexArray) -> ComplexArray:
    half_cd = amplitudes[..., 2] / SQRT2
    return np.stack(
        [amplitudes[..., 0], amplitudes[..., 1], half_cd, half_cd, amplitudes[..., 3]], axis=-1
    )


def resonant_probabilities(n_vertices: int, t: float | RealArray) -> RealArray:
    return np.abs(_cd_to_types(resonant_amplitudes(n_vertices, t))) ** 2


def single_peak_equation(x: float) -> float:
    """Zero where the marked-vertex probability at resonance is stationary"""
    return (2.0 - SQRT2) * math.cos(S_MINUS * x) - (2.0 + SQRT2) * math.cos(S_PLUS * x)


def clique_peak_equation(x: float) -> float:
    """Zero where the |cd> amplitude at resonance vanishes"""
    return S_MINUS * math.sin(S_MINUS * x) + S_PLUS * math.sin(S_PLUS * x)


def _marked_probability(x: float) -> float:
    return float(np.abs(_resonant_amplitudes_scaled(np.asarray(x))[0]) ** 2)


def _clique_probability(x: float) -> float:
    amplitudes = _resonant_amplitudes_scaled(np.asarray(x))
    return float(np.sum(np.abs(_cd_to_types(amplitudes)[:3]) ** 2))


def bracketed_roots(equation: Callable[[float], float]) -> Sequence[float]:
    """All sign changes of equation on (0, ROOT_WINDOW], polished by bisection"""
    grid = np.arange(ROOT_GRID_STEP, ROOT_WINDOW + ROOT_GRID_STEP / 2, ROOT_GRID_STEP)
    values = np.array([equation(x) for x in grid])

    roots = []
    for idx in np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) <= 0):
        lo, hi = float(grid[idx]), float(grid[idx + 1])
        if values[idx] == 0:
            roots.append(lo)
            continue
        if values[idx + 1] == 0:
            # Picked up by the next interval
            continue
        try:
            roots.append(float(bisect(equation, lo, hi, xtol=ROOT_XTOL)))
        except (RuntimeError, ValueError) as e:
            raise ConvergenceFailure(f"bisection failed on [{lo}, {hi}]: {e}") from e

    logger.debug("Bracketed roots of %s: %s", equation.__name__, roots)
    return roots


def _best_root(equation: Callable[[float], float], target: Callable[[float], float]) -> float:
    roots = bracketed_roots(equation)
    if not roots:
        raise ConvergenceFailure(f"{equation.__name__} has no root on (0, {ROOT_WINDOW}]")
    return max(roots, key=target)


@cache
def solve_single_peak_constant() -> float:
    return _best_root(single_peak_equation, _marked_probability)


@cache
def solve_clique_peak_constant() -> float:
    return _best_root(clique_peak_equation, _clique_probability)


def eigenbasis_coefficients(state: SubspaceState) -> ComplexArray:
    """Coefficients of state on psi1, psi2, psi3 of the unweighted-like eigensystem"""
    return np.asarray(LAPLACIAN_FORM_BASIS.T @ state.amplitudes, dtype=complex)


def _boundary_amplitudes() -> ComplexArray:
    return _cd_to_types(_resonant_amplitudes_scaled(np.asarray(solve_clique_peak_constant())))


def stage_boundary_state(n_vertices: int) -> SubspaceState:
    """State at the switch time t' = x' sqrt(N); in the scaled form it is N-free"""
    _check_n(n_vertices)
    return SubspaceState(_boundary_amplitudes())


@dataclass(frozen=True, kw_only=True)
class ScheduleConstants:
    single_peak_x: float
    clique_peak_x: float
    second_stage_x: float
    total_x: float
    single_peak_p: float
    two_stage_p: float
    boundary_phase: float

    def __str__(self) -> str:
        return "\n".join(
            f"{name:<16}{value:.3f}"
            for name, value in (
                ("single_peak_x", self.single_peak_x),
                ("clique_peak_x", self.clique_peak_x),
                ("second_stage_x", self.second_stage_x),
                ("total_x", self.total_x),
                ("single_peak_p", self.single_peak_p),
                ("two_stage_p", self.two_stage_p),
                ("boundary_phase", self.boundary_phase),
            )
        )


@cache
def schedule_constants() -> ScheduleConstants:
    single_x = solve_single_peak_constant()
    clique_x = solve_clique_peak_constant()

    coefficients = eigenbasis_coefficients(SubspaceState(_boundary_amplitudes()))
    phase = -float(np.angle(coefficients[0]))
    # Weight of span{|a>,|b>}; it becomes the peak of sin^2 in the second stage
    p_ab = 2.0 * float(np.abs(coefficients[0]) ** 2)
    second_x = (math.pi / 2.0 + phase) / SQRT2

    constants = ScheduleConstants(
        single_peak_x=single_x,
        clique_peak_x=clique_x,
        second_stage_x=second_x,
        total_x=clique_x + second_x,
        single_peak_p=_marked_probability(single_x),
        two_stage_p=p_ab,
        boundary_phase=phase,
    )
    logger.debug("Schedule constants: %r", constants)
    return constants


def second_stage_probabilities(n_vertices: int, delta_t: float | RealArray) -> RealArray:
    """Per-type probabilities after switching to an unweighted-like bridge"""
    constants = schedule_constants()
    angle = SQRT2 * _scaled(n_vertices, delta_t) - constants.boundary_phase
    p_ab = constants.two_stage_p
    zeros = np.zeros_like(angle)
    return np.stack(
        [
            p_ab * np.sin(angle) ** 2,
            p_ab * np.cos(angle) ** 2,
            zeros,
            zeros,
            np.full_like(angle, 1.0 - p_ab),
        ],
        axis=-1,
    )


@dataclass(frozen=True, kw_only=True)
class TwoStageSchedule:
    n_vertices: int
    constants: ScheduleConstants
    switch_time: float
    stage2_time: float
    total_time: float


def two_stage_schedule(n_vertices: int) -> TwoStageSchedule:
    _check_n(n_vertices)
    constants = schedule_constants()
    sqrt_n = math.sqrt(n_vertices)
    return TwoStageSchedule(
        n_vertices=n_vertices,
        constants=constants,
        switch_time=constants.clique_peak_x * sqrt_n,
        stage2_time=constants.second_stage_x * sqrt_n,
        total_time=constants.total_x * sqrt_n,
    )


@dataclass(frozen=True, kw_only=True)
class LaplacianBaseline:
    t_star: float
    p_star: float
    expected_total: float
    repetitions: int


def laplacian_baseline(n_vertices: int) -> LaplacianBaseline:
    """Single run to p = 1/2 and the expected runtime with repetitions"""
    _check_n(n_vertices)
    t_star = math.pi * math.sqrt(n_vertices) / (2.0 * SQRT2)
    repetitions = 2
    return LaplacianBaseline(
        t_star=t_star,
        p_star=0.5,
        expected_total=repetitions * t_star,
        repetitions=repetitions,
    )
