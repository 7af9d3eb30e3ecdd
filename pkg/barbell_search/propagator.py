#!/usr/bin/env python3
"""Exact propagation e^{-iHt} through a Hermitian eigendecomposition."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import auto, Enum
from typing import Final, NamedTuple

import numpy as np
from scipy.linalg import eigh, LinAlgError
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from .barbell import (
    BarbellParams,
    build_initial_state,
    build_search_hamiltonian,
    HermitianOperator,
    multiplicities,
    SUBSPACE_DIM,
)
from .errors import ConvergenceFailure, DimensionMismatch, NoPeakFound, ParamsError
from .log import logger
from .type_defs import ComplexArray, Observable, RealArray

SCAN_SAMPLES: Final = 2000
PEAK_PROMINENCE: Final = 1e-6
# Peak times are refined to |dt| < 1e-6 * sqrt(N)
PEAK_XTOL_PER_SQRT_N: Final = 1e-6
# A local maximum is reported as "the" peak once it reaches 95% of the highest
# local maximum inside the scan window
DEFAULT_DOMINANCE: Final = 0.05


@dataclass(frozen=True, eq=False)
class EigenSystem:
    eigenvalues: RealArray
    eigenvectors: ComplexArray

    @property
    def dimension(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> ComplexArray:
        return np.asarray(
            (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T, dtype=complex
        )

    def coefficients(self, state: ComplexArray) -> ComplexArray:
        """Expansion of state in the eigenbasis"""
        _check_dimension(self, state)
        return np.asarray(self.eigenvectors.conj().T @ state, dtype=complex)


def _check_dimension(eigsys: EigenSystem, state: ComplexArray) -> None:
    if state.shape[-1] != eigsys.dimension:
        raise DimensionMismatch(
            f"state has dimension {state.shape[-1]}, operator has {eigsys.dimension}"
        )


def eigendecompose(operator: HermitianOperator) -> EigenSystem:
    try:
        eigenvalues, eigenvectors = eigh(operator.entries)
    except LinAlgError as e:
        raise ConvergenceFailure(f"eigensolver did not converge: {e}") from e

    vectors = np.asarray(eigenvectors, dtype=complex)
    # Phase convention: the largest-magnitude component of every column is real positive
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    vectors = vectors * (np.abs(pivots) / pivots)

    logger.debug("Eigenvalues of %d x %d operator: %s", *vectors.shape, eigenvalues)
    return EigenSystem(np.asarray(eigenvalues, dtype=float), vectors)


def evolve_many(eigsys: EigenSystem, psi0: ComplexArray, times: RealArray) -> ComplexArray:
    """States at all given times, one row per time"""
    coeffs = eigsys.coefficients(psi0)
    phases = np.exp(-1j * np.outer(times, eigsys.eigenvalues))
    return np.asarray((phases * coeffs) @ eigsys.eigenvectors.T, dtype=complex)


def evolve(eigsys: EigenSystem, psi0: ComplexArray, t: float) -> ComplexArray:
    if t == 0:
        _check_dimension(eigsys, psi0)
        return psi0.copy()
    return evolve_many(eigsys, psi0, np.array([t]))[0]


def energy(eigsys: EigenSystem, state: ComplexArray) -> float:
    return float(np.sum(eigsys.eigenvalues * np.abs(eigsys.coefficients(state)) ** 2))


class Probabilities(NamedTuple):
    aggregate: RealArray
    per_vertex: RealArray
    clique: RealArray


def probabilities(state: ComplexArray, params: BarbellParams) -> Probabilities:
    """Per-type probabilities of one state or of a stack of states (one per row)"""
    if state.shape[-1] != SUBSPACE_DIM:
        raise DimensionMismatch(f"expected {SUBSPACE_DIM} amplitudes, got {state.shape[-1]}")
    aggregate = np.abs(state) ** 2
    return Probabilities(
        aggregate=aggregate,
        per_vertex=aggregate / np.asarray(multiplicities(params), dtype=float),
        clique=aggregate[..., :3].sum(axis=-1),
    )


@dataclass(frozen=True, eq=False)
class TimeSeries:
    times: RealArray
    aggregate: RealArray
    per_vertex: RealArray
    clique: RealArray

    def __len__(self) -> int:
        return int(self.times.shape[0])

    @classmethod
    def from_states(
        cls, times: RealArray, states: ComplexArray, params: BarbellParams
    ) -> TimeSeries:
        probs = probabilities(states, params)
        return cls(times, probs.aggregate, probs.per_vertex, probs.clique)

    def shifted(self, offset: float) -> TimeSeries:
        return TimeSeries(self.times + offset, self.aggregate, self.per_vertex, self.clique)

    def concatenated(self, other: TimeSeries) -> TimeSeries:
        return TimeSeries(
            np.concatenate([self.times, other.times]),
            np.concatenate([self.aggregate, other.aggregate]),
            np.concatenate([self.per_vertex, other.per_vertex]),
            np.concatenate([self.clique, other.clique]),
        )


def sample_series(params: BarbellParams, t_max: float, n_samples: int) -> TimeSeries:
    if not t_max > 0:
        raise ParamsError(f"t_max must be positive, got {t_max}")
    if n_samples < 2:
        raise ParamsError(f"at least two samples are needed, got {n_samples}")

    logger.info("Sample %d points over [0, %s] for %s", n_samples, t_max, params)
    times = np.linspace(0.0, t_max, n_samples)
    eigsys = eigendecompose(build_search_hamiltonian(params))
    states = evolve_many(eigsys, build_initial_state(params).amplitudes, times)
    return TimeSeries.from_states(times, states, params)


#   .--peaks---------------------------------------------------------------.
#   '----------------------------------------------------------------------'


class PeakObservable(Enum):
    MARKED_VERTEX = auto()
    MARKED_CLIQUE = auto()

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True, kw_only=True)
class PeakResult:
    t_star: float
    p_star: float
    which: PeakObservable
    prominence: float = 0.0

    def __str__(self) -> str:
        return f"{self.which}: p={self.p_star:.4f} at t={self.t_star:.3f}"


def make_observable(
    eigsys: EigenSystem,
    psi0: ComplexArray,
    params: BarbellParams,
    which: PeakObservable,
) -> Observable:
    def _observe(times: RealArray) -> RealArray:
        probs = probabilities(evolve_many(eigsys, psi0, times), params)
        match which:
            case PeakObservable.MARKED_VERTEX:
                return np.asarray(probs.aggregate[:, 0])
            case PeakObservable.MARKED_CLIQUE:
                return np.asarray(probs.clique)

    return _observe


def find_peaks_in_window(
    observable: Observable,
    which: PeakObservable,
    t_max: float,
    xatol: float,
) -> Sequence[PeakResult]:
    """All interior local maxima over (0, t_max], refined to xatol"""
    if not t_max > 0:
        raise ParamsError(f"scan window must be positive, got {t_max}")

    times = np.linspace(0.0, t_max, SCAN_SAMPLES + 1)
    values = observable(times)
    indices, props = find_peaks(values, prominence=PEAK_PROMINENCE)

    def _negated(t: float) -> float:
        return -float(observable(np.array([t]))[0])

    peaks = []
    for idx, prominence in zip(indices, props["prominences"]):
        refined = minimize_scalar(
            _negated,
            bounds=(times[idx - 1], times[idx + 1]),
            method="bounded",
            options={"xatol": xatol},
        )
        if refined.success and -refined.fun >= values[idx]:
            t_star, p_star = float(refined.x), float(-refined.fun)
        else:
            t_star, p_star = float(times[idx]), float(values[idx])
        peaks.append(
            PeakResult(
                t_star=t_star,
                p_star=min(max(p_star, 0.0), 1.0),
                which=which,
                prominence=float(prominence),
            )
        )

    logger.debug("Local maxima of %s: %s", which, ", ".join(str(p) for p in peaks))
    return peaks


def select_first_peak(
    peaks: Sequence[PeakResult], dominance: float = DEFAULT_DOMINANCE
) -> PeakResult:
    if not peaks:
        raise NoPeakFound("observable has no interior local maximum in the scan window")
    threshold = (1.0 - dominance) * max(p.p_star for p in peaks)
    return next(p for p in peaks if p.p_star >= threshold)


def peak_xatol(n_vertices: int) -> float:
    return PEAK_XTOL_PER_SQRT_N * math.sqrt(n_vertices)


def find_first_peak(
    params: BarbellParams,
    which: PeakObservable,
    t_hint_max: float,
    dominance: float = DEFAULT_DOMINANCE,
) -> PeakResult:
    eigsys = eigendecompose(build_search_hamiltonian(params))
    observable = make_observable(eigsys, build_initial_state(params).amplitudes, params, which)
    peak = select_first_peak(
        find_peaks_in_window(observable, which, t_hint_max, peak_xatol(params.n_vertices)),
        dominance,
    )
    logger.info("First peak for %s: %s", params, peak)
    return peak
