#!/usr/bin/env python3
"""Degenerate perturbation theory of the search Hamiltonians for large N.

Every weight regime splits H into a leading-order part H0 and a first-order
correction H1. The eigenvectors of H0 that share the eigenvalue of |a> span
the degenerate space, and H0 + H1 restricted to it yields the perturbed
eigensystem that drives the search.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import auto, Enum
from typing import Final, NamedTuple

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .barbell import (
    BarbellParams,
    build_search_hamiltonian,
    critical_gamma,
    HermitianOperator,
    SUBSPACE_DIM,
    WalkKind,
)
from .errors import NotDegenerate, RegimeMismatch
from .log import logger
from .type_defs import RealArray

DEGENERACY_RTOL: Final = 1e-10
EIGENVECTOR_ATOL: Final = 1e-10

SQRT2: Final = math.sqrt(2.0)


class Regime(Enum):
    LAPLACIAN_SMALL = auto()
    LAPLACIAN_MEDIUM = auto()
    LAPLACIAN_LARGE = auto()
    ADJACENCY_SMALL = auto()
    ADJACENCY_MEDIUM = auto()
    ADJACENCY_RESONANT = auto()
    ADJACENCY_LARGE_OFF_RESONANT = auto()

    @property
    def walk_kind(self) -> WalkKind:
        return WalkKind.LAPLACIAN if self.name.startswith("LAPLACIAN") else WalkKind.ADJACENCY

    @property
    def weight_in_leading_order(self) -> bool:
        return self in (
            Regime.LAPLACIAN_LARGE,
            Regime.ADJACENCY_RESONANT,
            Regime.ADJACENCY_LARGE_OFF_RESONANT,
        )

    @classmethod
    def from_name(cls, name: str) -> Regime:
        try:
            return cls[name.upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown regime {name!r}") from None

    def __str__(self) -> str:
        return self.name.lower().replace("_", "-")


def _is_resonant(params: BarbellParams) -> bool:
    return math.isclose(params.bridge_weight, params.half, rel_tol=1e-12) and math.isclose(
        params.gamma, critical_gamma(params.n_vertices), rel_tol=1e-12
    )


def check_regime(params: BarbellParams, regime: Regime) -> None:
    """Scaling classes are asymptotic, so only the exact conditions are checked."""
    if params.walk_kind is not regime.walk_kind:
        raise RegimeMismatch(f"regime {regime} needs a {regime.walk_kind} walk, got {params}")
    if regime is Regime.ADJACENCY_RESONANT and not _is_resonant(params):
        raise RegimeMismatch(f"regime {regime} needs w = N/2 and gamma = 2/N, got {params}")
    if regime is Regime.ADJACENCY_LARGE_OFF_RESONANT and math.isclose(
        params.bridge_weight, params.half, rel_tol=1e-12
    ):
        raise RegimeMismatch(f"regime {regime} needs w != N/2, got {params}")


def _require_critical_gamma(params: BarbellParams) -> None:
    if not math.isclose(params.gamma, critical_gamma(params.n_vertices), rel_tol=1e-12):
        raise RegimeMismatch(f"closed forms hold at gamma = 2/N only, got {params}")


class SplitHamiltonian(NamedTuple):
    h0: HermitianOperator
    h1: HermitianOperator


def _first_order_couplings(params: BarbellParams) -> RealArray:
    s = math.sqrt(params.half)
    couplings = np.zeros((SUBSPACE_DIM, SUBSPACE_DIM))
    for i, j in ((0, 1), (1, 2), (3, 4)):
        couplings[i, j] = couplings[j, i] = s
    return couplings


def split_hamiltonian(params: BarbellParams, regime: Regime) -> SplitHamiltonian:
    check_regime(params, regime)
    half = float(params.half)
    w = params.bridge_weight
    inv_gamma = 1.0 / params.gamma

    inner = _first_order_couplings(params)
    match params.walk_kind:
        case WalkKind.LAPLACIAN:
            leading = np.diag([-half + inv_gamma, 0.0, -half, -half, 0.0])
        case WalkKind.ADJACENCY:
            leading = np.diag([inv_gamma, half, 0.0, 0.0, half])

    if regime.weight_in_leading_order:
        if regime is Regime.LAPLACIAN_LARGE:
            leading[2:4, 2:4] += np.array([[-w, w], [w, -w]])
        else:
            leading[2:4, 2:4] += np.array([[0.0, w], [w, 0.0]])
    elif regime in (Regime.LAPLACIAN_MEDIUM, Regime.ADJACENCY_MEDIUM):
        inner[2:4, 2:4] += np.array([[-w, w], [w, -w]])

    logger.debug("Split Hamiltonian for %s in regime %s", params, regime)
    return SplitHamiltonian(
        HermitianOperator(-params.gamma * leading),
        HermitianOperator(-params.gamma * inner),
    )


@dataclass(frozen=True, kw_only=True)
class LabeledEigenpair:
    label: str
    vector: RealArray
    eigenvalue: float

    def __str__(self) -> str:
        return f"{self.label}: {self.eigenvalue:.6g}"


def _ket(index: int) -> RealArray:
    vector = np.zeros(SUBSPACE_DIM)
    vector[index] = 1.0
    return vector


def _ket_sum(coefficients: Sequence[float]) -> RealArray:
    vector = np.asarray(coefficients, dtype=float)
    return vector / np.linalg.norm(vector)


def h0_eigensystem(regime: Regime, params: BarbellParams) -> Sequence[LabeledEigenpair]:
    check_regime(params, regime)
    gamma = params.gamma
    g_half = gamma * params.half
    w = params.bridge_weight

    match regime.walk_kind:
        case WalkKind.LAPLACIAN:
            e_a, e_be, e_cd, e_cd_minus = g_half - 1.0, 0.0, g_half, g_half + 2.0 * gamma * w
        case WalkKind.ADJACENCY:
            e_a, e_be, e_cd, e_cd_minus = -1.0, -g_half, -gamma * w, gamma * w

    pairs = [
        LabeledEigenpair(label="|a>", vector=_ket(0), eigenvalue=e_a),
        LabeledEigenpair(label="|b>", vector=_ket(1), eigenvalue=e_be),
    ]
    if regime.weight_in_leading_order:
        pairs += [
            LabeledEigenpair(
                label="|cd> = (|c>+|d>)/sqrt2", vector=_ket_sum([0, 0, 1, 1, 0]), eigenvalue=e_cd
            ),
            LabeledEigenpair(
                label="|cd-> = (|c>-|d>)/sqrt2",
                vector=_ket_sum([0, 0, 1, -1, 0]),
                eigenvalue=e_cd_minus,
            ),
        ]
    else:
        # Bridge endpoints are decoupled at leading order
        e_c = g_half if regime.walk_kind is WalkKind.LAPLACIAN else 0.0
        pairs += [
            LabeledEigenpair(label="|c>", vector=_ket(2), eigenvalue=e_c),
            LabeledEigenpair(label="|d>", vector=_ket(3), eigenvalue=e_c),
        ]
    pairs.append(LabeledEigenpair(label="|e>", vector=_ket(4), eigenvalue=e_be))
    return pairs


def degenerate_set(pairs: Sequence[LabeledEigenpair]) -> Sequence[LabeledEigenpair]:
    """Eigenpairs sharing the eigenvalue of |a>"""
    marked = next(p for p in pairs if p.label == "|a>")
    scale = max(1.0, max(abs(p.eigenvalue) for p in pairs))
    members = [
        p for p in pairs if abs(p.eigenvalue - marked.eigenvalue) <= DEGENERACY_RTOL * scale
    ]
    logger.debug("Degenerate with |a>: %s", ", ".join(p.label for p in members))
    return members


def effective_degenerate_matrix(
    h0: HermitianOperator,
    h1: HermitianOperator,
    members: Sequence[LabeledEigenpair],
) -> HermitianOperator:
    if not members:
        raise NotDegenerate("degenerate set is empty")

    basis = np.column_stack([p.vector for p in members])
    for pair in members:
        if not np.allclose(
            h0.entries @ pair.vector, pair.eigenvalue * pair.vector, rtol=0, atol=EIGENVECTOR_ATOL
        ):
            raise NotDegenerate(f"{pair.label} is not an eigenvector of H0")
    eigenvalues = [p.eigenvalue for p in members]
    scale = max(1.0, max(abs(e) for e in eigenvalues))
    if max(eigenvalues) - min(eigenvalues) > DEGENERACY_RTOL * scale:
        raise NotDegenerate(f"eigenvalues differ: {eigenvalues}")

    return (h0 + h1).sandwich(basis)


def closed_form_perturbed_eigensystem(
    regime: Regime, params: BarbellParams
) -> Sequence[LabeledEigenpair]:
    check_regime(params, regime)
    _require_critical_gamma(params)
    n = float(params.n_vertices)

    if regime is Regime.ADJACENCY_RESONANT:
        s_plus = math.sqrt(2.0 + SQRT2)
        s_minus = math.sqrt(2.0 - SQRT2)
        # Coefficients on (a, b, cd, e); |cd> spreads evenly over c and d
        rows = (
            ("psi1", (s_plus, 1.0 + SQRT2, s_plus, 1.0), -1.0 - s_plus / math.sqrt(n)),
            ("psi2", (-s_plus, 1.0 + SQRT2, -s_plus, 1.0), -1.0 + s_plus / math.sqrt(n)),
            ("psi3", (-s_minus, 1.0 - SQRT2, s_minus, 1.0), -1.0 - s_minus / math.sqrt(n)),
            ("psi4", (s_minus, 1.0 - SQRT2, -s_minus, 1.0), -1.0 + s_minus / math.sqrt(n)),
        )
        return [
            LabeledEigenpair(
                label=label,
                vector=_ket_sum([a, b, cd / SQRT2, cd / SQRT2, e]),
                eigenvalue=energy,
            )
            for label, (a, b, cd, e), energy in rows
        ]

    shift = -1.0 if regime.walk_kind is WalkKind.ADJACENCY else 0.0
    split = math.sqrt(2.0 / n)
    return [
        LabeledEigenpair(
            label="psi1 = (|a>+|b>)/sqrt2",
            vector=_ket_sum([1, 1, 0, 0, 0]),
            eigenvalue=shift - split,
        ),
        LabeledEigenpair(
            label="psi2 = (-|a>+|b>)/sqrt2",
            vector=_ket_sum([-1, 1, 0, 0, 0]),
            eigenvalue=shift + split,
        ),
        LabeledEigenpair(label="psi3 = |e>", vector=_ket(4), eigenvalue=shift),
    ]


@dataclass(frozen=True, kw_only=True)
class RegimeReport:
    regime: Regime
    params: BarbellParams
    effective_eigenvalue_deviation: float
    overlap_deficit: float
    exact_eigenvalue_deviation: float

    def __str__(self) -> str:
        return (
            f"{self.regime} ({self.params}): effective {self.effective_eigenvalue_deviation:.3g}, "
            f"overlap {self.overlap_deficit:.3g}, exact {self.exact_eigenvalue_deviation:.3g}"
        )


def verify_regime(regime: Regime, params: BarbellParams) -> RegimeReport:
    split = split_hamiltonian(params, regime)
    members = degenerate_set(h0_eigensystem(regime, params))
    effective = effective_degenerate_matrix(split.h0, split.h1, members)
    closed = sorted(closed_form_perturbed_eigensystem(regime, params), key=lambda p: p.eigenvalue)

    numeric_values, numeric_vectors = eigh(effective.entries)
    closed_values = np.array([p.eigenvalue for p in closed])
    if numeric_values.shape != closed_values.shape:
        raise NotDegenerate(
            f"degenerate space has dimension {numeric_values.shape[0]}, "
            f"closed form lists {closed_values.shape[0]} eigenvectors"
        )

    basis = np.column_stack([p.vector for p in members])
    closed_coefficients = basis.T @ np.column_stack([p.vector for p in closed])
    overlaps = np.abs(np.sum(closed_coefficients.conj() * numeric_vectors, axis=0))

    exact_values = eigvalsh(build_search_hamiltonian(params).entries)
    exact_deviation = max(float(np.min(np.abs(exact_values - e))) for e in closed_values)

    report = RegimeReport(
        regime=regime,
        params=params,
        effective_eigenvalue_deviation=float(np.max(np.abs(numeric_values - closed_values))),
        overlap_deficit=float(np.max(1.0 - overlaps)),
        exact_eigenvalue_deviation=exact_deviation,
    )
    logger.info("Verified %s", report)
    return report
