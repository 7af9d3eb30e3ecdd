#!/usr/bin/env python3
"""Subspace and full-space operators of the weighted barbell graph.

Two cliques of N/2 vertices are joined by one bridge of weight w. With a
single marked vertex the walk stays in the span of five uniform
superpositions, one per vertex type:

    a   the marked vertex
    b   the other N/2 - 2 vertices of the marked clique
    c   the bridge endpoint in the marked clique
    d   the bridge endpoint in the unmarked clique
    e   the other N/2 - 1 vertices of the unmarked clique

The discrete Laplacian is L = A - D, i.e. the opposite sign of the more
common D - A. The search Hamiltonians are H = -gamma L + V (Laplacian walk)
and H = -gamma A + V (adjacency walk) with the oracle V = -|a><a|.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import auto, Enum
from typing import Final, NamedTuple

import networkx as nx
import numpy as np

from .errors import (
    BadMarkedIndex,
    CapExceeded,
    DimensionMismatch,
    NegativeWeight,
    NonPositiveGamma,
    NotHermitian,
    NotNormalized,
    NTooSmall,
    OddN,
)
from .log import logger
from .type_defs import ComplexArray, IntArray, MatrixArray, RealArray

TYPE_LABELS: Final = ("a", "b", "c", "d", "e")
SUBSPACE_DIM: Final = len(TYPE_LABELS)

NORM_TOL: Final = 1e-10
HERMITIAN_TOL: Final = 1e-12

# Full-space layout: vertex 1 is c, vertex N/2 is d
C_VERTEX: Final = 1

FULLSPACE_CAP_ENV: Final = "BARBELL_FULLSPACE_CAP"
DEFAULT_FULLSPACE_CAP: Final = 1024
DENSE_LIMIT: Final = 4096


class WalkKind(Enum):
    LAPLACIAN = auto()
    ADJACENCY = auto()

    @classmethod
    def from_name(cls, name: str) -> WalkKind:
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown walk kind {name!r}") from None

    def __str__(self) -> str:
        return self.name.lower()


def critical_gamma(n_vertices: int) -> float:
    return 2.0 / n_vertices


@dataclass(frozen=True, kw_only=True)
class BarbellParams:
    n_vertices: int
    bridge_weight: float
    gamma: float
    walk_kind: WalkKind

    def __post_init__(self) -> None:
        if self.n_vertices % 2:
            raise OddN(f"N must be even, got {self.n_vertices}")
        if self.n_vertices < 6:
            raise NTooSmall(f"N must be at least 6, got {self.n_vertices}")
        if not (math.isfinite(self.bridge_weight) and self.bridge_weight >= 0):
            raise NegativeWeight(f"w must be finite and non-negative, got {self.bridge_weight}")
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise NonPositiveGamma(f"gamma must be finite and positive, got {self.gamma}")

    @property
    def half(self) -> int:
        return self.n_vertices // 2

    def with_weight(self, bridge_weight: float) -> BarbellParams:
        return BarbellParams(
            n_vertices=self.n_vertices,
            bridge_weight=bridge_weight,
            gamma=self.gamma,
            walk_kind=self.walk_kind,
        )

    def __str__(self) -> str:
        return (
            f"N={self.n_vertices}, w={self.bridge_weight:g}, gamma={self.gamma:g}, "
            f"{self.walk_kind}"
        )


def validate_params(
    n_vertices: int,
    bridge_weight: float,
    gamma: float | None,
    walk_kind: WalkKind,
) -> BarbellParams:
    """gamma=None selects the critical jumping rate 2/N."""
    return BarbellParams(
        n_vertices=n_vertices,
        bridge_weight=float(bridge_weight),
        gamma=critical_gamma(n_vertices) if gamma is None else float(gamma),
        walk_kind=walk_kind,
    )


class VertexTypeMultiplicities(NamedTuple):
    a: int
    b: int
    c: int
    d: int
    e: int


def multiplicities(params: BarbellParams) -> VertexTypeMultiplicities:
    return VertexTypeMultiplicities(1, params.half - 2, 1, 1, params.half - 1)


@dataclass(frozen=True, eq=False)
class SubspaceState:
    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (SUBSPACE_DIM,):
            raise DimensionMismatch(f"expected {SUBSPACE_DIM} amplitudes")
        if abs(np.linalg.norm(self.amplitudes) - 1.0) > NORM_TOL:
            raise NotNormalized(f"state is not normalized: {np.linalg.norm(self.amplitudes)}")

    def __str__(self) -> str:
        return " + ".join(
            f"({amp.real:.3f}{amp.imag:+.3f}i)|{label}>"
            for label, amp in zip(TYPE_LABELS, self.amplitudes)
        )


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    entries: MatrixArray
    dimension: int = field(init=False)

    def __post_init__(self) -> None:
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DimensionMismatch(f"operator must be square, got {self.entries.shape}")
        if not np.allclose(self.entries, self.entries.conj().T, rtol=0, atol=HERMITIAN_TOL):
            raise NotHermitian("operator is not Hermitian")
        object.__setattr__(self, "dimension", self.entries.shape[0])

    def __add__(self, other: HermitianOperator) -> HermitianOperator:
        return HermitianOperator(self.entries + other.entries)

    def __sub__(self, other: HermitianOperator) -> HermitianOperator:
        return HermitianOperator(self.entries - other.entries)

    def scaled(self, factor: float) -> HermitianOperator:
        return HermitianOperator(factor * self.entries)

    def sandwich(self, basis: MatrixArray) -> HermitianOperator:
        """Restriction P^dagger H P onto the orthonormal columns of basis"""
        return HermitianOperator(basis.conj().T @ self.entries @ basis)


#   .--subspace------------------------------------------------------------.
#   '----------------------------------------------------------------------'


def build_subspace_adjacency(params: BarbellParams) -> HermitianOperator:
    half = params.half
    w = params.bridge_weight
    sb = math.sqrt(half - 2)
    se = math.sqrt(half - 1)
    return HermitianOperator(
        np.array(
            [
                [0.0, sb, 1.0, 0.0, 0.0],
                [sb, half - 3.0, sb, 0.0, 0.0],
                [1.0, sb, 0.0, w, 0.0],
                [0.0, 0.0, w, 0.0, se],
                [0.0, 0.0, 0.0, se, half - 2.0],
            ]
        )
    )


def build_subspace_degree(params: BarbellParams) -> HermitianOperator:
    base = params.half - 1.0
    w = params.bridge_weight
    return HermitianOperator(np.diag([base, base, base + w, base + w, base]))


def build_subspace_laplacian(params: BarbellParams) -> HermitianOperator:
    return build_subspace_adjacency(params) - build_subspace_degree(params)


def build_oracle() -> HermitianOperator:
    return HermitianOperator(np.diag([-1.0, 0.0, 0.0, 0.0, 0.0]))


def build_search_hamiltonian(params: BarbellParams) -> HermitianOperator:
    match params.walk_kind:
        case WalkKind.LAPLACIAN:
            kinetic = build_subspace_laplacian(params)
        case WalkKind.ADJACENCY:
            kinetic = build_subspace_adjacency(params)
    return kinetic.scaled(-params.gamma) + build_oracle()


def laplacian_kernel_vector(params: BarbellParams) -> RealArray:
    """Image of the all-ones full-space vector in the type basis"""
    return np.sqrt(np.asarray(multiplicities(params), dtype=float))


def build_initial_state(params: BarbellParams) -> SubspaceState:
    return SubspaceState(
        laplacian_kernel_vector(params).astype(complex) / math.sqrt(params.n_vertices)
    )


#   .--full space----------------------------------------------------------.
#   '----------------------------------------------------------------------'


def fullspace_cap() -> int:
    if (raw := os.environ.get(FULLSPACE_CAP_ENV)) is None:
        return DEFAULT_FULLSPACE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CapExceeded(f"{FULLSPACE_CAP_ENV} must be an integer, got {raw!r}") from None
    if not 6 <= cap <= DENSE_LIMIT:
        raise CapExceeded(f"{FULLSPACE_CAP_ENV} must lie in [6, {DENSE_LIMIT}], got {cap}")
    return cap


def _check_marked_index(params: BarbellParams, marked_index: int) -> None:
    if not 0 <= marked_index < params.half or marked_index == C_VERTEX:
        raise BadMarkedIndex(
            f"marked vertex must lie in 0..{params.half - 1} without {C_VERTEX}, "
            f"got {marked_index}"
        )


def make_barbell_graph(params: BarbellParams) -> nx.Graph:
    half = params.half
    graph = nx.disjoint_union(nx.complete_graph(half), nx.complete_graph(half))
    nx.set_edge_attributes(graph, 1.0, "weight")
    graph.add_edge(C_VERTEX, half, weight=params.bridge_weight)
    return graph


def vertex_types(params: BarbellParams, marked_index: int = 0) -> IntArray:
    """Type index (0..4 for a..e) of every full-space vertex"""
    _check_marked_index(params, marked_index)
    types = np.empty(params.n_vertices, dtype=np.intp)
    types[: params.half] = 1
    types[params.half :] = 4
    types[marked_index] = 0
    types[C_VERTEX] = 2
    types[params.half] = 3
    return types


def type_basis(params: BarbellParams, marked_index: int = 0) -> RealArray:
    """N x 5 matrix whose columns are the uniform superpositions over each type"""
    types = vertex_types(params, marked_index)
    basis = np.zeros((params.n_vertices, SUBSPACE_DIM))
    basis[np.arange(params.n_vertices), types] = 1.0
    return basis / np.sqrt(basis.sum(axis=0))


def _check_dense_limit(params: BarbellParams) -> None:
    if params.n_vertices > DENSE_LIMIT:
        raise CapExceeded(
            f"full-space operators are limited to N <= {DENSE_LIMIT}, got {params.n_vertices}"
        )


def build_fullspace_adjacency(params: BarbellParams) -> HermitianOperator:
    _check_dense_limit(params)
    graph = make_barbell_graph(params)
    return HermitianOperator(
        nx.to_numpy_array(graph, nodelist=range(params.n_vertices), weight="weight")
    )


def build_fullspace_degree(params: BarbellParams) -> HermitianOperator:
    return HermitianOperator(np.diag(build_fullspace_adjacency(params).entries.sum(axis=1)))


def build_fullspace_laplacian(params: BarbellParams) -> HermitianOperator:
    return build_fullspace_adjacency(params) - build_fullspace_degree(params)


def build_fullspace_hamiltonian(params: BarbellParams, marked_index: int = 0) -> HermitianOperator:
    _check_marked_index(params, marked_index)
    logger.info("Build full-space Hamiltonian for %s", params)
    match params.walk_kind:
        case WalkKind.LAPLACIAN:
            kinetic = build_fullspace_laplacian(params)
        case WalkKind.ADJACENCY:
            kinetic = build_fullspace_adjacency(params)
    entries = -params.gamma * kinetic.entries
    entries[marked_index, marked_index] -= 1.0
    return HermitianOperator(entries)


def build_fullspace_uniform_state(params: BarbellParams) -> ComplexArray:
    return np.full(params.n_vertices, 1.0 / math.sqrt(params.n_vertices), dtype=complex)


class Projection(NamedTuple):
    amplitudes: ComplexArray
    residual: float


def project_to_subspace(
    full_state: ComplexArray,
    params: BarbellParams,
    marked_index: int = 0,
) -> Projection:
    if full_state.shape[0] != params.n_vertices:
        raise DimensionMismatch(
            f"state has dimension {full_state.shape[0]}, expected {params.n_vertices}"
        )
    basis = type_basis(params, marked_index)
    amplitudes = basis.T @ full_state
    residual = np.linalg.norm(full_state - basis @ amplitudes, axis=0)
    return Projection(np.asarray(amplitudes, dtype=complex), float(np.max(residual)))
