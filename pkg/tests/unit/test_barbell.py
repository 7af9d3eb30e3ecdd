#!/usr/bin/env python3

import math

import numpy as np
import pytest

from barbell_search.barbell import (  # pylint: disable=import-error
    BarbellParams,
    build_fullspace_adjacency,
    build_fullspace_degree,
    build_fullspace_hamiltonian,
    build_fullspace_laplacian,
    build_fullspace_uniform_state,
    build_initial_state,
    build_oracle,
    build_search_hamiltonian,
    build_subspace_adjacency,
    build_subspace_degree,
    build_subspace_laplacian,
    critical_gamma,
    fullspace_cap,
    HermitianOperator,
    laplacian_kernel_vector,
    make_barbell_graph,
    multiplicities,
    project_to_subspace,
    SubspaceState,
    type_basis,
    validate_params,
    vertex_types,
    WalkKind,
)
from barbell_search.errors import (  # pylint: disable=import-error
    BadMarkedIndex,
    CapExceeded,
    DimensionMismatch,
    NegativeWeight,
    NonPositiveGamma,
    NotHermitian,
    NotNormalized,
    NTooSmall,
    OddN,
    ParamsError,
)


def _weights(n: int) -> list[float]:
    return [0.0, 1.0, n / 4, n / 2, 2.0 * n]


@pytest.mark.parametrize(
    "n, w, gamma, error",
    [
        (7, 1.0, None, OddN),
        (4, 1.0, None, NTooSmall),
        (10, -0.5, None, NegativeWeight),
        (10, 1.0, 0.0, NonPositiveGamma),
        (10, 1.0, -0.2, NonPositiveGamma),
        (10, math.inf, None, NegativeWeight),
        (10, math.nan, None, NegativeWeight),
        (10, 1.0, math.inf, NonPositiveGamma),
        (10, 1.0, math.nan, NonPositiveGamma),
    ],
)
def test_validate_params_rejects(
    n: int, w: float, gamma: float | None, error: type[ParamsError]
) -> None:
    with pytest.raises(error):
        validate_params(n, w, gamma, WalkKind.ADJACENCY)


def test_validate_params_defaults_to_critical_gamma() -> None:
    params = validate_params(64, 32, None, WalkKind.LAPLACIAN)
    assert params.gamma == critical_gamma(64) == 2.0 / 64
    assert params.bridge_weight == 32.0
    assert params.half == 32
    assert str(params) == "N=64, w=32, gamma=0.03125, laplacian"


def test_zero_weight_is_accepted() -> None:
    assert validate_params(6, 0, None, WalkKind.ADJACENCY).bridge_weight == 0.0


def test_with_weight_keeps_the_rest() -> None:
    params = validate_params(64, 32, 0.1, WalkKind.ADJACENCY).with_weight(1.0)
    assert params == BarbellParams(
        n_vertices=64, bridge_weight=1.0, gamma=0.1, walk_kind=WalkKind.ADJACENCY
    )


@pytest.mark.parametrize(
    "name, kind",
    [
        ("laplacian", WalkKind.LAPLACIAN),
        ("Adjacency", WalkKind.ADJACENCY),
    ],
)
def test_walk_kind_from_name(name: str, kind: WalkKind) -> None:
    assert WalkKind.from_name(name) is kind


def test_walk_kind_from_unknown_name() -> None:
    with pytest.raises(ValueError):
        WalkKind.from_name("lazy")


@pytest.mark.parametrize("n", [6, 10, 64, 1024])
def test_multiplicities_cover_all_vertices(n: int) -> None:
    counts = multiplicities(validate_params(n, 1, None, WalkKind.ADJACENCY))
    assert counts == (1, n // 2 - 2, 1, 1, n // 2 - 1)
    assert sum(counts) == n


def test_subspace_state_must_be_normalized() -> None:
    with pytest.raises(NotNormalized):
        SubspaceState(np.array([1.0, 1.0, 0.0, 0.0, 0.0], dtype=complex))


def test_subspace_state_must_have_five_amplitudes() -> None:
    with pytest.raises(DimensionMismatch):
        SubspaceState(np.array([1.0, 0.0], dtype=complex))


def test_hermitian_operator_rejects_non_hermitian() -> None:
    with pytest.raises(NotHermitian):
        HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_operator_rejects_non_square() -> None:
    with pytest.raises(DimensionMismatch):
        HermitianOperator(np.zeros((2, 3)))


def test_oracle() -> None:
    assert np.array_equal(build_oracle().entries, np.diag([-1.0, 0.0, 0.0, 0.0, 0.0]))


@pytest.mark.parametrize("kind", list(WalkKind))
@pytest.mark.parametrize("n", [6, 10, 64, 1024])
def test_search_hamiltonian_is_hermitian(kind: WalkKind, n: int) -> None:
    for w in _weights(n):
        entries = build_search_hamiltonian(validate_params(n, w, None, kind)).entries
        assert np.allclose(entries, entries.conj().T, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [6, 10, 64, 1024])
def test_laplacian_kernel(n: int) -> None:
    for w in _weights(n):
        params = validate_params(n, w, None, WalkKind.LAPLACIAN)
        kernel = laplacian_kernel_vector(params)
        assert np.allclose(
            build_subspace_laplacian(params).entries @ kernel, 0.0, rtol=0, atol=1e-10
        )


@pytest.mark.parametrize("n", [6, 10, 64])
def test_subspace_matrices_are_projections_of_full_space(n: int) -> None:
    for w in _weights(n):
        for kind in WalkKind:
            params = validate_params(n, w, None, kind)
            basis = type_basis(params)
            for full, sub in [
                (build_fullspace_adjacency(params), build_subspace_adjacency(params)),
                (build_fullspace_degree(params), build_subspace_degree(params)),
                (build_fullspace_laplacian(params), build_subspace_laplacian(params)),
                (build_fullspace_hamiltonian(params), build_search_hamiltonian(params)),
            ]:
                assert np.allclose(
                    full.sandwich(basis).entries, sub.entries, rtol=0, atol=1e-10
                )


@pytest.mark.parametrize("n", [6, 64, 1024])
def test_kinds_differ_by_identity_without_bridge(n: int) -> None:
    laplacian = build_search_hamiltonian(validate_params(n, 0, None, WalkKind.LAPLACIAN))
    adjacency = build_search_hamiltonian(validate_params(n, 0, None, WalkKind.ADJACENCY))
    gamma = critical_gamma(n)
    assert np.allclose(
        laplacian.entries - adjacency.entries,
        gamma * (n / 2 - 1) * np.eye(5),
        rtol=0,
        atol=1e-12,
    )


@pytest.mark.parametrize("n", [6, 64, 1024])
def test_initial_state(n: int) -> None:
    state = build_initial_state(validate_params(n, 1, None, WalkKind.ADJACENCY))
    expected = np.sqrt([1, n / 2 - 2, 1, 1, n / 2 - 1]) / math.sqrt(n)
    assert np.allclose(state.amplitudes, expected, rtol=0, atol=1e-15)


def test_barbell_graph() -> None:
    params = validate_params(10, 3.5, None, WalkKind.ADJACENCY)
    graph = make_barbell_graph(params)
    assert graph.number_of_nodes() == 10
    assert graph.number_of_edges() == 2 * 10 + 1
    assert graph[1][5]["weight"] == 3.5
    assert graph[0][2]["weight"] == 1.0


@pytest.mark.parametrize("marked_index", [0, 2, 4])
def test_vertex_types(marked_index: int) -> None:
    types = vertex_types(validate_params(10, 1, None, WalkKind.ADJACENCY), marked_index)
    assert types[marked_index] == 0
    assert types[1] == 2
    assert types[5] == 3
    assert list(np.bincount(types)) == [1, 3, 1, 1, 4]


@pytest.mark.parametrize("marked_index", [-1, 1, 5, 9])
def test_bad_marked_index(marked_index: int) -> None:
    with pytest.raises(BadMarkedIndex):
        vertex_types(validate_params(10, 1, None, WalkKind.ADJACENCY), marked_index)


def test_project_uniform_state() -> None:
    params = validate_params(64, 32, None, WalkKind.ADJACENCY)
    projection = project_to_subspace(build_fullspace_uniform_state(params), params)
    assert np.allclose(
        projection.amplitudes, build_initial_state(params).amplitudes, rtol=0, atol=1e-12
    )
    assert projection.residual < 1e-12


def test_project_detects_asymmetric_state() -> None:
    params = validate_params(10, 1, None, WalkKind.ADJACENCY)
    full_state = np.zeros(10, dtype=complex)
    full_state[2] = 1.0
    projection = project_to_subspace(full_state, params)
    assert projection.residual == pytest.approx(math.sqrt(2.0 / 3.0))


def test_project_dimension_mismatch() -> None:
    with pytest.raises(DimensionMismatch):
        project_to_subspace(
            np.ones(8, dtype=complex), validate_params(10, 1, None, WalkKind.ADJACENCY)
        )


def test_fullspace_cap_default() -> None:
    assert fullspace_cap() == 1024


def test_fullspace_cap_from_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("BARBELL_FULLSPACE_CAP", "2048")
    assert fullspace_cap() == 2048


@pytest.mark.parametrize("raw", ["4", "8192", "many"])
def test_fullspace_cap_rejects(monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
    monkeypatch.setenv("BARBELL_FULLSPACE_CAP", raw)
    with pytest.raises(CapExceeded):
        fullspace_cap()


def test_fullspace_dense_limit() -> None:
    with pytest.raises(CapExceeded):
        build_fullspace_adjacency(validate_params(8192, 1, None, WalkKind.ADJACENCY))
