#!/usr/bin/env python3

import itertools
import math

import numpy as np
import pytest
from scipy.linalg import eigvalsh

from barbell_search.barbell import (  # pylint: disable=import-error
    BarbellParams,
    build_search_hamiltonian,
    validate_params,
    WalkKind,
)
from barbell_search.errors import NotDegenerate, RegimeMismatch  # pylint: disable=import-error
from barbell_search.perturbation import (  # pylint: disable=import-error
    check_regime,
    closed_form_perturbed_eigensystem,
    degenerate_set,
    effective_degenerate_matrix,
    h0_eigensystem,
    LabeledEigenpair,
    Regime,
    split_hamiltonian,
    verify_regime,
)

N = 1024

# One representative bridge weight per regime at N = 1024
REGIME_WEIGHTS = [
    (Regime.LAPLACIAN_SMALL, 1.0),
    (Regime.LAPLACIAN_MEDIUM, 32.0),
    (Regime.LAPLACIAN_LARGE, 2048.0),
    (Regime.ADJACENCY_SMALL, 1.0),
    (Regime.ADJACENCY_MEDIUM, 32.0),
    (Regime.ADJACENCY_RESONANT, 512.0),
    (Regime.ADJACENCY_LARGE_OFF_RESONANT, 2048.0),
]


def _params(regime: Regime, w: float, n: int = N) -> BarbellParams:
    return validate_params(n, w, None, regime.walk_kind)


@pytest.mark.parametrize(
    "name, regime",
    [
        ("adjacency-resonant", Regime.ADJACENCY_RESONANT),
        ("LAPLACIAN_SMALL", Regime.LAPLACIAN_SMALL),
        ("adjacency-large-off-resonant", Regime.ADJACENCY_LARGE_OFF_RESONANT),
    ],
)
def test_regime_from_name(name: str, regime: Regime) -> None:
    assert Regime.from_name(name) is regime
    assert Regime.from_name(str(regime)) is regime


def test_regime_from_unknown_name() -> None:
    with pytest.raises(ValueError):
        Regime.from_name("adjacency-huge")


@pytest.mark.parametrize(
    "regime, n, w, kind, gamma",
    [
        (Regime.LAPLACIAN_SMALL, N, 1.0, WalkKind.ADJACENCY, None),
        (Regime.ADJACENCY_RESONANT, N, 500.0, WalkKind.ADJACENCY, None),
        (Regime.ADJACENCY_RESONANT, N, 512.0, WalkKind.ADJACENCY, 0.01),
        (Regime.ADJACENCY_LARGE_OFF_RESONANT, N, 512.0, WalkKind.ADJACENCY, None),
    ],
)
def test_check_regime_rejects(
    regime: Regime, n: int, w: float, kind: WalkKind, gamma: float | None
) -> None:
    with pytest.raises(RegimeMismatch):
        check_regime(validate_params(n, w, gamma, kind), regime)


def test_closed_forms_need_critical_gamma() -> None:
    with pytest.raises(RegimeMismatch):
        closed_form_perturbed_eigensystem(
            Regime.LAPLACIAN_SMALL, validate_params(N, 1.0, 0.01, WalkKind.LAPLACIAN)
        )


@pytest.mark.parametrize("regime, w", REGIME_WEIGHTS)
def test_split_hamiltonian_is_hermitian(regime: Regime, w: float) -> None:
    split = split_hamiltonian(_params(regime, w), regime)
    for operator in split:
        assert np.allclose(operator.entries, operator.entries.T, rtol=0, atol=1e-12)


@pytest.mark.parametrize("regime, w", REGIME_WEIGHTS)
def test_h0_eigensystem(regime: Regime, w: float) -> None:
    params = _params(regime, w)
    h0 = split_hamiltonian(params, regime).h0
    pairs = h0_eigensystem(regime, params)
    assert len(pairs) == 5
    for pair in pairs:
        assert np.allclose(
            h0.entries @ pair.vector, pair.eigenvalue * pair.vector, rtol=0, atol=1e-12
        )
    vectors = np.column_stack([p.vector for p in pairs])
    assert np.allclose(vectors.T @ vectors, np.eye(5), rtol=0, atol=1e-12)


@pytest.mark.parametrize(
    "regime, w, labels",
    [
        (Regime.LAPLACIAN_SMALL, 1.0, ["|a>", "|b>", "|e>"]),
        (Regime.ADJACENCY_SMALL, 1.0, ["|a>", "|b>", "|e>"]),
        (Regime.ADJACENCY_RESONANT, 512.0, ["|a>", "|b>", "|cd> = (|c>+|d>)/sqrt2", "|e>"]),
        (Regime.ADJACENCY_LARGE_OFF_RESONANT, 2048.0, ["|a>", "|b>", "|e>"]),
    ],
)
def test_degenerate_set(regime: Regime, w: float, labels: list[str]) -> None:
    params = _params(regime, w)
    assert [p.label for p in degenerate_set(h0_eigensystem(regime, params))] == labels


def test_effective_matrix_small_laplacian() -> None:
    params = _params(Regime.LAPLACIAN_SMALL, 1.0)
    split = split_hamiltonian(params, Regime.LAPLACIAN_SMALL)
    members = degenerate_set(h0_eigensystem(Regime.LAPLACIAN_SMALL, params))
    effective = effective_degenerate_matrix(split.h0, split.h1, members)
    split_value = math.sqrt(2.0 / N)
    assert np.allclose(
        eigvalsh(effective.entries), [-split_value, 0.0, split_value], rtol=0, atol=1e-12
    )


def test_effective_matrix_without_members() -> None:
    split = split_hamiltonian(_params(Regime.ADJACENCY_SMALL, 1.0), Regime.ADJACENCY_SMALL)
    with pytest.raises(NotDegenerate):
        effective_degenerate_matrix(split.h0, split.h1, [])


def test_effective_matrix_needs_eigenvectors() -> None:
    split = split_hamiltonian(_params(Regime.ADJACENCY_SMALL, 1.0), Regime.ADJACENCY_SMALL)
    mixed = LabeledEigenpair(
        label="|a>+|c>",
        vector=np.array([1.0, 0.0, 1.0, 0.0, 0.0]) / math.sqrt(2.0),
        eigenvalue=-1.0,
    )
    with pytest.raises(NotDegenerate):
        effective_degenerate_matrix(split.h0, split.h1, [mixed])


def test_effective_matrix_needs_shared_eigenvalue() -> None:
    params = _params(Regime.ADJACENCY_SMALL, 1.0)
    split = split_hamiltonian(params, Regime.ADJACENCY_SMALL)
    pairs = h0_eigensystem(Regime.ADJACENCY_SMALL, params)
    with pytest.raises(NotDegenerate):
        effective_degenerate_matrix(split.h0, split.h1, [pairs[0], pairs[2]])


@pytest.mark.parametrize("regime, w", REGIME_WEIGHTS)
def test_closed_forms_are_orthonormal(regime: Regime, w: float) -> None:
    pairs = closed_form_perturbed_eigensystem(regime, _params(regime, w))
    vectors = np.column_stack([p.vector for p in pairs])
    assert np.allclose(vectors.T @ vectors, np.eye(len(pairs)), rtol=0, atol=1e-12)


@pytest.mark.parametrize("regime, w", REGIME_WEIGHTS)
def test_closed_forms_diagonalize_effective_matrix(regime: Regime, w: float) -> None:
    report = verify_regime(regime, _params(regime, w))
    assert report.effective_eigenvalue_deviation < 1e-12
    assert report.overlap_deficit < 1e-12


def test_resonant_eigenvalues_near_exact_ones() -> None:
    n = 4096
    params = validate_params(n, n / 2, None, WalkKind.ADJACENCY)
    exact = eigvalsh(build_search_hamiltonian(params).entries)
    roots = (2.0 + math.sqrt(2.0), 2.0 - math.sqrt(2.0))
    for sign, root in itertools.product((-1.0, 1.0), roots):
        predicted = -1.0 + sign * math.sqrt(root / n)
        assert np.min(np.abs(exact - predicted)) < 5.0 / n
    assert verify_regime(Regime.ADJACENCY_RESONANT, params).exact_eigenvalue_deviation < 5.0 / n


def test_resonant_eigenvalue_error_halves_when_n_doubles() -> None:
    deviations = [
        verify_regime(
            Regime.ADJACENCY_RESONANT, validate_params(n, n / 2, None, WalkKind.ADJACENCY)
        ).exact_eigenvalue_deviation
        for n in (1024, 2048, 4096)
    ]
    for coarse, fine in zip(deviations, deviations[1:]):
        assert 2.0 / 1.5 <= coarse / fine <= 2.0 * 1.5


def _effective(regime: Regime, params: BarbellParams) -> np.ndarray:
    split = split_hamiltonian(params, regime)
    members = degenerate_set(h0_eigensystem(regime, params))
    return effective_degenerate_matrix(split.h0, split.h1, members).entries


@pytest.mark.parametrize(
    "regime, weights",
    [
        (Regime.LAPLACIAN_SMALL, (1.0, 4.0)),
        (Regime.LAPLACIAN_MEDIUM, (32.0, 64.0)),
        (Regime.LAPLACIAN_LARGE, (2048.0, 8192.0)),
        (Regime.ADJACENCY_SMALL, (1.0, 4.0)),
        (Regime.ADJACENCY_MEDIUM, (32.0, 64.0)),
        (Regime.ADJACENCY_LARGE_OFF_RESONANT, (2048.0, 8192.0)),
    ],
)
def test_perturbed_system_is_weight_independent(
    regime: Regime, weights: tuple[float, float]
) -> None:
    first, second = (_params(regime, w) for w in weights)
    assert np.allclose(_effective(regime, first), _effective(regime, second), rtol=0, atol=1e-12)
    for params in (first, second):
        assert verify_regime(regime, params).effective_eigenvalue_deviation < 1e-12
    closed = [closed_form_perturbed_eigensystem(regime, p) for p in (first, second)]
    assert [p.eigenvalue for p in closed[0]] == [p.eigenvalue for p in closed[1]]


@pytest.mark.parametrize(
    "laplacian, adjacency, w",
    [
        (Regime.LAPLACIAN_SMALL, Regime.ADJACENCY_SMALL, 1.0),
        (Regime.LAPLACIAN_MEDIUM, Regime.ADJACENCY_MEDIUM, 32.0),
    ],
)
def test_adjacency_effective_matrix_is_shifted_laplacian(
    laplacian: Regime, adjacency: Regime, w: float
) -> None:
    lap_params = _params(laplacian, w)
    shift = lap_params.gamma * lap_params.n_vertices / 2
    lap = _effective(laplacian, lap_params)
    adj = _effective(adjacency, _params(adjacency, w))
    assert np.allclose(adj, lap - shift * np.eye(lap.shape[0]), rtol=0, atol=1e-12)
