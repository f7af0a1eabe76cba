import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptmetric._linalg import dagger, frob_inner_real, max_abs
from ptmetric.errors import InvalidParameterError, NotHermitianError
from ptmetric.metric import (
    Definiteness,
    HermitianMetric,
    MetricFamilyParams,
    classify_definiteness,
    family_eigenvalues,
    family_gap,
    family_metric,
    find_positive_metric,
    solve_intertwining_space,
)
from ptmetric.model import PtParams, build_hamiltonian

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def residual(h, x):
    return max_abs(dagger(h) @ x - x @ h)


def test_solution_space_hermitian_case():
    h = build_hamiltonian(PtParams(0.0, 1.0, 0.0))
    space = solve_intertwining_space(h)
    assert space.dimension == 2
    # span{I, sigma_x}: both project fully onto the basis
    for target in (np.eye(2, dtype=complex), SIGMA_X):
        proj = sum(frob_inner_real(b, target) * b for b in space.basis)
        assert max_abs(target - proj) < 1e-10
    for b in space.basis:
        assert residual(h, b) < 1e-10


def test_solution_space_at_exceptional_point():
    h = build_hamiltonian(PtParams(0.0, 1.0, math.pi / 2))
    space = solve_intertwining_space(h)
    assert space.dimension == 2
    rng = np.random.default_rng(5)
    for _ in range(200):
        coeffs = rng.standard_normal(2)
        m = sum(c * b for c, b in zip(coeffs, space.basis))
        if abs(np.linalg.det(m)) < 1e-8:
            continue
        assert classify_definiteness(m) is Definiteness.INDEFINITE


def test_solution_space_non_symmetric_input():
    # off-diagonals and the mismatched diagonal block are forced to zero
    space = solve_intertwining_space(np.array([[1.0, 0.0], [0.0, 2j]]))
    assert space.dimension <= 1
    for b in space.basis:
        w = np.linalg.eigvalsh(b)
        assert min(abs(w[0]), abs(w[-1])) < 1e-12  # singular element


def test_family_metric_identity_case():
    m = family_metric(0.0, MetricFamilyParams(1.0, 0.0))
    np.testing.assert_allclose(m.matrix, np.eye(2), atol=1e-15)
    assert m.definiteness is Definiteness.POSITIVE_DEFINITE
    assert m.eig_min == pytest.approx(1.0, abs=1e-12)
    assert m.eig_max == pytest.approx(1.0, abs=1e-12)


def test_family_metric_spectrum():
    m = family_metric(math.pi / 6, MetricFamilyParams(2.0, 0.0))
    assert m.matrix[0, 1] == pytest.approx(-1j, abs=1e-12)
    assert m.matrix[1, 0] == pytest.approx(1j, abs=1e-12)
    assert m.eig_min == pytest.approx(1.0, abs=1e-12)
    assert m.eig_max == pytest.approx(3.0, abs=1e-12)
    assert m.definiteness is Definiteness.POSITIVE_DEFINITE


def test_family_metric_indefinite_at_ep():
    m = family_metric(math.pi / 2, MetricFamilyParams(1.0, 0.5))
    assert m.definiteness is Definiteness.INDEFINITE


def test_family_params_validation():
    with pytest.raises(InvalidParameterError):
        MetricFamilyParams(0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        MetricFamilyParams(float("nan"), 0.0)


def test_classify_definiteness_cases():
    assert classify_definiteness(np.eye(2)) is Definiteness.POSITIVE_DEFINITE
    assert classify_definiteness(SIGMA_X) is Definiteness.INDEFINITE
    assert classify_definiteness(-2 * np.eye(2)) is Definiteness.NEGATIVE_DEFINITE
    assert classify_definiteness(np.diag([0.0, 1.0])) is Definiteness.SINGULAR
    # a^2 + sin^2 = 0.81 + 0.5 > 1 so the smaller eigenvalue is negative
    m = family_metric(math.pi / 4, MetricFamilyParams(1.0, 0.9))
    assert m.definiteness is Definiteness.INDEFINITE
    with pytest.raises(NotHermitianError):
        classify_definiteness(np.array([[0.0, 1.0], [0.0, 0.0]]))


@given(
    theta=st.floats(-math.pi, math.pi),
    eta11=st.one_of(st.floats(0.2, 3.0), st.floats(-3.0, -0.2)),
    a=st.floats(-2.0, 2.0),
    e0=st.floats(-3.0, 3.0),
    s=st.one_of(st.floats(0.3, 3.0), st.floats(-3.0, -0.3)),
)
@settings(max_examples=300)
def test_family_solves_intertwining_exactly(theta, eta11, a, e0, s):
    h = build_hamiltonian(PtParams(e0, s, theta))
    eta = family_metric(theta, MetricFamilyParams(eta11, a)).matrix
    assert residual(h, eta) < 1e-12


@given(
    theta=st.floats(-math.pi, math.pi),
    eta11=st.one_of(st.floats(0.2, 3.0), st.floats(-3.0, -0.2)),
    a=st.floats(-1.5, 1.5),
)
@settings(max_examples=300)
def test_definiteness_criterion(theta, eta11, a):
    r2 = a * a + math.sin(theta) ** 2
    if abs(r2 - 1.0) < 1e-6:
        return
    m = family_metric(theta, MetricFamilyParams(eta11, a))
    expected = eta11 > 0 and r2 < 1.0
    assert (m.definiteness is Definiteness.POSITIVE_DEFINITE) == expected


@given(
    theta=st.floats(-math.pi, math.pi),
    eta11=st.one_of(st.floats(0.2, 3.0), st.floats(-3.0, -0.2)),
    a=st.floats(-2.0, 2.0),
)
@settings(max_examples=200)
def test_closed_form_eigenvalues_match_numeric(theta, eta11, a):
    params = MetricFamilyParams(eta11, a)
    lo, hi = family_eigenvalues(theta, params)
    m = family_metric(theta, params)
    assert lo == pytest.approx(m.eig_min, abs=1e-10)
    assert hi == pytest.approx(m.eig_max, abs=1e-10)


def test_family_gap_stability_near_boundary():
    theta = math.pi / 2 - 1e-6
    gap = family_gap(theta, 0.0)
    # 1 - sin(theta) = cos^2 / (1 + sin): positive and far above rounding noise
    assert gap > 0
    assert gap == pytest.approx(math.cos(theta) ** 2 / 2.0, rel=1e-9)


def test_family_at_ep_singular_for_zero_a():
    for sign in (1.0, -1.0):
        m = family_metric(sign * math.pi / 2, MetricFamilyParams(1.5, 0.0))
        assert m.definiteness is Definiteness.SINGULAR


def test_solution_space_dimension_on_grid():
    for th in np.linspace(-math.pi, math.pi, 91):
        h = build_hamiltonian(PtParams(0.7, 1.3, float(th)))
        assert solve_intertwining_space(h).dimension == 2


def test_family_lies_in_numeric_span():
    rng = np.random.default_rng(11)
    for _ in range(50):
        theta = rng.uniform(-math.pi, math.pi)
        fam = MetricFamilyParams(rng.uniform(0.3, 2.0), rng.uniform(-1.5, 1.5))
        eta = family_metric(theta, fam).matrix
        space = solve_intertwining_space(
            build_hamiltonian(PtParams(0.0, 1.0, theta)))
        proj = sum(frob_inner_real(b, eta) * b for b in space.basis)
        assert max_abs(eta - proj) < 1e-10


def test_find_positive_metric_hermitian_case():
    space = solve_intertwining_space(build_hamiltonian(PtParams(0.0, 1.0, 0.0)))
    m = find_positive_metric(space)
    assert m is not None
    assert m.definiteness is Definiteness.POSITIVE_DEFINITE


def test_find_positive_metric_empty_at_ep():
    space = solve_intertwining_space(
        build_hamiltonian(PtParams(0.0, 1.0, math.pi / 2)))
    assert find_positive_metric(space) is None


def test_find_positive_metric_generic_angle():
    h = build_hamiltonian(PtParams(0.0, 1.0, math.pi / 3))
    space = solve_intertwining_space(h)
    m = find_positive_metric(space)
    assert m is not None
    assert m.eig_min > 0
    assert residual(h, m.matrix) < 1e-10


def test_metric_from_matrix_symmetrizes():
    base = np.array([[1.0, 0.3 + 0.4j], [0.3 - 0.4j, 2.0]])
    skew = base + np.array([[0, 1e-14], [0, 0]])
    m = HermitianMetric.from_matrix(skew)
    assert max_abs(m.matrix - dagger(m.matrix)) == 0.0
    with pytest.raises(NotHermitianError):
        HermitianMetric.from_matrix(base + np.array([[0, 1e-6], [0, 0]]))
