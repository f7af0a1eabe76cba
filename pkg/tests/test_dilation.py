import math

import numpy as np
import pytest
import scipy.linalg

from ptmetric._linalg import dagger, hermitian_basis, hermitian_inv, max_abs
from ptmetric.dilation import (
    _h4_block,
    assemble_dilated,
    dilated_propagator,
    evolve_and_compare,
    min_transition_probability,
    reference_states,
    tau_from_metric,
)
from ptmetric.errors import (
    IntertwiningViolationError,
    InvalidParameterError,
    NotPositiveError,
)
from ptmetric.metric import HermitianMetric, MetricFamilyParams, family_metric
from ptmetric.model import PtParams, build_hamiltonian


def make_bundle(theta, eta11=2.0, a=0.0, margin=1.0, e0=0.0, s=1.0):
    params = PtParams(e0, s, theta)
    metric = family_metric(theta, MetricFamilyParams(eta11, a))
    scaled, tau = tau_from_metric(metric, margin)
    return params, assemble_dilated(build_hamiltonian(params), scaled, tau)


def test_tau_scalar_case():
    scaled, tau = tau_from_metric(HermitianMetric.from_matrix(2 * np.eye(2)), 1.0)
    np.testing.assert_allclose(scaled.matrix, 2 * np.eye(2), atol=1e-14)
    np.testing.assert_allclose(tau, np.eye(2), atol=1e-14)


def test_tau_shares_eigenbasis_with_metric():
    metric = family_metric(math.pi / 6, MetricFamilyParams(2.0, 0.0))
    scaled, tau = tau_from_metric(metric, 1.0)
    assert scaled.eig_min == pytest.approx(2.0, abs=1e-12)
    assert scaled.eig_max == pytest.approx(6.0, abs=1e-12)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(tau), [1.0, math.sqrt(5.0)], atol=1e-12)
    assert max_abs(np.eye(2) + tau @ tau - scaled.matrix) < 1e-12


def test_tau_rejects_indefinite():
    sx = HermitianMetric.from_matrix(np.array([[0, 1], [1, 0]], dtype=complex))
    with pytest.raises(NotPositiveError):
        tau_from_metric(sx, 1.0)
    good = HermitianMetric.from_matrix(2 * np.eye(2))
    with pytest.raises(InvalidParameterError):
        tau_from_metric(good, 0.0)


def test_assemble_hermitian_input_gives_block_diagonal():
    params = PtParams(0.0, 1.0, 0.0)
    h = build_hamiltonian(params)
    scaled, tau = tau_from_metric(HermitianMetric.from_matrix(2 * np.eye(2)), 1.0)
    bundle = assemble_dilated(h, scaled, tau)
    np.testing.assert_allclose(bundle.h1, h, atol=1e-14)
    np.testing.assert_allclose(bundle.h2, np.zeros((2, 2)), atol=1e-14)
    np.testing.assert_allclose(bundle.h4, h, atol=1e-14)


def test_assemble_constraints_hold():
    _, bundle = make_bundle(math.pi / 6)
    assert max_abs(bundle.h_hat - dagger(bundle.h_hat)) < 1e-10
    assert max_abs(bundle.h1 + bundle.h2 @ bundle.tau - bundle.h) < 1e-10
    assert max_abs(dagger(bundle.h2) + bundle.h4 @ bundle.tau
                   - bundle.tau @ bundle.h) < 1e-10


def test_assemble_rejects_non_metric():
    params = PtParams(0.0, 1.0, math.pi / 6)
    h = build_hamiltonian(params)
    not_metric = HermitianMetric.from_matrix(np.eye(2))
    with pytest.raises(IntertwiningViolationError):
        assemble_dilated(h, not_metric, np.eye(2))


def test_h4_hermiticity_tracks_intertwining():
    rng = np.random.default_rng(41)
    basis = hermitian_basis()
    params = PtParams(0.3, 1.2, 0.8)
    h = build_hamiltonian(params)
    metric = family_metric(0.8, MetricFamilyParams(1.5, 0.2))
    scaled, tau = tau_from_metric(metric, 1.0)
    tau_inv = hermitian_inv(tau)
    for _ in range(20):
        h1 = sum(c * b for c, b in zip(rng.standard_normal(4), basis))
        h4 = _h4_block(h, h1, tau, tau_inv)
        assert max_abs(h4 - dagger(h4)) < 1e-10
    # breaking the metric breaks Hermiticity measurably
    bad = HermitianMetric.from_matrix(
        scaled.matrix + 0.05 * scaled.eig_max * np.diag([1.0, -1.0]))
    bad_scaled, bad_tau = tau_from_metric(bad, 1.0)
    assert max_abs(dagger(h) @ bad_scaled.matrix - bad_scaled.matrix @ h) > 1e-6
    bad_inv = hermitian_inv(bad_tau)
    h4 = _h4_block(h, 0.5 * (h + dagger(h)), bad_tau, bad_inv)
    assert max_abs(h4 - dagger(h4)) > 1e-10


def test_propagator_unitarity():
    _, bundle = make_bundle(math.pi / 6)
    for t in (0.1, 1.0, 10.0):
        u = dilated_propagator(bundle.h_hat, t)
        assert max_abs(dagger(u) @ u - np.eye(4)) < 1e-10


def test_evolution_hermitian_case():
    _, bundle = make_bundle(0.0)
    trace = evolve_and_compare(bundle, np.array([1.0, 0.0]), 10.0, 101)
    assert trace.deviation < 1e-8


def test_evolution_tracks_reference():
    params, bundle = make_bundle(math.pi / 6)
    trace = evolve_and_compare(bundle, np.array([1.0, 0.0]), 10.0, 1000)
    assert trace.deviation <= 1e-8
    # the dilated state stays normalized while the reference norm oscillates
    full = np.hstack([trace.dilated_substate, trace.dilated_complement])
    norms = np.linalg.norm(full, axis=1)
    assert float(np.ptp(norms)) < 1e-10
    ref_norms = np.linalg.norm(trace.reference_state, axis=1)
    assert float(np.ptp(ref_norms)) > 1e-2
    # second block carries tau psi(t)
    second = np.max(np.linalg.norm(
        trace.dilated_complement - trace.reference_state @ bundle.tau.T, axis=1))
    assert second <= 1e-8


def test_evolution_input_validation():
    _, bundle = make_bundle(math.pi / 6)
    with pytest.raises(InvalidParameterError):
        evolve_and_compare(bundle, np.zeros(2), 1.0, 10)
    with pytest.raises(InvalidParameterError):
        evolve_and_compare(bundle, np.array([1.0, 0.0]), 1.0, 1)


def test_margin_rescaling_does_not_change_subsystem():
    psi0 = np.array([0.6, 0.8j])
    traces = []
    for margin in (0.5, 1.0, 2.0):
        _, bundle = make_bundle(1.1, margin=margin)
        traces.append(evolve_and_compare(bundle, psi0, 10.0, 101))
    base = traces[0].dilated_substate
    for other in traces[1:]:
        assert np.max(np.abs(other.dilated_substate - base)) < 1e-10


def test_reference_propagator_jordan_branch():
    h = build_hamiltonian(PtParams(0.7, 2.0, math.pi / 2))
    times = np.linspace(0.0, 5.0, 7)
    psi0 = np.array([0.3 + 0.1j, -0.8])
    mine = reference_states(h, times, psi0)
    oracle = np.array([scipy.linalg.expm(-1j * h * t) @ psi0 for t in times])
    assert np.max(np.abs(mine - oracle)) < 1e-10


def test_reference_propagator_generic_branch():
    h = build_hamiltonian(PtParams(0.5, 1.5, 0.9))
    times = np.linspace(0.0, 8.0, 9)
    psi0 = np.array([1.0, 0.5j])
    mine = reference_states(h, times, psi0)
    oracle = np.array([scipy.linalg.expm(-1j * h * t) @ psi0 for t in times])
    assert np.max(np.abs(mine - oracle)) < 1e-10


def test_min_transition_probability():
    assert min_transition_probability(
        HermitianMetric.from_matrix(np.eye(2))) == pytest.approx(1.0, abs=1e-12)
    metric = family_metric(math.pi / 6, MetricFamilyParams(2.0, 0.0))
    scaled, _ = tau_from_metric(metric, 1.0)
    assert min_transition_probability(scaled) == pytest.approx(1 / 6, abs=1e-10)
    diag = HermitianMetric.from_matrix(np.diag([1.0, 4.0]))
    assert min_transition_probability(diag) == pytest.approx(0.25, abs=1e-10)
    with pytest.raises(InvalidParameterError):
        min_transition_probability(diag, samples=10)
    with pytest.raises(NotPositiveError):
        min_transition_probability(
            HermitianMetric.from_matrix(np.array([[0, 1], [1, 0]], dtype=complex)))


def test_min_transition_probability_deterministic():
    metric = family_metric(0.4, MetricFamilyParams(1.3, 0.2))
    a = min_transition_probability(metric, samples=500, seed=7)
    b = min_transition_probability(metric, samples=500, seed=7)
    assert a == b
