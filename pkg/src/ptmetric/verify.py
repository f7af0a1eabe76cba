"""Seeded property suites behind the `verify` command and the acceptance tests.

Each check draws its own inputs from a deterministic generator, measures a
worst-case violation and compares it against the check's tolerance.  A check
passes iff ``violation <= tol``; ``margin = tol - violation`` is reported so
a healthy suite shows how much slack each invariant has.

Random draws near conditioning boundaries are kept away from them by small
guard bands (noted per check) so the absolute tolerances stay above
double-precision noise; the guards are orders of magnitude tighter than any
physically meaningful sweep step.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import dagger, frob_inner_real, max_abs
from .canonical import (
    ep_canonical_d,
    equivalence_check,
    reconstruct_metric,
    solve_canonical_d,
    two_angle_frame,
)
from .dilation import (
    _h4_block,
    assemble_dilated,
    dilated_propagator,
    evolve_and_compare,
    min_transition_probability,
    tau_from_metric,
)
from .errors import InvalidParameterError
from .measures import (
    delta1,
    delta2,
    delta2_lower_bound,
    dilation_efficiency,
    efficiency_relation,
    l1_norm,
)
from .metric import (
    Definiteness,
    HermitianMetric,
    MetricFamilyParams,
    classify_definiteness,
    family_gap,
    family_metric,
    solve_intertwining_space,
)
from .model import PtParams, build_hamiltonian, check_pt_symmetry, eigensystem


@dataclass
class InvariantResult:
    """Outcome of one property suite."""

    name: str
    passed: bool
    margin: float
    worst_input: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "margin": self.margin,
            "worst_input": self.worst_input,
            "detail": self.detail,
        }


class _Worst:
    """Track the largest violation and the input that produced it."""

    def __init__(self):
        self.violation = -math.inf
        self.input = None

    def update(self, violation: float, **inputs):
        if violation > self.violation:
            self.violation = float(violation)
            self.input = {k: float(v) for k, v in inputs.items()}


def _draw_params(rng) -> PtParams:
    return PtParams(
        e0=rng.uniform(-3.0, 3.0),
        s=rng.uniform(0.5, 3.0) * rng.choice([-1.0, 1.0]),
        theta=rng.uniform(-math.pi, math.pi),
    )


def _draw_admissible_family(rng, interior: float = 1e-6) -> tuple:
    """(theta, params) with eta11 > 0 and a^2 + sin^2(theta) <= 1 - interior."""
    while True:
        theta = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-1.0, 1.0)
        if a * a + math.sin(theta) ** 2 <= 1.0 - interior:
            return theta, MetricFamilyParams(rng.uniform(0.2, 3.0), a)


def _check_pt_symmetry(rng, trials):
    worst = _Worst()
    from ._linalg import PAULI_X
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        h = build_hamiltonian(p)
        resid = max_abs(h @ PAULI_X - PAULI_X @ h.conj())
        worst.update(resid, e0=p.e0, s=p.s, theta=p.theta)
        if not check_pt_symmetry(h):
            worst.update(1.0, e0=p.e0, s=p.s, theta=p.theta)
    return worst, 1e-12, "residual of H P - P conj(H)"


def _check_eigenvalue_agreement(rng, trials):
    # numeric eigenvalue conditioning grows like 1/|cos(theta)|; the draw
    # domain keeps |cos(theta)| > 1e-4 so 1e-10 stays attainable
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        if abs(math.cos(p.theta)) <= 1e-4:
            continue
        es = eigensystem(p)
        w = np.linalg.eigvals(build_hamiltonian(p))
        w = w[np.argsort(w.real)]
        closed = sorted((es.lambda_minus, es.lambda_plus), key=lambda z: z.real)
        diff = max(abs(w[0] - closed[0]), abs(w[1] - closed[1]))
        worst.update(diff, e0=p.e0, s=p.s, theta=p.theta)
    return worst, 1e-10, "closed-form vs numeric eigenvalues (complex modulus)"


def _check_trace_det(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        h = build_hamiltonian(p)
        tr_dev = abs(np.trace(h) - 2.0 * p.e0)
        ct = math.cos(p.theta)
        det_dev = abs((p.e0 + p.s * ct) * (p.e0 - p.s * ct) - np.linalg.det(h))
        # trace holds to 1e-12, det to 1e-10; normalize to the det tolerance
        worst.update(max(tr_dev * 1e2, det_dev), e0=p.e0, s=p.s, theta=p.theta)
    return worst, 1e-10, "trace(H) = 2 e0 and lambda_+ lambda_- = det(H)"


def _check_eigenvector_coalescence(rng, trials):
    worst = _Worst()
    thetas = np.linspace(-math.pi, math.pi, 721)
    for th in thetas:
        if abs(math.cos(th)) <= 1e-9:
            continue
        es = eigensystem(PtParams(0.0, 1.0, float(th)))
        overlap = abs(np.vdot(es.psi_plus, es.psi_minus))
        worst.update(abs(overlap - abs(math.sin(th))), theta=float(th))
    return worst, 1e-12, "|<psi_+|psi_->| = |sin(theta)| on a 721-point grid"


def _check_solution_space_dimension(rng, trials):
    worst = _Worst()
    bad = 0
    thetas = np.linspace(-math.pi, math.pi, 721)
    for e0, s in ((0.0, 1.0), (2.0, 3.0)):
        for th in thetas:
            space = solve_intertwining_space(
                build_hamiltonian(PtParams(e0, s, float(th))))
            if space.dimension != 2:
                bad += 1
                worst.update(float(bad), e0=e0, s=s, theta=float(th))
    worst.update(float(bad))
    return worst, 0.5, "null-space dimension = 2 at all 721 grid points"


def _check_family_intertwining(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        fam = MetricFamilyParams(
            rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0]), rng.uniform(-2.0, 2.0))
        h = build_hamiltonian(p)
        eta = family_metric(p.theta, fam).matrix
        resid = max_abs(dagger(h) @ eta - eta @ h)
        worst.update(resid, e0=p.e0, s=p.s, theta=p.theta, eta11=fam.eta11, a=fam.a)
    return worst, 1e-12, "closed-form family solves the intertwining relation"


def _check_family_in_span(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 400)):
        p = _draw_params(rng)
        fam = MetricFamilyParams(
            rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0]), rng.uniform(-2.0, 2.0))
        eta = family_metric(p.theta, fam).matrix
        space = solve_intertwining_space(build_hamiltonian(p))
        proj = sum(frob_inner_real(b, eta) * b for b in space.basis)
        worst.update(max_abs(eta - proj), theta=p.theta, eta11=fam.eta11, a=fam.a)
    return worst, 1e-10, "family elements lie in the numeric null-space span"


def _check_definiteness_criterion(rng, trials):
    # guard band 1e-6 on |a^2 + sin^2(theta) - 1| keeps the classification
    # away from the eigenvalue-zero crossing
    worst = _Worst()
    bad = 0
    n = 0
    while n < min(trials, 2000):
        theta = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-1.5, 1.5)
        r2 = a * a + math.sin(theta) ** 2
        if abs(r2 - 1.0) < 1e-6:
            continue
        n += 1
        eta11 = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        fam = MetricFamilyParams(eta11, a)
        is_pd = family_metric(theta, fam).definiteness is Definiteness.POSITIVE_DEFINITE
        should = eta11 > 0 and r2 < 1.0
        if is_pd != should:
            bad += 1
            worst.update(float(bad), theta=theta, eta11=eta11, a=a)
    worst.update(float(bad))
    return worst, 0.5, "PositiveDefinite iff eta11 > 0 and a^2 + sin^2(theta) < 1"


def _check_ep_indefinite(rng, trials):
    worst = _Worst()
    bad = 0
    for sign in (1.0, -1.0):
        h = build_hamiltonian(PtParams(0.0, 1.0, sign * math.pi / 2))
        space = solve_intertwining_space(h)
        for _ in range(min(trials, 1000) // 2):
            coeffs = rng.standard_normal(space.dimension)
            coeffs /= np.linalg.norm(coeffs)
            m = sum(c * b for c, b in zip(coeffs, space.basis))
            if abs(np.linalg.det(m)) < 1e-6:
                continue
            if classify_definiteness(m) is not Definiteness.INDEFINITE:
                bad += 1
                worst.update(float(bad), sign=sign)
        # a = 0 collapses the family element to a singular matrix
        sing = family_metric(sign * math.pi / 2, MetricFamilyParams(1.0, 0.0))
        if sing.definiteness is not Definiteness.SINGULAR:
            bad += 1
    worst.update(float(bad))
    return worst, 0.5, "invertible exceptional-point solutions are all indefinite"


def _draw_frame_angles(rng, guard):
    while True:
        th = rng.uniform(-math.pi, math.pi)
        tp = rng.uniform(-math.pi, math.pi)
        if abs(math.cos(0.5 * (th + tp))) > guard:
            return th, tp


def _check_frame_similarity(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        th, tp = _draw_frame_angles(rng, 1e-6)
        p = PtParams(p.e0, p.s, th)
        frame = two_angle_frame(p, tp)
        h = build_hamiltonian(p)
        resid = max_abs(h @ frame.psi - frame.psi @ frame.lam)
        worst.update(resid, e0=p.e0, s=p.s, theta=th, theta_prime=tp)
    return worst, 1e-10, "H Psi = Psi Lambda across random frames"


def _check_closed_form_inverse(rng, trials):
    # relative comparison; numeric inversion loses cond * eps accuracy, so
    # the draw domain keeps |cos((theta + theta')/2)| > 1e-4
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        th, tp = _draw_frame_angles(rng, 1e-4)
        frame = two_angle_frame(PtParams(0.0, 1.0, th), tp)
        num = np.linalg.inv(frame.psi)
        rel = max_abs(frame.psi_inv - num) / max(1.0, max_abs(frame.psi_inv))
        worst.update(rel, theta=th, theta_prime=tp)
    return worst, 1e-10, "closed-form Psi^{-1} matches numeric inversion (relative)"


def _check_reconstruction_intertwining(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        p = _draw_params(rng)
        th, tp = _draw_frame_angles(rng, 0.1)
        p = PtParams(p.e0, p.s, th)
        frame = two_angle_frame(p, tp)
        if abs(math.cos(th)) > 1e-9:
            d = solve_canonical_d(frame, rng.uniform(-3, 3), rng.uniform(-3, 3))
        else:
            d = ep_canonical_d(frame, rng.uniform(0.5, 3), rng.uniform(-3, 3))
        metric = reconstruct_metric(frame, d)
        h = build_hamiltonian(p)
        resid = max_abs(dagger(h) @ metric.matrix - metric.matrix @ h)
        scale = max(1.0, max_abs(h) * max(1.0, max_abs(metric.matrix)))
        worst.update(resid / scale, theta=th, theta_prime=tp, d11=d.d11, d22=d.d22)
    return worst, 1e-10, "reconstructed metrics intertwine (scaled residual)"


def _check_eigenframe_recovery(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 500)):
        p = _draw_params(rng)
        if abs(math.cos(p.theta)) <= 1e-6:
            continue
        frame = two_angle_frame(p, p.theta)
        es = eigensystem(p)
        dev = max(
            abs(frame.c),
            abs(frame.lam[0, 1]),
            abs(frame.lam[1, 0]),
            abs(frame.b1 - es.lambda_plus.real),
            abs(frame.b2 - es.lambda_minus.real),
        )
        worst.update(dev, e0=p.e0, s=p.s, theta=p.theta)
    return worst, 1e-12, "theta' = theta recovers the diagonal eigenvector frame"


def _check_positivity_congruence(rng, trials):
    worst = _Worst()
    bad = 0
    n = 0
    while n < min(trials, 1000):
        p = _draw_params(rng)
        th, tp = _draw_frame_angles(rng, 0.1)
        if abs(math.cos(th)) <= 1e-3:
            continue
        p = PtParams(p.e0, p.s, th)
        frame = two_angle_frame(p, tp)
        d11 = rng.uniform(-3, 3)
        d22 = rng.uniform(-3, 3)
        d = solve_canonical_d(frame, d11, d22)
        det_d = d11 * d22 - abs(d.d12) ** 2
        if abs(det_d) < 1e-6 or abs(d11) < 1e-3:
            continue
        n += 1
        d_pd = d11 > 0 and det_d > 0
        eta_pd = (reconstruct_metric(frame, d).definiteness
                  is Definiteness.POSITIVE_DEFINITE)
        if d_pd != eta_pd:
            bad += 1
            worst.update(float(bad), theta=th, theta_prime=tp, d11=d11, d22=d22)
    worst.update(float(bad))
    return worst, 0.5, "reconstructed eta is positive definite iff D is"


def _check_delta1_product_floor(rng, trials):
    worst = _Worst()
    min_product = math.inf
    for _ in range(trials):
        theta, fam = _draw_admissible_family(rng)
        ep = MetricFamilyParams(
            rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0]),
            rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0]))
        rep = delta1(theta, fam, ep)
        viol = max(
            rep.delta1_lower_bound - rep.delta1_exact,
            4.0 - rep.product,
            4.0 - rep.product_bound,
        )
        min_product = min(min_product, rep.product_bound)
        worst.update(viol, theta=theta, eta11=fam.eta11, a=fam.a,
                     ep_eta11=ep.eta11, ep_a=ep.a)
    return worst, 1e-9, f"min bound product = {min_product:.12g} (floor 4)"


def _check_p_minus_divergence(rng, trials):
    # k stops where the definiteness classifier still sees a positive metric
    worst = _Worst()
    prev = -math.inf
    last = 0.0
    for k in range(1, 5):
        theta = math.pi / 2 - 10.0 ** (-k)
        rep = delta1(theta, MetricFamilyParams(1.2, 0.0),
                     MetricFamilyParams(1.0, 1.0))
        worst.update(prev - rep.p_minus, theta=theta)
        prev = rep.p_minus
        last = rep.p_minus
    return worst, 0.0, f"p_minus strictly increasing toward the EP (last {last:.3e})"


def _check_delta2_floor(rng, trials):
    worst = _Worst()
    n = 0
    while n < trials:
        th = rng.uniform(-math.pi, math.pi)
        tp = rng.uniform(-math.pi, math.pi)
        if abs(math.cos(th)) < 1e-3:
            continue
        if abs(math.sin(0.5 * (th - tp))) < 1e-3:
            continue
        if abs(math.cos(0.5 * (th + tp))) < 1e-4:
            continue
        n += 1
        frame = two_angle_frame(PtParams(0.0, 1.0, th), tp)
        k = math.sin(0.5 * (frame.theta - frame.theta_prime)) / math.cos(frame.theta)
        d11 = rng.uniform(0.1, 3.0)
        t = k * k * (1.0 + rng.uniform(1e-3, 4.0))
        d = solve_canonical_d(frame, d11, t * d11)
        rep = delta2(d, 0.0)
        bound = delta2_lower_bound(th, tp)
        viol = max(2.0 - rep.delta2, bound - rep.delta2)
        worst.update(viol, theta=th, theta_prime=tp, d11=d11, d22=t * d11)
    return worst, 1e-9, "delta2 >= 2 and >= its angle bound for positive D"


def _check_ed2_ratio_floor(rng, trials):
    worst = _Worst()
    n = 0
    while n < trials:
        theta = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-1.0, 1.0)
        gap = family_gap(theta, a)
        if gap < 1e-4:
            continue
        n += 1
        eta11 = 2.0 * (1.0 + rng.uniform(1e-6, 2.0)) / gap
        rep = efficiency_relation(theta, MetricFamilyParams(eta11, a))
        viol = max(4.0 - rep.ratio, 4.0 - rep.chain, rep.chain - rep.ratio)
        worst.update(viol, theta=theta, eta11=eta11, a=a)
    return worst, 1e-9, "ratio >= chain >= 4 under the half-spectrum gate"


def _check_efficiency_range(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        theta, fam = _draw_admissible_family(rng, interior=1e-4)
        gap = family_gap(theta, fam.a)
        eta11 = (1.0 + rng.uniform(0.0, 3.0)) / gap
        e_d = dilation_efficiency(family_metric(theta, MetricFamilyParams(eta11, fam.a)))
        worst.update(max(e_d - 1.0, -e_d), theta=theta, eta11=eta11, a=fam.a)
    ident = dilation_efficiency(family_metric(0.0, MetricFamilyParams(1.0, 0.0)))
    worst.update(abs(ident - 1.0), theta=0.0, eta11=1.0, a=0.0)
    return worst, 1e-12, "E_d in (0, 1] when lambda_min >= 1; E_d = 1 iff lambda_max = 1"


def _check_l1_norm_axioms(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 1000)):
        za = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        zb = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        alpha = complex(rng.standard_normal(), rng.standard_normal())
        scale = max(1.0, l1_norm(za) + l1_norm(zb))
        tri = (l1_norm(za + zb) - l1_norm(za) - l1_norm(zb)) / scale
        hom = abs(l1_norm(alpha * za) - abs(alpha) * l1_norm(za)) / scale
        worst.update(max(tri, hom))
    return worst, 1e-12, "triangle inequality and absolute homogeneity"


def _check_h4_hermiticity_iff_metric(rng, trials):
    worst = _Worst()
    from ._linalg import hermitian_basis, hermitian_inv
    basis = hermitian_basis()
    for _ in range(min(trials, 300)):
        theta, fam = _draw_admissible_family(rng, interior=1e-2)
        p = PtParams(rng.uniform(-2, 2), rng.uniform(0.5, 2.0), theta)
        h = build_hamiltonian(p)
        fam_pos = MetricFamilyParams(abs(fam.eta11), fam.a)
        scaled, tau = tau_from_metric(family_metric(theta, fam_pos), margin=1.0)
        tau_inv = hermitian_inv(tau)
        h1 = sum(c * b for c, b in zip(rng.standard_normal(4), basis))
        h4 = _h4_block(h, h1, tau, tau_inv)
        dev_valid = max_abs(h4 - dagger(h4))
        # perturb the metric so the intertwining relation fails measurably
        bad = scaled.matrix + 0.05 * scaled.eig_max * np.diag([1.0, -1.0])
        bad_metric = HermitianMetric.from_matrix(bad)
        bad_scaled, bad_tau = tau_from_metric(bad_metric, margin=1.0)
        bad_inv = hermitian_inv(bad_tau)
        bad_resid = max_abs(dagger(h) @ bad_scaled.matrix - bad_scaled.matrix @ h)
        bad_h4 = _h4_block(h, h1, bad_tau, bad_inv)
        dev_bad = max_abs(bad_h4 - dagger(bad_h4))
        viol = dev_valid
        if bad_resid > 1e-6:
            viol = max(viol, 2e-10 - dev_bad)
        worst.update(viol, theta=theta, e0=p.e0, s=p.s)
    return worst, 1e-10, "H4 Hermitian iff the metric intertwines (both directions)"


def _dilation_grid(e0=0.0, s=1.0, points=25, avoid=0.05):
    thetas = np.linspace(-math.pi, math.pi, points)
    keep = [th for th in thetas
            if min(abs(th - math.pi / 2), abs(th + math.pi / 2)) >= avoid]
    return [PtParams(e0, s, float(th)) for th in keep]


def _check_propagator_unitarity(rng, trials):
    worst = _Worst()
    fam = MetricFamilyParams(2.0, 0.0)
    for p in _dilation_grid(s=1.0) + _dilation_grid(e0=1.0, s=2.0):
        scaled, tau = tau_from_metric(family_metric(p.theta, fam), margin=1.0)
        bundle = assemble_dilated(build_hamiltonian(p), scaled, tau)
        for t in (0.1, 1.0, 10.0):
            u = dilated_propagator(bundle.h_hat, t / abs(p.s))
            worst.update(max_abs(dagger(u) @ u - np.eye(4)), theta=p.theta, t=t)
    return worst, 1e-10, "exp(-i H_hat t) unitary at t in {0.1, 1, 10}/|s|"


def _check_subsystem_fidelity(rng, trials):
    worst = _Worst()
    fam = MetricFamilyParams(2.0, 0.0)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    for p in _dilation_grid(s=1.0) + _dilation_grid(e0=0.5, s=2.0):
        scaled, tau = tau_from_metric(family_metric(p.theta, fam), margin=1.0)
        bundle = assemble_dilated(build_hamiltonian(p), scaled, tau)
        herm_dev = max_abs(bundle.h_hat - dagger(bundle.h_hat))
        trace = evolve_and_compare(bundle, psi0, 10.0 / abs(p.s), 201)
        second = float(np.max(np.linalg.norm(
            trace.dilated_complement - trace.reference_state @ tau.T, axis=1)))
        worst.update(max(trace.deviation, second, herm_dev * 1e2),
                     theta=p.theta, e0=p.e0, s=p.s)
    return worst, 1e-8, "embedded dynamics tracks exp(-i H t) psi0 and tau psi(t)"


def _check_efficiency_consistency(rng, trials):
    worst = _Worst()
    for _ in range(min(trials, 50)):
        theta, fam = _draw_admissible_family(rng, interior=1e-2)
        fam_pos = MetricFamilyParams(abs(fam.eta11), fam.a)
        metric = family_metric(theta, fam_pos)
        scaled, _ = tau_from_metric(metric, margin=1.0)
        for m in (metric, scaled):
            mtp = min_transition_probability(m, samples=1000)
            viol = max(abs(mtp - 1.0 / m.eig_max),
                       abs(mtp - dilation_efficiency(m)))
            worst.update(viol, theta=theta, eta11=fam_pos.eta11, a=fam_pos.a)
    return worst, 1e-10, "sampled minimum transition probability = 1/lambda_max"


def _check_margin_invariance(rng, trials):
    worst = _Worst()
    fam = MetricFamilyParams(2.0, 0.0)
    psi0 = np.array([0.6, 0.8j], dtype=complex)
    for p in _dilation_grid(points=9):
        metric = family_metric(p.theta, fam)
        h = build_hamiltonian(p)
        traces = []
        for margin in (0.5, 1.0, 2.0):
            scaled, tau = tau_from_metric(metric, margin=margin)
            bundle = assemble_dilated(h, scaled, tau)
            traces.append(evolve_and_compare(bundle, psi0, 10.0 / abs(p.s), 101))
        base = traces[0].dilated_substate
        dev = max(float(np.max(np.abs(t.dilated_substate - base))) for t in traces[1:])
        worst.update(dev, theta=p.theta)
    return worst, 1e-10, "subsystem trace identical for margins 0.5, 1, 2"


def _check_equivalence_reconstruction(rng, trials):
    worst = _Worst()
    n = 0
    while n < min(trials, 1000):
        th = rng.uniform(-math.pi, math.pi)
        if abs(math.sin(th)) < 0.05 or abs(math.cos(th)) < 0.05:
            continue
        d11 = rng.uniform(-3, 3)
        d22 = rng.uniform(-3, 3)
        if abs(d11 - d22) < 1e-3:
            continue
        n += 1
        rep = equivalence_check(th, d11, d22,
                                e0=rng.uniform(-2, 2), s=rng.uniform(0.5, 2))
        viol = 1.0 if rep.singular else rep.residual
        worst.update(viol, theta=th, d11=d11, d22=d22)
    return worst, 1e-10, "opposite-angle reconstruction matches the family form"


CHECKS = (
    ("model.pt_symmetry", _check_pt_symmetry),
    ("model.eigenvalue_agreement", _check_eigenvalue_agreement),
    ("model.trace_det", _check_trace_det),
    ("model.eigenvector_coalescence", _check_eigenvector_coalescence),
    ("metric.solution_space_dimension", _check_solution_space_dimension),
    ("metric.family_intertwining", _check_family_intertwining),
    ("metric.family_in_span", _check_family_in_span),
    ("metric.definiteness_criterion", _check_definiteness_criterion),
    ("metric.ep_indefinite", _check_ep_indefinite),
    ("canonical.frame_similarity", _check_frame_similarity),
    ("canonical.closed_form_inverse", _check_closed_form_inverse),
    ("canonical.reconstruction_intertwining", _check_reconstruction_intertwining),
    ("canonical.eigenframe_recovery", _check_eigenframe_recovery),
    ("canonical.positivity_congruence", _check_positivity_congruence),
    ("canonical.equivalence_reconstruction", _check_equivalence_reconstruction),
    ("measures.delta1_product_floor", _check_delta1_product_floor),
    ("measures.p_minus_divergence", _check_p_minus_divergence),
    ("measures.delta2_floor", _check_delta2_floor),
    ("measures.ed2_ratio_floor", _check_ed2_ratio_floor),
    ("measures.efficiency_range", _check_efficiency_range),
    ("measures.l1_norm_axioms", _check_l1_norm_axioms),
    ("dilation.h4_hermiticity_iff_metric", _check_h4_hermiticity_iff_metric),
    ("dilation.propagator_unitarity", _check_propagator_unitarity),
    ("dilation.subsystem_fidelity", _check_subsystem_fidelity),
    ("dilation.efficiency_consistency", _check_efficiency_consistency),
    ("dilation.margin_invariance", _check_margin_invariance),
)

INVARIANT_NAMES = tuple(name for name, _ in CHECKS)


def run_all(seed: int = 1234, trials: int = 10000,
            corrupt: str | None = None) -> list:
    """Run every property suite; returns a list of InvariantResult.

    ``corrupt`` names one invariant whose tolerance is made impossible (a
    self-test hook proving the harness actually fails on violations).
    """
    if trials < 1:
        raise InvalidParameterError("trials must be at least 1")
    if corrupt is not None and corrupt not in INVARIANT_NAMES:
        raise InvalidParameterError(f"unknown invariant {corrupt!r}")
    results = []
    for idx, (name, fn) in enumerate(CHECKS):
        rng = np.random.default_rng(seed + 7919 * idx)
        worst, tol, detail = fn(rng, trials)
        if corrupt == name:
            tol = -abs(tol) - 1.0
            detail += " [tolerance corrupted by self-test hook]"
        violation = worst.violation if worst.violation > -math.inf else 0.0
        results.append(InvariantResult(
            name=name,
            passed=violation <= tol,
            margin=float(tol - violation),
            worst_input=worst.input,
            detail=detail,
        ))
    return results
