"""Similarity frames H = Psi Lambda Psi^{-1} and congruence reductions of eta.

The two-angle frame pairs the "+" eigenvector at ``theta`` with the "-"
eigenvector at an independent angle ``theta_prime``:

    Psi(theta, theta') = [psi_plus(theta), psi_minus(theta')],

which stays invertible while ``cos((theta + theta')/2)`` is away from zero and
reduces H to the upper-triangular

    Lambda = [[b1, c*i], [0, b2]],
    b1 = e0 + s cos(theta),  b2 = e0 - s cos(theta),
    c = 2 s sin((theta - theta')/2).

Any Hermitian D with ``Lambda^H D = D Lambda`` then yields a metric through
``eta = (Psi^{-1})^H D Psi^{-1}``.  Away from the exceptional points the
constraint pins ``d12 = i d11 sin((theta - theta')/2) / cos(theta)``; at the
exceptional points it forces ``d11 = 0`` with imaginary ``d12``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._linalg import dagger, max_abs, reduce_angle
from .errors import (
    ExceptionalPointError,
    FrameSingularError,
    InvalidParameterError,
    NotExceptionalError,
    PatternMismatchError,
)
from .metric import HermitianMetric, MetricFamilyParams, family_metric
from .model import DEFAULT_EP_TOL, PtParams, build_hamiltonian

#: frames with |cos((theta + theta')/2)| at or below this are rejected
FRAME_SINGULAR_TOL = 1e-8

#: residual budget for the exact-identity checks (scaled by operand size)
RESID_TOL = 1e-10


@dataclass(frozen=True)
class TwoAngleFrame:
    """Frame data: angles, model parameters, Psi, its closed-form inverse, Lambda."""

    theta: float
    theta_prime: float
    e0: float
    s: float
    psi: np.ndarray
    psi_inv: np.ndarray
    lam: np.ndarray

    @property
    def b1(self) -> float:
        return float(self.lam[0, 0].real)

    @property
    def b2(self) -> float:
        return float(self.lam[1, 1].real)

    @property
    def c(self) -> float:
        # lam[0, 1] stores c*i with real c
        return float((self.lam[0, 1] / 1j).real)


@dataclass(frozen=True)
class CanonicalD:
    """Hermitian-by-construction congruence form: d21 is implied as conj(d12)."""

    d11: float
    d12: complex
    d22: float

    @property
    def matrix(self) -> np.ndarray:
        d12 = complex(self.d12)
        return np.array(
            [[self.d11, d12], [d12.conjugate(), self.d22]], dtype=complex)


@dataclass(frozen=True)
class JordanFrame:
    """Exceptional-point decomposition: H = Psi [[e0, 1], [0, e0]] Psi^{-1}, D = sigma_x."""

    theta: float
    e0: float
    s: float
    psi: np.ndarray
    psi_inv: np.ndarray
    lam: np.ndarray
    d: CanonicalD


@dataclass(frozen=True)
class EquivalenceReport:
    """Result of matching a reconstructed metric against the closed-form family.

    ``singular`` marks the degenerate case where the reconstruction has a
    vanishing diagonal and no family element (which needs ``eta11 != 0``) can
    represent it; ``a`` and ``residual`` are NaN there.
    """

    theta: float
    eta11: float
    a: float
    singular: bool
    residual: float
    eta: np.ndarray


def two_angle_frame(params: PtParams, theta_prime: float,
                    singular_tol: float = FRAME_SINGULAR_TOL) -> TwoAngleFrame:
    """Build Psi(theta, theta'), its closed-form inverse and Lambda(theta, theta').

    Raises FrameSingularError when ``|cos((theta + theta')/2)| <= singular_tol``
    (the frame columns coalesce and the inverse prefactor blows up).
    """
    th = params.theta
    tp = reduce_angle(float(theta_prime))
    denom = math.cos(0.5 * (th + tp))
    if abs(denom) <= singular_tol:
        raise FrameSingularError(
            f"|cos((theta + theta')/2)| = {abs(denom):.3e} <= {singular_tol:.3e}")
    isq = 1.0 / math.sqrt(2.0)
    eth = cmath.exp(0.5j * th)
    etp = cmath.exp(0.5j * tp)
    psi = isq * np.array(
        [[eth, etp.conjugate()], [eth.conjugate(), -etp]], dtype=complex)
    pref = 1.0 / (math.sqrt(2.0) * denom)
    psi_inv = pref * np.array(
        [[etp, etp.conjugate()], [eth.conjugate(), -eth]], dtype=complex)
    ct = math.cos(th)
    b1 = params.e0 + params.s * ct
    b2 = params.e0 - params.s * ct
    c = 2.0 * params.s * math.sin(0.5 * (th - tp))
    lam = np.array([[b1, c * 1j], [0.0, b2]], dtype=complex)
    frame = TwoAngleFrame(th, tp, params.e0, params.s, psi, psi_inv, lam)
    _check_frame(frame)
    return frame


def _check_frame(frame) -> None:
    ident = frame.psi @ frame.psi_inv - np.eye(2)
    tol_inv = RESID_TOL * max(1.0, max_abs(frame.psi_inv))
    if max_abs(ident) > tol_inv:
        raise ArithmeticError(
            f"closed-form inverse residual {max_abs(ident):.3e} exceeds {tol_inv:.3e}")
    h = build_hamiltonian(PtParams(frame.e0, frame.s, frame.theta))
    sim = h @ frame.psi - frame.psi @ frame.lam
    tol_sim = RESID_TOL * max(1.0, max_abs(h))
    if max_abs(sim) > tol_sim:
        raise ArithmeticError(
            f"similarity residual {max_abs(sim):.3e} exceeds {tol_sim:.3e}")


def _check_reduced(lam: np.ndarray, d: CanonicalD) -> None:
    dm = d.matrix
    resid = max_abs(dagger(lam) @ dm - dm @ lam)
    tol = RESID_TOL * max(1.0, max_abs(lam) * max(1.0, max_abs(dm)))
    if resid > tol:
        raise ArithmeticError(
            f"Lambda^H D = D Lambda residual {resid:.3e} exceeds {tol:.3e}")


def solve_canonical_d(frame: TwoAngleFrame, d11: float, d22: float,
                      ep_tol: float = DEFAULT_EP_TOL) -> CanonicalD:
    """Fill the off-diagonal of D from the generic-branch constraint.

    ``d12 = i * d11 * sin((theta - theta')/2) / cos(theta)``; the diagonal is
    free.  Raises ExceptionalPointError at ``|cos(theta)| <= ep_tol`` where
    the constraint instead forces ``d11 = 0`` (use ep_canonical_d).
    """
    ct = math.cos(frame.theta)
    if abs(ct) <= ep_tol:
        raise ExceptionalPointError(
            "the diagonal entry d11 must vanish at the exceptional point; "
            "use ep_canonical_d")
    d12 = 1j * float(d11) * math.sin(0.5 * (frame.theta - frame.theta_prime)) / ct
    d = CanonicalD(float(d11), d12, float(d22))
    _check_reduced(frame.lam, d)
    return d


def ep_canonical_d(frame: TwoAngleFrame, d12_imag: float, d22: float,
                   ep_tol: float = DEFAULT_EP_TOL) -> CanonicalD:
    """Exceptional-point branch: D = [[0, i*k], [-i*k, d22]] with k = d12_imag.

    ``d22`` is unconstrained; ``d12_imag = 0`` would make D singular and is
    rejected.
    """
    if abs(math.cos(frame.theta)) > ep_tol:
        raise NotExceptionalError(
            f"frame at theta = {frame.theta:.6g} is not at an exceptional point")
    if float(d12_imag) == 0.0:
        raise InvalidParameterError("d12_imag must be nonzero (D would be singular)")
    d = CanonicalD(0.0, 1j * float(d12_imag), float(d22))
    _check_reduced(frame.lam, d)
    return d


def reconstruct_metric(frame, d: CanonicalD) -> HermitianMetric:
    """eta = (Psi^{-1})^H D Psi^{-1}; verified to intertwine with H."""
    eta = dagger(frame.psi_inv) @ d.matrix @ frame.psi_inv
    metric = HermitianMetric.from_matrix(eta)
    h = build_hamiltonian(PtParams(frame.e0, frame.s, frame.theta))
    resid = max_abs(dagger(h) @ metric.matrix - metric.matrix @ h)
    tol = RESID_TOL * max(1.0, max_abs(h) * max(1.0, max_abs(metric.matrix)))
    if resid > tol:
        raise ArithmeticError(
            f"intertwining residual {resid:.3e} exceeds {tol:.3e}")
    return metric


def ep_jordan_frame(params: PtParams, ep_tol: float = DEFAULT_EP_TOL) -> JordanFrame:
    """Jordan decomposition at the exceptional point.

    Psi pairs the surviving eigenvector with the generalized eigenvector of
    ``(H - e0 I) v = psi_plus``; the least-squares solution is the unique
    representative orthogonal to the eigenvector, which pins the chain and
    keeps the frame well conditioned.  The associated congruence form is
    ``D = sigma_x``.
    """
    ct = math.cos(params.theta)
    if abs(ct) > ep_tol:
        raise NotExceptionalError(
            f"|cos(theta)| = {abs(ct):.3e} > {ep_tol:.3e}: not an exceptional point")
    h = build_hamiltonian(params)
    nilp = h - params.e0 * np.eye(2)
    half = 0.5 * params.theta
    isq = 1.0 / math.sqrt(2.0)
    psi_plus = np.array(
        [cmath.exp(1j * half) * isq, cmath.exp(-1j * half) * isq], dtype=complex)
    v, *_ = np.linalg.lstsq(nilp, psi_plus, rcond=None)
    v = v - np.vdot(psi_plus, v) * psi_plus
    psi = np.column_stack([psi_plus, v])
    psi_inv = np.linalg.inv(psi)
    lam = np.array([[params.e0, 1.0], [0.0, params.e0]], dtype=complex)
    d = CanonicalD(0.0, 1.0 + 0.0j, 0.0)
    resid = max_abs(psi @ lam @ psi_inv - h)
    tol = RESID_TOL * max(1.0, max_abs(h)) * max(1.0, max_abs(psi_inv))
    if resid > tol:
        raise ArithmeticError(
            f"Jordan reconstruction residual {resid:.3e} exceeds {tol:.3e}")
    _check_reduced(lam, d)
    return JordanFrame(params.theta, params.e0, params.s, psi, psi_inv, lam, d)


def _match_family_pattern(metric: HermitianMetric, theta: float,
                          tol: float) -> EquivalenceReport:
    """Extract (eta11, a) from a reconstructed metric and verify the family shape.

    The family has equal real diagonal entries and lower-left imaginary part
    ``eta11 * sin(theta)``; ``a`` is read off the real part of the lower-left
    entry, where the real/imaginary separation is exact.
    """
    eta = metric.matrix
    scale = max(1.0, max_abs(eta))
    budget = tol * scale
    if abs(eta[0, 0] - eta[1, 1]) > budget or abs(eta[0, 0].imag) > budget:
        raise PatternMismatchError(
            "reconstructed metric does not have equal real diagonal entries")
    eta11 = float(eta[0, 0].real)
    if abs(eta[1, 0].imag - eta11 * math.sin(theta)) > budget:
        raise PatternMismatchError(
            "lower-left imaginary part is not eta11 * sin(theta)")
    if abs(eta11) <= budget:
        return EquivalenceReport(theta, eta11, float("nan"), True, float("nan"), eta)
    a = float(eta[1, 0].real) / eta11
    fam = family_metric(theta, MetricFamilyParams(eta11, a))
    residual = max_abs(eta - fam.matrix)
    if residual > budget:
        raise PatternMismatchError(
            f"family element with (eta11, a) = ({eta11:.6g}, {a:.6g}) deviates "
            f"by {residual:.3e}")
    return EquivalenceReport(theta, eta11, a, False, float(residual), eta)


def equivalence_check(theta: float, d11: float, d22: float,
                      e0: float = 0.0, s: float = 1.0,
                      ep_tol: float = DEFAULT_EP_TOL,
                      tol: float = 1e-10) -> EquivalenceReport:
    """Reconstruct eta in the opposite-angle frame and match the family form.

    Uses ``theta' = theta - pi``; at ``sin(theta) = 0`` that frame is singular
    (its columns are parallel) and the eigenvector frame ``theta' = theta`` is
    used instead.  Equal diagonal entries ``d11 = d22`` in the opposite-angle
    frame produce a vanishing-diagonal reconstruction, reported as a singular
    match rather than an error.
    """
    params = PtParams(e0, s, theta)
    th = params.theta
    if abs(math.cos(th)) <= ep_tol:
        raise ExceptionalPointError(
            "generic equivalence needs |cos(theta)| > ep_tol; "
            "use ep_equivalence_check")
    try:
        frame = two_angle_frame(params, th - math.pi)
    except FrameSingularError:
        frame = two_angle_frame(params, th)
    d = solve_canonical_d(frame, d11, d22)
    metric = reconstruct_metric(frame, d)
    return _match_family_pattern(metric, th, tol)


def ep_equivalence_check(d12_imag: float, d22: float, branch: int = 1,
                         e0: float = 0.0, s: float = 1.0,
                         tol: float = 1e-10) -> EquivalenceReport:
    """Exceptional-point analogue of equivalence_check.

    ``branch`` selects theta = +pi/2 (branch=+1, frame angle pair
    (pi/2, -pi/2)) or theta = -pi/2 (branch=-1).
    """
    if branch not in (1, -1):
        raise InvalidParameterError("branch must be +1 or -1")
    th = branch * 0.5 * math.pi
    params = PtParams(e0, s, th)
    frame = two_angle_frame(params, -th)
    d = ep_canonical_d(frame, d12_imag, d22)
    metric = reconstruct_metric(frame, d)
    return _match_family_pattern(metric, params.theta, tol)
