"""Quantitative distance between unbroken- and broken-phase metric structure.

Two measures are implemented.  The first is the entrywise l1 distance between
an unbroken-phase family metric and a reference solution at the exceptional
point, together with its parameter-free lower bound
``2 * eta11 * (1 - sin(theta))`` and the reciprocal-eigenvalue weight
``p_minus``.  The second is built from ratios of canonical-form entries,
``delta2 = |d11/d12| + ||d22/d12| - delta_ref|``.

Eigenvalue conventions
----------------------
Every stored eigenvalue in this package is the numeric spectrum of the actual
matrix.  The product floors, however, are exact only in the *half-spectrum*
normalization ``lambda/2``: with ``p_minus = 2 / lambda_min`` the bound
product equals ``|4 (1 - sin(theta)) / (1 - sqrt(a^2 + sin^2(theta)))| >= 4``
identically, with equality at ``theta = 0, a = 0``.  Reports therefore carry
both ``p_minus`` (half-spectrum, used by the floors) and ``p_minus_numeric``
(literal reciprocal of the smaller eigenvalue), and the efficiency relation
gates on the half-spectrum condition ``lambda_min / 2 >= 1``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import as_matrix2, one_minus_sin, reduce_angle
from .canonical import CanonicalD
from .errors import (
    ConditionNotMetError,
    DegenerateAngleError,
    DivisionByZeroError,
    ExceptionalPointError,
    NotInvertibleError,
    NotPositiveError,
)
from .metric import (
    Definiteness,
    HermitianMetric,
    MetricFamilyParams,
    family_eigenvalues,
    family_metric,
)
from .model import DEFAULT_EP_TOL


@dataclass(frozen=True)
class Delta1Report:
    """l1 distance to an exceptional-point reference, with its floor data.

    ``product = delta1_exact * p_minus`` and
    ``product_bound = delta1_lower_bound * p_minus`` both sit at or above 4
    for admissible inputs; ``product_bound`` attains 4 exactly at
    ``theta = 0, a = 0``.
    """

    theta: float
    delta1_exact: float
    delta1_lower_bound: float
    p_minus: float
    p_minus_numeric: float
    product: float
    product_bound: float


@dataclass(frozen=True)
class Delta2Report:
    """Canonical-coordinate measure delta2 = ratio11 + |ratio22 - delta_ref|."""

    ratio11: float
    ratio22: float
    delta_ref: float
    delta2: float


@dataclass(frozen=True)
class EfficiencyReport:
    """Floor data for delta1_bound / efficiency.

    ``e_d = 1 / lambda_plus`` is the minimal transition probability of the
    dilation built on this metric.  ``ratio`` is the bound-to-efficiency
    quotient in the half-spectrum normalization (``delta1_bound *
    lambda_plus / 2``) and ``chain`` is the intermediate value
    ``lambda_plus * lambda_minus``; both are >= 4 whenever the gate
    ``lambda_minus / 2 >= 1`` holds.
    """

    theta: float
    lambda_minus: float
    lambda_plus: float
    e_d: float
    delta1_bound: float
    ratio: float
    chain: float


def l1_norm(m) -> float:
    """Sum of entrywise complex moduli."""
    return float(np.sum(np.abs(as_matrix2(m, "m"))))


def delta1(theta: float, unbroken: MetricFamilyParams, ep: MetricFamilyParams,
           ep_tol: float = DEFAULT_EP_TOL) -> Delta1Report:
    """l1 distance between the unbroken metric at theta and an EP reference.

    The unbroken family element must be positive definite; the reference at
    theta = pi/2 must be invertible, which requires ``ep.a != 0``.  The lower
    bound ``2 * eta11 * (1 - sin(theta))`` is independent of the reference
    choice.
    """
    th = reduce_angle(float(theta))
    if abs(math.cos(th)) <= ep_tol:
        raise ExceptionalPointError(
            "delta1 compares an unbroken metric against the exceptional point; "
            f"theta = {th:.6g} is itself exceptional")
    metric = family_metric(th, unbroken)
    if metric.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise NotPositiveError(
            f"family metric at theta = {th:.6g} is {metric.definiteness.value}; "
            "need eta11 > 0 and a^2 + sin^2(theta) < 1")
    if ep.a == 0.0:
        raise NotInvertibleError(
            "the reference solution at the exceptional point is singular for a = 0")
    ep_metric = family_metric(0.5 * math.pi, ep)
    exact = l1_norm(metric.matrix - ep_metric.matrix)
    bound = 2.0 * unbroken.eta11 * one_minus_sin(th)
    lam_lo, _ = family_eigenvalues(th, unbroken)
    p_pinned = 2.0 / lam_lo
    p_numeric = 1.0 / metric.eig_min
    return Delta1Report(
        theta=th,
        delta1_exact=exact,
        delta1_lower_bound=bound,
        p_minus=p_pinned,
        p_minus_numeric=p_numeric,
        product=exact * p_pinned,
        product_bound=bound * p_pinned,
    )


def dilation_efficiency(eta: HermitianMetric) -> float:
    """Minimal transition probability 1 / lambda_max of a positive metric."""
    if eta.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise NotPositiveError(
            f"dilation efficiency needs a positive-definite metric, got "
            f"{eta.definiteness.value}")
    return 1.0 / eta.eig_max


def efficiency_relation(theta: float, params: MetricFamilyParams,
                        ep_tol: float = DEFAULT_EP_TOL,
                        gate_tol: float = 1e-12) -> EfficiencyReport:
    """Relate the delta1 lower bound to the dilation efficiency.

    Gates on the half-spectrum condition ``lambda_min / 2 >= 1`` (numeric
    ``lambda_min >= 2``), under which ``ratio >= chain >= 4`` holds
    identically; see the module docstring for the convention.
    """
    th = reduce_angle(float(theta))
    metric = family_metric(th, params)
    if metric.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise NotPositiveError(
            f"family metric at theta = {th:.6g} is {metric.definiteness.value}")
    lam_lo, lam_hi = family_eigenvalues(th, params)
    pinned_lo = 0.5 * lam_lo
    pinned_hi = 0.5 * lam_hi
    if pinned_lo < 1.0 - gate_tol:
        raise ConditionNotMetError(
            f"half-spectrum lower eigenvalue {pinned_lo:.6g} < 1 "
            f"(numeric lambda_min = {lam_lo:.6g} < 2): the floor-4 relation "
            "is not guaranteed")
    bound = 2.0 * params.eta11 * one_minus_sin(th)
    return EfficiencyReport(
        theta=th,
        lambda_minus=metric.eig_min,
        lambda_plus=metric.eig_max,
        e_d=1.0 / metric.eig_max,
        delta1_bound=bound,
        ratio=bound * pinned_hi,
        chain=4.0 * pinned_hi * pinned_lo,
    )


def delta2(d: CanonicalD, delta_ref: float = 0.0) -> Delta2Report:
    """Canonical-coordinate measure from the entry ratios of D.

    ``delta_ref`` is the caller's reference value for ``|d22/d12|`` at the
    exceptional point; the default 0 is the canonical-form case.
    """
    mag = abs(complex(d.d12))
    if mag == 0.0:
        raise DivisionByZeroError("d12 = 0: the canonical ratios are undefined")
    ratio11 = abs(d.d11) / mag
    ratio22 = abs(d.d22) / mag
    return Delta2Report(
        ratio11=ratio11,
        ratio22=ratio22,
        delta_ref=float(delta_ref),
        delta2=ratio11 + abs(ratio22 - float(delta_ref)),
    )


def delta2_lower_bound(theta: float, theta_prime: float,
                       ep_tol: float = DEFAULT_EP_TOL) -> float:
    """x + 1/x with x = |cos(theta) / sin((theta - theta')/2)|; always >= 2."""
    th = reduce_angle(float(theta))
    tp = reduce_angle(float(theta_prime))
    ct = math.cos(th)
    if abs(ct) <= ep_tol:
        raise ExceptionalPointError(
            f"|cos(theta)| = {abs(ct):.3e} <= {ep_tol:.3e}")
    sh = math.sin(0.5 * (th - tp))
    if sh == 0.0:
        raise DegenerateAngleError(
            "theta' = theta: the off-diagonal ratio is undefined")
    x = abs(ct / sh)
    return x + 1.0 / x
