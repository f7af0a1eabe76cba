"""Metric operators: the intertwining null space and the closed-form family.

A metric operator for ``H`` is an invertible Hermitian ``eta`` with
``H^dag eta = eta H``.  For the two-level model the full Hermitian solution
set is two-dimensional and is swept out by

    eta = eta11 * [[1, a - i sin(theta)], [a + i sin(theta), 1]],

with real ``eta11`` and ``a``.  The spectrum of that matrix is
``eta11 * (1 +- sqrt(a^2 + sin^2 theta))``; the numeric eigensolver is the
ground truth for every stored eigenvalue and definiteness label.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._linalg import (
    as_matrix2,
    dagger,
    golden_section_max,
    hermitian_basis,
    hermitize,
    real_vec8,
    reduce_angle,
)
from .errors import InvalidParameterError

#: relative eigenvalue threshold separating "zero" from "signed"
DEFINITENESS_RTOL = 1e-10

#: Hermiticity deviation absorbed by symmetrization
HERMITICITY_TOL = 1e-12


class Definiteness(Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE = "Indefinite"
    SINGULAR = "Singular"


def _classify(eig_min: float, eig_max: float, tol: float | None) -> Definiteness:
    if tol is None:
        tol = DEFINITENESS_RTOL * max(abs(eig_min), abs(eig_max))
    if eig_min > tol:
        return Definiteness.POSITIVE_DEFINITE
    if eig_max < -tol:
        return Definiteness.NEGATIVE_DEFINITE
    if min(abs(eig_min), abs(eig_max)) <= tol:
        return Definiteness.SINGULAR
    return Definiteness.INDEFINITE


@dataclass(frozen=True)
class HermitianMetric:
    """A Hermitian 2x2 matrix with its spectrum and definiteness label."""

    matrix: np.ndarray
    eig_min: float
    eig_max: float
    definiteness: Definiteness

    @classmethod
    def from_matrix(cls, m, tol: float | None = None) -> "HermitianMetric":
        sym = hermitize(m, HERMITICITY_TOL, "metric")
        w = np.linalg.eigvalsh(sym)
        eig_min, eig_max = float(w[0]), float(w[-1])
        return cls(sym, eig_min, eig_max, _classify(eig_min, eig_max, tol))


@dataclass(frozen=True)
class MetricFamilyParams:
    """Scale and real off-diagonal parameter of the closed-form family."""

    eta11: float
    a: float

    def __post_init__(self):
        for name in ("eta11", "a"):
            try:
                v = float(getattr(self, name))
            except (TypeError, ValueError):
                raise InvalidParameterError(f"{name} must be a real number") from None
            if not math.isfinite(v):
                raise InvalidParameterError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.eta11 == 0.0:
            raise InvalidParameterError("eta11 must be nonzero")


@dataclass(frozen=True)
class MetricSolutionSpace:
    """Real-linear basis of Hermitian solutions of the intertwining relation.

    The basis is orthonormal under the real Frobenius inner product
    ``Re tr(A^H B)``; ``dimension`` is the numeric rank deficiency of the
    vectorized intertwining map.
    """

    basis: tuple
    dimension: int
    singular_values: np.ndarray


def solve_intertwining_space(h, rank_tol: float = 1e-10) -> MetricSolutionSpace:
    """Null space of ``X -> H^dag X - X H`` over Hermitian ``X``.

    Hermitian ``X`` is parametrized by 4 real coordinates, the map lands in 8
    real coordinates, and the null space is read off the SVD of the resulting
    real 8x4 matrix with threshold ``rank_tol`` relative to the largest
    singular value.
    """
    arr = as_matrix2(h, "h")
    if not rank_tol > 0:
        raise InvalidParameterError("rank_tol must be positive")
    hd = dagger(arr)
    basis = hermitian_basis()
    a = np.stack([real_vec8(hd @ b - b @ arr) for b in basis], axis=1)
    _, s, vt = np.linalg.svd(a)
    smax = float(s[0])
    thresh = rank_tol * smax
    mats = []
    for i in range(4):
        if float(s[i]) <= thresh:
            mats.append(sum(c * b for c, b in zip(vt[i], basis)))
    return MetricSolutionSpace(tuple(mats), len(mats), s.copy())


def family_metric(theta: float, params: MetricFamilyParams) -> HermitianMetric:
    """Closed-form solution eta11 * [[1, a - i sin(theta)], [a + i sin(theta), 1]]."""
    th = reduce_angle(float(theta))
    off = params.eta11 * complex(params.a, -math.sin(th))
    m = np.array(
        [[params.eta11, off], [off.conjugate(), params.eta11]], dtype=complex)
    return HermitianMetric.from_matrix(m)


def family_gap(theta: float, a: float) -> float:
    """``1 - sqrt(a^2 + sin^2(theta))`` without cancellation.

    Evaluated as ``(cos(theta) - a)(cos(theta) + a) / (1 + r)`` so the value
    stays accurate when ``a^2 + sin^2(theta)`` approaches 1.
    """
    th = reduce_angle(float(theta))
    ct = math.cos(th)
    r = math.hypot(float(a), math.sin(th))
    return (ct - a) * (ct + a) / (1.0 + r)


def family_eigenvalues(theta: float, params: MetricFamilyParams):
    """Closed-form spectrum ``eta11 * (1 -+ r)``, ``r = hypot(a, sin(theta))``.

    The small eigenvalue uses the cancellation-free gap from family_gap.
    Returns ``(lo, hi)`` sorted.
    """
    th = reduce_angle(float(theta))
    r = math.hypot(params.a, math.sin(th))
    lo = params.eta11 * family_gap(th, params.a)
    hi = params.eta11 * (1.0 + r)
    return (lo, hi) if lo <= hi else (hi, lo)


def classify_definiteness(m, tol: float | None = None) -> Definiteness:
    """Classify a Hermitian matrix by the signs of its numeric spectrum.

    ``tol`` defaults to ``1e-10`` times the spectral radius.  Raises
    NotHermitianError if the input deviates from Hermiticity beyond 1e-12.
    """
    sym = hermitize(m, HERMITICITY_TOL, "matrix")
    w = np.linalg.eigvalsh(sym)
    return _classify(float(w[0]), float(w[-1]), tol)


def find_positive_metric(space: MetricSolutionSpace, tol: float = 1e-10):
    """Positive-definite element of the solution space, or None.

    Maximizes the smallest eigenvalue over the unit sphere of basis
    coefficients: a dense 1-degree-equivalent grid followed by golden-section
    refinement along the best great circle.  Returns None when the maximum
    does not exceed ``tol``.
    """
    dim = space.dimension
    if dim == 0:
        return None
    basis = space.basis

    def eig_min_of(coeffs):
        m = sum(c * b for c, b in zip(coeffs, basis))
        return float(np.linalg.eigvalsh(m)[0])

    if dim == 1:
        coeffs = np.array([1.0])
        val = eig_min_of(coeffs)
        other = eig_min_of(-coeffs)
        if other > val:
            coeffs, val = -coeffs, other
    elif dim == 2:
        step = math.tau / 360.0
        angles = np.arange(360) * step
        vals = [eig_min_of((math.cos(t), math.sin(t))) for t in angles]
        k = int(np.argmax(vals))

        def on_circle(t):
            return eig_min_of((math.cos(t), math.sin(t)))

        t_best, val = golden_section_max(on_circle, angles[k] - step, angles[k] + step)
        coeffs = np.array([math.cos(t_best), math.sin(t_best)])
    else:
        # quasi-uniform directions at comparable density, then golden-section
        # passes along great circles toward the strongest runners-up
        rng = np.random.default_rng(20240229)
        pts = rng.standard_normal((40000, dim))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        vals = np.array([eig_min_of(p) for p in pts])
        order = np.argsort(vals)[::-1]
        coeffs, val = pts[order[0]], float(vals[order[0]])
        for j in order[1:6]:
            v = pts[j] - np.dot(pts[j], coeffs) * coeffs
            norm = np.linalg.norm(v)
            if norm < 1e-12:
                continue
            v /= norm

            def on_circle(t, u=coeffs.copy(), w=v):
                return eig_min_of(math.cos(t) * u + math.sin(t) * w)

            t_best, cand = golden_section_max(on_circle, -0.5, 0.5)
            if cand > val:
                val = cand
                coeffs = math.cos(t_best) * coeffs + math.sin(t_best) * v
    if val <= tol:
        return None
    m = sum(c * b for c, b in zip(coeffs, basis))
    return HermitianMetric.from_matrix(m)
