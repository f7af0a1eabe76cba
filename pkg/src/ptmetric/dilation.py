"""Hermitian dilation of the two-level dynamics with verified subsystem evolution.

A positive metric rescaled so that ``eta = I + tau^2`` (Hermitian tau > 0)
embeds the non-Hermitian flow ``i psi' = H psi`` into the four-level Hermitian

    H_hat = [[H1, H2], [H2^H, H4]],

acting on states ``(psi, tau psi)``.  The block constraints are
``H1 + H2 tau = H`` and ``H2^H + H4 tau = tau H``; with the free Hermitian
block fixed to ``H1 = (H + H^H)/2`` they resolve to

    H2 = (H - H^H) tau^{-1} / 2,
    H4 = tau H tau^{-1} - tau^{-1} H^H tau^{-1} + tau^{-1} H1 tau^{-1},

and the Hermiticity of H4 is algebraically equivalent to the intertwining
relation ``H^H eta = eta H``.
"""

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    as_matrix2,
    dagger,
    hermitian_inv,
    hermitian_sqrt,
    hermitize,
    max_abs,
)
from .errors import (
    IntertwiningViolationError,
    InvalidParameterError,
    NotPositiveError,
)
from .metric import Definiteness, HermitianMetric

#: residual budget for the dilation block constraints
DILATION_TOL = 1e-10


@dataclass(frozen=True)
class DilationBundle:
    """Embedded Hamiltonian, rescaled metric, tau, blocks and the 4x4 H_hat."""

    h: np.ndarray
    eta: HermitianMetric
    tau: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    h4: np.ndarray
    h_hat: np.ndarray


@dataclass(frozen=True)
class EvolutionTrace:
    """Sampled dilated evolution next to the direct non-unitary reference.

    ``dilated_substate`` is the upper block of ``exp(-i H_hat t) (psi0, tau
    psi0)``, ``dilated_complement`` the lower block, and ``deviation`` the
    maximum over samples of the 2-norm gap between the upper block and the
    reference ``exp(-i H t) psi0``.
    """

    times: np.ndarray
    dilated_substate: np.ndarray
    dilated_complement: np.ndarray
    reference_state: np.ndarray
    deviation: float


def tau_from_metric(eta: HermitianMetric, margin: float = 1.0):
    """Rescale eta so its smallest eigenvalue is ``1 + margin`` and split off tau.

    Rescaling preserves the intertwining relation by linearity; the margin
    keeps ``tau = sqrt(eta - I)`` invertible with smallest eigenvalue
    ``sqrt(margin)``.  Returns ``(rescaled_metric, tau)``.

    Raises NotPositiveError for non-positive input: a broken-phase metric has
    a negative eigenvalue and admits no static dilation.
    """
    if eta.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise NotPositiveError(
            f"dilation needs a positive-definite metric, got {eta.definiteness.value}")
    if not margin > 0:
        raise InvalidParameterError("margin must be positive")
    scaled = HermitianMetric.from_matrix(
        eta.matrix * ((1.0 + float(margin)) / eta.eig_min))
    tau = hermitize(hermitian_sqrt(scaled.matrix - np.eye(2)))
    return scaled, tau


def _h4_block(h, h1, tau, tau_inv):
    return (tau @ h @ tau_inv
            - tau_inv @ dagger(h) @ tau_inv
            + tau_inv @ h1 @ tau_inv)


def assemble_dilated(h, eta: HermitianMetric, tau, h1=None,
                     tol: float = DILATION_TOL) -> DilationBundle:
    """Assemble the 4x4 Hermitian dilation of ``h`` from (eta, tau).

    ``eta`` must intertwine with ``h`` and satisfy ``I + tau^2 = eta`` with
    invertible Hermitian ``tau``.  Any Hermitian ``h1`` is admissible; the
    default ``(h + h^H)/2`` makes ``h2`` vanish when ``h`` is already
    Hermitian.
    """
    arr = as_matrix2(h, "h")
    tau = hermitize(tau, name="tau")
    em = eta.matrix
    resid = max_abs(dagger(arr) @ em - em @ arr)
    if resid > tol * max(1.0, max_abs(arr) * max(1.0, max_abs(em))):
        raise IntertwiningViolationError(
            f"eta is not a metric for h: intertwining residual {resid:.3e}")
    if max_abs(np.eye(2) + tau @ tau - em) > tol * max(1.0, max_abs(em)):
        raise InvalidParameterError("tau does not satisfy I + tau^2 = eta")
    w = np.linalg.eigvalsh(tau)
    if float(w[0]) <= tol:
        raise InvalidParameterError(
            "tau must be invertible; rescale the metric with a positive margin")
    tau_inv = hermitian_inv(tau)
    if h1 is None:
        h1 = 0.5 * (arr + dagger(arr))
    else:
        h1 = hermitize(h1, name="h1")
    h2 = 0.5 * (arr - dagger(arr)) @ tau_inv
    h4 = _h4_block(arr, h1, tau, tau_inv)
    h_hat = np.block([[h1, h2], [dagger(h2), h4]])
    return DilationBundle(arr, eta, tau, h1, h2, h4, h_hat)


def dilated_propagator(h_hat: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H_hat t) through the spectral decomposition of Hermitian H_hat."""
    w, v = np.linalg.eigh(h_hat)
    return (v * np.exp(-1j * w * t)) @ dagger(v)


def reference_states(h, times, psi0, jordan_tol: float = 1e-8) -> np.ndarray:
    """exp(-i H t) psi0 sampled over ``times`` for the two-level model.

    Uses the eigendecomposition when the eigenbasis is well conditioned and
    the explicit nilpotent expansion
    ``exp(-i H t) = e^{-i e0 t} (I - i t (H - e0 I))`` at the exceptional
    point, where ``(H - e0 I)^2 = 0``.
    """
    arr = as_matrix2(h, "h")
    psi0 = np.asarray(psi0, dtype=complex).reshape(2)
    times = np.asarray(times, dtype=float)
    w, vec = np.linalg.eig(arr)
    if np.linalg.cond(vec) < 1e8:
        coeff = np.linalg.solve(vec, psi0)
        phases = np.exp(-1j * np.outer(times, w))
        return (phases * coeff) @ vec.T
    e0 = 0.5 * np.trace(arr)
    nilp = arr - e0 * np.eye(2)
    if max_abs(nilp @ nilp) > jordan_tol * max(1.0, max_abs(nilp)) ** 2:
        raise ArithmeticError(
            "Hamiltonian is neither diagonalizable nor a single Jordan block "
            "at this tolerance")
    base = np.exp(-1j * e0 * times)
    npsi = nilp @ psi0
    return base[:, None] * (psi0[None, :] - 1j * times[:, None] * npsi[None, :])


def evolve_and_compare(bundle: DilationBundle, psi0, t_max: float,
                       steps: int) -> EvolutionTrace:
    """Propagate the dilated state and compare its upper block with the reference.

    The dilated state ``(psi0, tau psi0)`` evolves under ``exp(-i H_hat t)``
    computed spectrally; the reference evolves directly under ``h``.
    """
    psi0 = np.asarray(psi0, dtype=complex).reshape(2)
    if not np.all(np.isfinite(psi0)) or float(np.linalg.norm(psi0)) == 0.0:
        raise InvalidParameterError("psi0 must be a nonzero finite 2-vector")
    steps = int(steps)
    if steps < 2:
        raise InvalidParameterError("steps must be at least 2")
    times = np.linspace(0.0, float(t_max), steps)
    w, v = np.linalg.eigh(bundle.h_hat)
    phi0 = np.concatenate([psi0, bundle.tau @ psi0])
    coeff = dagger(v) @ phi0
    phi = (np.exp(-1j * np.outer(times, w)) * coeff) @ v.T
    upper = phi[:, :2]
    lower = phi[:, 2:]
    ref = reference_states(bundle.h, times, psi0)
    deviation = float(np.max(np.linalg.norm(upper - ref, axis=1)))
    return EvolutionTrace(times, upper, lower, ref, deviation)


def min_transition_probability(eta: HermitianMetric, samples: int = 10000,
                               seed: int = 1234) -> float:
    """Sampled minimum of |<psi|psi> / <psi|eta|psi>| over unit vectors.

    The top eigenvector of eta is always included among the candidates, so
    the returned value equals ``1 / lambda_max`` regardless of sampling luck.
    """
    if eta.definiteness is not Definiteness.POSITIVE_DEFINITE:
        raise NotPositiveError(
            f"transition probabilities need a positive-definite metric, got "
            f"{eta.definiteness.value}")
    samples = int(samples)
    if samples < 100:
        raise InvalidParameterError("samples must be at least 100")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((samples, 2)) + 1j * rng.standard_normal((samples, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    _, v = np.linalg.eigh(eta.matrix)
    vecs = np.vstack([z, v[:, -1]])
    quad = np.einsum("ij,jk,ik->i", vecs.conj(), eta.matrix, vecs).real
    norms = np.einsum("ij,ij->i", vecs.conj(), vecs).real
    return float(np.min(np.abs(norms / quad)))
