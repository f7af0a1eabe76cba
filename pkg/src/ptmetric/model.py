"""The two-level model: Hamiltonian construction, exact eigensystem, phase class.

The family is ``H(theta) = e0*I + s*[[i sin(theta), 1], [1, -i sin(theta)]]``
with real ``e0``, nonzero real ``s`` and an angle ``theta``.  It commutes with
the combined parity/conjugation symmetry for every parameter choice, its
eigenvalues are ``e0 +- s cos(theta)``, and the two eigenvectors coalesce at
``theta = +-pi/2`` where only a Jordan form exists.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._linalg import PAULI_X, as_matrix2, max_abs, reduce_angle
from .errors import ExceptionalPointError, InvalidParameterError

#: default half-width of the exceptional band on |cos(theta)|
DEFAULT_EP_TOL = 1e-9

#: per-entry tolerance for the symmetry check
PT_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class PtParams:
    """Model parameters: energy offset, coupling strength, angle.

    ``theta`` is reduced to ``(-pi, pi]`` at construction so the exceptional
    set is exactly ``{-pi/2, +pi/2}``.  ``s = 0`` is rejected: it collapses
    the family to a multiple of the identity and every downstream closed form
    divides by an ``s``-dependent quantity.
    """

    e0: float
    s: float
    theta: float

    def __post_init__(self):
        for name in ("e0", "s", "theta"):
            v = getattr(self, name)
            try:
                fv = float(v)
            except (TypeError, ValueError):
                raise InvalidParameterError(
                    f"{name} must be a finite real number, got {v!r}") from None
            if not math.isfinite(fv):
                raise InvalidParameterError(
                    f"{name} must be a finite real number, got {v!r}")
            object.__setattr__(self, name, fv)
        if self.s == 0.0:
            raise InvalidParameterError("s must be nonzero")
        object.__setattr__(self, "theta", reduce_angle(self.theta))


class Phase(Enum):
    UNBROKEN = "Unbroken"
    EXCEPTIONAL_POINT = "ExceptionalPoint"


@dataclass(frozen=True)
class PhaseClass:
    """Phase label together with the tolerance that produced it."""

    phase: Phase
    ep_tol: float


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form eigenpairs with unit-norm vectors in a fixed phase gauge."""

    lambda_plus: complex
    lambda_minus: complex
    psi_plus: np.ndarray
    psi_minus: np.ndarray


def build_hamiltonian(params: PtParams) -> np.ndarray:
    """Assemble H = e0*I + s*[[i sin(theta), 1], [1, -i sin(theta)]]."""
    st = math.sin(params.theta)
    return np.array(
        [[params.e0 + 1j * params.s * st, params.s],
         [params.s, params.e0 - 1j * params.s * st]],
        dtype=complex,
    )


def check_pt_symmetry(h, tol: float = PT_SYMMETRY_TOL) -> bool:
    """True iff ``H @ P == P @ conj(H)`` entrywise within tol, P the parity flip."""
    arr = as_matrix2(h, "h")
    return max_abs(arr @ PAULI_X - PAULI_X @ arr.conj()) <= tol


def eigensystem(params: PtParams, ep_tol: float = DEFAULT_EP_TOL) -> EigenSystem:
    """Exact eigenvalues and eigenvectors away from the exceptional points.

    Returns eigenvalues ``e0 +- s cos(theta)`` and the half-angle-gauge
    eigenvectors ``(e^{i theta/2}, e^{-i theta/2})/sqrt(2)`` and
    ``(e^{-i theta/2}, -e^{i theta/2})/sqrt(2)``.  Each pair is verified to
    satisfy ``H psi = lambda psi``; the residual tolerance scales with the
    Hamiltonian magnitude above unit size.

    Raises
    ------
    ExceptionalPointError
        If ``|cos(theta)| <= ep_tol``: the eigenvectors coalesce and the
        caller must switch to the Jordan decomposition.
    """
    ct = math.cos(params.theta)
    if abs(ct) <= ep_tol:
        raise ExceptionalPointError(
            f"eigenvectors coalesce: |cos(theta)| = {abs(ct):.3e} <= {ep_tol:.3e}")
    half = 0.5 * params.theta
    ep_ = cmath.exp(1j * half)
    em = cmath.exp(-1j * half)
    isq = 1.0 / math.sqrt(2.0)
    psi_plus = np.array([ep_ * isq, em * isq], dtype=complex)
    psi_minus = np.array([em * isq, -ep_ * isq], dtype=complex)
    lam_plus = complex(params.e0 + params.s * ct)
    lam_minus = complex(params.e0 - params.s * ct)

    h = build_hamiltonian(params)
    tol = 1e-12 * max(1.0, max_abs(h))
    for lam, psi in ((lam_plus, psi_plus), (lam_minus, psi_minus)):
        resid = float(np.max(np.abs(h @ psi - lam * psi)))
        if resid > tol:
            raise ArithmeticError(
                f"closed-form eigenpair residual {resid:.3e} exceeds {tol:.3e}")
    return EigenSystem(lam_plus, lam_minus, psi_plus, psi_minus)


def classify_phase(params: PtParams, ep_tol: float = DEFAULT_EP_TOL) -> PhaseClass:
    """Exceptional point iff ``|cos(theta)| <= ep_tol``, else unbroken.

    Real theta never produces complex eigenvalues in this family, so the
    broken set consists exactly of the exceptional points.
    """
    if not ep_tol > 0:
        raise InvalidParameterError("ep_tol must be positive")
    ct = math.cos(params.theta)
    phase = Phase.EXCEPTIONAL_POINT if abs(ct) <= ep_tol else Phase.UNBROKEN
    return PhaseClass(phase, float(ep_tol))
