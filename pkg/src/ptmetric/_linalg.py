"""Small dense-matrix helpers shared across modules (2x2 complex kernels)."""

import math

import numpy as np

from .errors import InvalidParameterError, NotHermitianError

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def reduce_angle(theta: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    if not math.isfinite(theta):
        raise InvalidParameterError(f"angle must be finite, got {theta!r}")
    r = math.remainder(theta, math.tau)
    if r <= -math.pi:
        r += math.tau
    return r


def one_minus_sin(theta: float) -> float:
    """1 - sin(theta), cancellation-free near theta = pi/2."""
    return 2.0 * math.sin(0.25 * math.pi - 0.5 * theta) ** 2


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def max_abs(m) -> float:
    return float(np.max(np.abs(m)))


def as_matrix2(m, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise InvalidParameterError(f"{name} must be 2x2, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} must have finite entries")
    return arr


def hermitize(m, tol: float = 1e-12, name: str = "matrix") -> np.ndarray:
    """Symmetrize (m + m^H)/2; reject deviations beyond tol.

    The tolerance scales with the matrix magnitude above unit norm so that
    rounding on large entries is absorbed without masking genuine errors.
    """
    arr = as_matrix2(m, name)
    dev = max_abs(arr - dagger(arr))
    if dev > tol * max(1.0, max_abs(arr)):
        raise NotHermitianError(f"{name} deviates from Hermiticity by {dev:.3e}")
    return 0.5 * (arr + dagger(arr))


def hermitian_basis() -> tuple:
    """Orthonormal basis of 2x2 Hermitian matrices under Re tr(A^H B)."""
    isq = 1.0 / math.sqrt(2.0)
    return (
        np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
        np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex),
        np.array([[0.0, isq], [isq, 0.0]], dtype=complex),
        np.array([[0.0, -1j * isq], [1j * isq, 0.0]], dtype=complex),
    )


def frob_inner_real(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.trace(dagger(a) @ b)))


def real_vec8(m: np.ndarray) -> np.ndarray:
    # flatten a 2x2 complex matrix into 8 real coordinates
    flat = np.asarray(m, dtype=complex).reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def hermitian_sqrt(m: np.ndarray) -> np.ndarray:
    # principal square root of a Hermitian PSD matrix via its spectrum
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)


def hermitian_inv(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * (1.0 / w)) @ dagger(v)


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-12,
                       max_iter: int = 200):
    """Maximize a unimodal callable on [lo, hi]; returns (x, f(x))."""
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)
