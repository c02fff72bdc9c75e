"""Dense complex linear algebra used by every other module."""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from ..exceptions import DimensionError, DomainError

HERMITIAN_TOL = 1e-12


def as_matrix(a: np.ndarray | list) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix has non-finite entries")
    return arr


def dagger(a: np.ndarray) -> np.ndarray:
    return np.swapaxes(a, -1, -2).conj()


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(a - dagger(a)), initial=0.0) <= tol)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def dissipator(l_op: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """L rho L^dag - 1/2 {L^dag L, rho}."""
    l_dag = dagger(l_op)
    ldl = l_dag @ l_op
    return l_op @ rho @ l_dag - 0.5 * (ldl @ rho + rho @ ldl)


def symmetrize(rho: np.ndarray) -> tuple[np.ndarray, float]:
    """Return (rho + rho^dag)/2 together with the max-entry asymmetry removed."""
    drift = float(np.max(np.abs(rho - dagger(rho)), initial=0.0))
    return 0.5 * (rho + dagger(rho)), drift


def _pauli_exp(a: np.ndarray, scale: complex) -> np.ndarray:
    # a = n . sigma with real n; exp(s a) = cosh(s|n|) 1 + sinh(s|n|)/|n| a
    n = np.array([a[0, 1].real, -a[0, 1].imag, a[0, 0].real])
    r = float(np.linalg.norm(n))
    if r == 0.0:
        return np.eye(2, dtype=complex)
    x = scale * r
    return np.cosh(x) * np.eye(2, dtype=complex) + (np.sinh(x) / r) * a


def mat_exp(a: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """exp(scale * a).

    Hermitian traceless 2x2 input uses the Pauli closed form, other Hermitian input
    an eigendecomposition, anything else scipy's scaling-and-squaring Pade.
    """
    a = as_matrix(a)
    if not np.isfinite(scale):
        raise DomainError("scale must be finite")
    d = a.shape[0]
    hermitian = is_hermitian(a)
    if d == 2 and hermitian and abs(np.trace(a)) <= HERMITIAN_TOL:
        return _pauli_exp(a, scale)
    if hermitian:
        evals, evecs = np.linalg.eigh(0.5 * (a + dagger(a)))
        return (evecs * np.exp(scale * evals)) @ dagger(evecs)
    return expm(scale * a)


def propagators(h: np.ndarray, times: np.ndarray, h_bar: float = 1.0) -> np.ndarray:
    """Stack of exp(-i h t / h_bar) for all ``times`` from one eigendecomposition."""
    h = as_matrix(h)
    if not is_hermitian(h):
        raise DomainError("propagators require a Hermitian generator")
    evals, evecs = np.linalg.eigh(0.5 * (h + dagger(h)))
    phases = np.exp(-1j * np.multiply.outer(np.asarray(times, dtype=float), evals) / h_bar)
    return np.einsum("ik,tk,jk->tij", evecs, phases, evecs.conj())


def superoperator(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix of rho -> left @ rho @ right for row-major vectorization."""
    return np.kron(left, right.T)
