from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exceptions import DimensionError, DomainError
from .linalg import as_matrix, dagger
from .pauli import IDENTITY2, PAULIS

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_FLOOR = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        if np.max(np.abs(m - dagger(m))) > HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix trace {np.trace(m).real:.3e} != 1")
        if np.linalg.eigvalsh(m).min() < EIGEN_FLOOR:
            raise DomainError("density matrix has negative eigenvalues")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, d: int) -> DensityMatrix:
        return cls(np.eye(d, dtype=complex) / d)

    def mix(self, other: DensityMatrix, weight: float) -> DensityMatrix:
        """weight * self + (1 - weight) * other."""
        return DensityMatrix(weight * self.matrix + (1.0 - weight) * other.matrix)


@dataclass(frozen=True)
class BlochVector:
    a_x: float
    a_y: float
    a_z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a_x, self.a_y, self.a_z])

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.as_array()))


def pure_state(psi: np.ndarray | list) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if norm == 0 or not np.isfinite(norm):
        raise DomainError("state vector must be finite and non-zero")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()))


def bloch_map(rho: DensityMatrix) -> BlochVector:
    """a_i = Tr[rho sigma_i] with the convention rho = (1 + a.sigma)/2."""
    if rho.dim != 2:
        raise DimensionError(f"Bloch map needs d=2, got d={rho.dim}")
    a = [float(np.trace(rho.matrix @ s).real) for s in PAULIS]
    return BlochVector(*a)


def density_from_bloch(a: BlochVector) -> DensityMatrix:
    if a.length > 1.0 + 1e-10:
        raise DomainError(f"Bloch vector length {a.length:.6f} exceeds 1")
    m = 0.5 * (IDENTITY2 + sum(c * s for c, s in zip(a.as_array(), PAULIS)))
    return DensityMatrix(m)


def purity(rho: DensityMatrix | np.ndarray) -> float | np.ndarray:
    """Tr[rho^2]; accepts a DensityMatrix or a raw stack of shape (..., d, d)."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    value = np.einsum("...ij,...ji->...", m, m).real
    return float(value) if np.ndim(value) == 0 else value
