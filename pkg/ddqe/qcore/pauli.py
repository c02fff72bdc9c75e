"""Qubit operators in the basis (|up>, |down>) and Hermitian operator bases."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |up><down|
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |down><up|
P_UP = np.array([[1, 0], [0, 0]], dtype=complex)
P_DOWN = np.array([[0, 0], [0, 1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_UP = np.array([1, 0], dtype=complex)
KET_DOWN = np.array([0, 1], dtype=complex)


@lru_cache(maxsize=16)
def _gell_mann(d: int) -> tuple[np.ndarray, ...]:
    if d == 2:
        return PAULIS
    mats: list[np.ndarray] = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            mats.extend((sym, anti))
    for l in range(1, d):
        diag = np.zeros(d, dtype=complex)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(diag) * np.sqrt(2.0 / (l * (l + 1))))
    return tuple(mats)


def hermitian_basis(d: int) -> np.ndarray:
    """Generalized Gell-Mann matrices, shape (d*d - 1, d, d); Pauli matrices for d=2.

    Normalized as Tr[G_a G_b] = 2 delta_ab, so for a qubit the components
    Tr[rho G_a] are the Bloch vector.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if d == 1:
        return np.zeros((0, 1, 1), dtype=complex)
    return np.array(_gell_mann(d))


def expectation_components(rhos: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Real components Tr[rho G_a] for a stack of density matrices (..., d, d)."""
    return np.einsum("...ij,aji->...a", rhos, basis).real
