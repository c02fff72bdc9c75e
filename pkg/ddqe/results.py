from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError, DomainError
from .qcore.pauli import expectation_components, hermitian_basis
from .qcore.states import DensityMatrix, purity

SOURCES = ("mc", "me", "exact")


@dataclass
class TrajectoryRecord:
    """Density-matrix trajectory on a time grid.

    ``stderr`` holds the Monte-Carlo standard error of the Hermitian-basis components
    (the Bloch vector for a qubit) and is empty for deterministic sources. ``validity``
    is 1 while the perturbative guard holds and 0 after it was breached.
    """

    times: np.ndarray
    states: np.ndarray
    source: str
    stderr: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))
    validity: np.ndarray | None = None
    breach_time: float | None = None

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if self.source not in SOURCES:
            raise DomainError(f"unknown trajectory source={self.source}")
        if self.states.ndim != 3 or self.states.shape[0] != self.times.shape[0]:
            raise DimensionError(
                f"states shape {self.states.shape} does not match {self.times.shape[0]} times"
            )
        if np.any(np.diff(self.times) <= 0):
            raise DomainError("times must be strictly increasing")
        if self.validity is None:
            self.validity = np.ones(self.times.shape[0], dtype=int)

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def has_stderr(self) -> bool:
        return self.stderr.size > 0

    def state(self, i: int) -> DensityMatrix:
        return DensityMatrix(self.states[i])

    def purity(self) -> np.ndarray:
        return purity(self.states)

    def components(self) -> np.ndarray:
        """Tr[rho(t) G_a] for the generalized Gell-Mann basis, shape (n_times, d*d - 1)."""
        return expectation_components(self.states, hermitian_basis(self.dim))

    def bloch(self) -> np.ndarray:
        if self.dim != 2:
            raise DimensionError(f"Bloch components need d=2, got d={self.dim}")
        return self.components()

    def purity_stderr(self) -> np.ndarray:
        """First-order propagated standard error of the purity (approximate).

        For rho = 1/d + a.G/2 the purity is 1/d + |a|^2/2, so d(purity) = a . da.
        """
        if not self.has_stderr:
            return np.zeros(len(self))
        comps = self.components()
        return np.sqrt(np.sum((comps * self.stderr) ** 2, axis=-1))

    def trace_drift(self) -> float:
        traces = np.einsum("tii->t", self.states)
        return float(np.max(np.abs(traces - 1.0)))

    def hermiticity_drift(self) -> float:
        diff = self.states - np.conj(np.swapaxes(self.states, -1, -2))
        return float(np.max(np.abs(diff)))

    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.states + np.conj(np.swapaxes(self.states, -1, -2)))
        return float(np.linalg.eigvalsh(herm).min())
