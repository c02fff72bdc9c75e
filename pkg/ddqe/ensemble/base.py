from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ..exceptions import DomainError
from ..qcore.linalg import as_matrix, is_hermitian

KINDS = ("central_spin", "scalar_dephasing", "custom")


class HamiltonianEnsemble(ABC):
    """Ensemble {(H_eps, p_eps)} written as H_eps = H_bar + V_eps with E[V_eps] = 0."""

    kind: str = "custom"

    def __init__(self, h_bar_avg: np.ndarray, h_bar: float = 1.0):
        h_bar_avg = as_matrix(h_bar_avg)
        if not is_hermitian(h_bar_avg):
            raise DomainError("average Hamiltonian must be Hermitian")
        if not h_bar > 0:
            raise DomainError("h_bar must be positive")
        self.h_bar_avg = h_bar_avg
        self.h_bar = float(h_bar)

    @property
    def dim(self) -> int:
        return self.h_bar_avg.shape[0]

    @abstractmethod
    def draw(self, gen: np.random.Generator) -> tuple[np.ndarray, float]:
        """Draw one disorder potential V_eps and its statistical weight."""

    def closed_second_moment(self) -> np.ndarray | None:
        """Exact S[i,j,k,l] = E[V_ij V_kl], or None when only sampling is possible."""
        return None

    @property
    def has_closed_form(self) -> bool:
        return self.closed_second_moment() is not None

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(kind={self.kind!r}, dim={self.dim})"
