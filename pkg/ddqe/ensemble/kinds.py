"""Concrete Hamiltonian ensembles."""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np

from ..exceptions import DomainError, InvalidConfigError
from ..qcore.linalg import as_matrix, dagger, is_hermitian
from ..qcore.pauli import SIGMA_Z
from ..qcore.random import RngStream, haar_unitary
from .base import HamiltonianEnsemble

DELTA_DISTS = ("fixed", "gaussian", "custom")


def isotropic_second_moment(x: np.ndarray, variance: float) -> np.ndarray:
    """E[(W X W^dag)_ij (W X W^dag)_kl] * variance over Haar W, for traceless X.

    Equals variance * Tr[X^2]/(d^2 - 1) * (delta_il delta_jk - delta_ij delta_kl / d).
    """
    d = x.shape[0]
    eye = np.eye(d)
    scale = variance * np.trace(x @ x).real / (d * d - 1)
    return scale * (
        np.einsum("il,jk->ijkl", eye, eye) - np.einsum("ij,kl->ijkl", eye, eye) / d
    ).astype(complex)


class CentralSpinEnsemble(HamiltonianEnsemble):
    """H = h_bar omega sigma_z + (Delta/2) W sigma_z W^dag with W Haar-random.

    ``delta_dist`` selects p_Delta: ``fixed`` uses Delta = sqrt(delta_sq_mean),
    ``gaussian`` draws Delta ~ N(0, delta_sq_mean) and ``custom`` calls
    ``delta_sampler(gen)``, which must have second moment ``delta_sq_mean``.
    """

    kind = "central_spin"

    def __init__(
        self,
        omega: float,
        delta_sq_mean: float,
        h_bar: float = 1.0,
        delta_dist: str = "fixed",
        delta_sampler: Callable[[np.random.Generator], float] | None = None,
    ):
        if delta_sq_mean < 0:
            raise InvalidConfigError("delta_sq_mean must be >= 0", key="delta_sq_mean")
        if delta_dist not in DELTA_DISTS:
            raise InvalidConfigError(f"Unsupported delta_dist={delta_dist}", key="delta_dist")
        if delta_dist == "custom" and delta_sampler is None:
            raise InvalidConfigError("custom delta_dist needs a delta_sampler", key="delta_sampler")
        super().__init__(h_bar * omega * SIGMA_Z, h_bar)
        self.omega = float(omega)
        self.delta_sq_mean = float(delta_sq_mean)
        self.delta_dist = delta_dist
        self.delta_sampler = delta_sampler

    def draw_delta(self, gen: np.random.Generator) -> float:
        if self.delta_dist == "fixed":
            return float(np.sqrt(self.delta_sq_mean))
        if self.delta_dist == "gaussian":
            return float(gen.normal(0.0, np.sqrt(self.delta_sq_mean)))
        return float(self.delta_sampler(gen))

    def draw(self, gen: np.random.Generator) -> tuple[np.ndarray, float]:
        w = haar_unitary(2, gen)
        delta = self.draw_delta(gen)
        v = 0.5 * delta * (w @ SIGMA_Z @ dagger(w))
        return 0.5 * (v + dagger(v)), 1.0

    def closed_second_moment(self) -> np.ndarray:
        return isotropic_second_moment(SIGMA_Z, self.delta_sq_mean / 4.0)


class ScalarDephasingEnsemble(HamiltonianEnsemble):
    """H = h_bar (omega + eps) sigma_z with eps ~ N(0, s^2); all realizations commute."""

    kind = "scalar_dephasing"

    def __init__(self, omega: float, s: float, h_bar: float = 1.0):
        if s < 0:
            raise InvalidConfigError("s must be >= 0", key="s")
        super().__init__(h_bar * omega * SIGMA_Z, h_bar)
        self.omega = float(omega)
        self.s = float(s)

    def draw(self, gen: np.random.Generator) -> tuple[np.ndarray, float]:
        eps = gen.normal(0.0, self.s) if self.s > 0 else 0.0
        return self.h_bar * eps * SIGMA_Z, 1.0

    def closed_second_moment(self) -> np.ndarray:
        return (self.h_bar * self.s) ** 2 * np.einsum("ij,kl->ijkl", SIGMA_Z, SIGMA_Z)


class DiscreteEnsemble(HamiltonianEnsemble):
    """Finite ensemble of potentials with probabilities; moments are exact sums."""

    def __init__(
        self,
        h_bar_avg: np.ndarray,
        potentials: Sequence[np.ndarray],
        weights: Sequence[float] | None = None,
        h_bar: float = 1.0,
        atol: float = 1e-10,
    ):
        super().__init__(h_bar_avg, h_bar)
        pots = np.array([as_matrix(v) for v in potentials])
        if pots.shape[0] == 0 or pots.shape[1:] != self.h_bar_avg.shape:
            raise DomainError("potentials must be non-empty and match the Hamiltonian shape")
        if not all(is_hermitian(v) for v in pots):
            raise DomainError("every potential must be Hermitian")
        n = pots.shape[0]
        probs = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
        if probs.shape != (n,) or np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be non-negative and sum to 1")
        mean = np.einsum("n,nij->ij", probs, pots)
        if np.max(np.abs(mean)) > atol:
            raise DomainError("potentials must average to zero; shift the mean into h_bar_avg")
        self.potentials = pots
        self.weights = probs

    def draw(self, gen: np.random.Generator) -> tuple[np.ndarray, float]:
        idx = gen.choice(self.potentials.shape[0], p=self.weights)
        return self.potentials[idx], 1.0

    def closed_second_moment(self) -> np.ndarray:
        return np.einsum("n,nij,nkl->ijkl", self.weights, self.potentials, self.potentials)


class SampledEnsemble(HamiltonianEnsemble):
    """Ensemble known only through a sampler ``gen -> V``; expectations fall back to MC."""

    def __init__(
        self,
        h_bar_avg: np.ndarray,
        sampler: Callable[[np.random.Generator], np.ndarray],
        h_bar: float = 1.0,
    ):
        super().__init__(h_bar_avg, h_bar)
        self.sampler = sampler

    def draw(self, gen: np.random.Generator) -> tuple[np.ndarray, float]:
        v = as_matrix(self.sampler(gen))
        if v.shape != self.h_bar_avg.shape:
            raise DomainError(f"sampler returned shape {v.shape}, expected {self.h_bar_avg.shape}")
        return 0.5 * (v + dagger(v)), 1.0


def random_hermitian(d: int, gen: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return scale * 0.5 * (a + dagger(a))


def random_discrete_ensemble(
    d: int,
    n_potentials: int,
    rng: RngStream,
    strength: float = 0.1,
    h_bar: float = 1.0,
) -> DiscreteEnsemble:
    """Generic non-commuting ensemble: random H_bar and zero-mean random potentials."""
    gen = rng.generator()
    h_avg = random_hermitian(d, gen)
    pots = np.array([random_hermitian(d, gen, strength) for _ in range(n_potentials)])
    weights = gen.random(n_potentials) + 0.5
    weights /= weights.sum()
    pots -= np.einsum("n,nij->ij", weights, pots)
    return DiscreteEnsemble(h_avg, pots, weights, h_bar=h_bar)
