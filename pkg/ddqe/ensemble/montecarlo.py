"""Monte-Carlo disorder averaging: the brute-force oracle for every master equation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import ExpectationSpec, MonteCarloSpec
from ..exceptions import DomainError, InvalidConfigError
from ..logging import get_logger
from ..qcore.linalg import dagger, propagators
from ..qcore.pauli import expectation_components, hermitian_basis
from ..qcore.random import RngStream
from ..qcore.states import DensityMatrix
from ..results import TrajectoryRecord
from .base import HamiltonianEnsemble
from .executor import RealizationExecutor, chunk_ranges

logger = get_logger(__name__)

# Stream ids keep the realization draws and the expectation estimates independent.
EXPECTATION_STREAM = 1


def _as_stream(rng: RngStream | int) -> RngStream:
    return rng if isinstance(rng, RngStream) else RngStream(int(rng))


def sample_realization(ens: HamiltonianEnsemble, rng: RngStream | np.random.Generator) -> np.ndarray:
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    v, _ = ens.draw(gen)
    return v


def second_moment(ens: HamiltonianEnsemble, expectation: ExpectationSpec | None = None) -> np.ndarray:
    """S[i,j,k,l] = E[V_ij V_kl], exact when the ensemble provides it, sampled otherwise."""
    expectation = expectation or ExpectationSpec()
    closed = ens.closed_second_moment()
    if expectation.mode == "closed_form" and closed is None:
        raise InvalidConfigError(f"{ens!r} has no closed-form second moment", key="mode")
    if closed is not None and expectation.mode != "monte_carlo":
        return closed

    gen = RngStream(expectation.seed, EXPECTATION_STREAM).generator()
    d = ens.dim
    acc = np.zeros((d, d, d, d), dtype=complex)
    total = 0.0
    for _ in range(expectation.samples):
        v, w = ens.draw(gen)
        acc += w * np.einsum("ij,kl->ijkl", v, v)
        total += w
    logger.debug("sampled second moment", extra={"samples": expectation.samples, "ensemble": repr(ens)})
    return acc / total


def mean_potential_check(
    ens: HamiltonianEnsemble, n: int, rng: RngStream | np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Sample mean of V_eps over ``n`` draws and its per-entry standard error."""
    if n < 2:
        raise DomainError("mean_potential_check needs at least two draws")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    draws = np.array([ens.draw(gen)[0] for _ in range(n)])
    mean = draws.mean(axis=0)
    stderr = (draws.real.std(axis=0, ddof=1) + 1j * draws.imag.std(axis=0, ddof=1)) / np.sqrt(n)
    return mean, stderr


def dephasing_exact_offdiagonal(omega: float, s: float, t: float | np.ndarray) -> complex | np.ndarray:
    """rho_ud(t)/rho_ud(0) for H = h_bar (omega + eps) sigma_z, eps ~ N(0, s^2)."""
    t = np.asarray(t, dtype=float)
    value = np.exp(-2j * omega * t - 2.0 * s**2 * t**2)
    return complex(value) if value.ndim == 0 else value


@dataclass
class _PartialSums:
    weight: float
    weight_sq: float
    states: np.ndarray
    comps: np.ndarray
    comps_sq: np.ndarray

    def __add__(self, other: _PartialSums) -> _PartialSums:
        return _PartialSums(
            self.weight + other.weight,
            self.weight_sq + other.weight_sq,
            self.states + other.states,
            self.comps + other.comps,
            self.comps_sq + other.comps_sq,
        )


def _simulate_chunk(
    ens: HamiltonianEnsemble,
    rho0: np.ndarray,
    times: np.ndarray,
    rng: RngStream,
    indices: range,
) -> _PartialSums:
    basis = hermitian_basis(ens.dim)
    n_t, d = times.shape[0], ens.dim
    sums = _PartialSums(
        0.0,
        0.0,
        np.zeros((n_t, d, d), dtype=complex),
        np.zeros((n_t, basis.shape[0])),
        np.zeros((n_t, basis.shape[0])),
    )
    for k in indices:
        v, w = ens.draw(rng.child(k).generator())
        u = propagators(ens.h_bar_avg + v, times, ens.h_bar)
        states = u @ rho0 @ dagger(u)
        comps = expectation_components(states, basis)
        sums.weight += w
        sums.weight_sq += w * w
        sums.states += w * states
        sums.comps += w * comps
        sums.comps_sq += w * comps**2
    return sums


def mc_average_evolution(
    ens: HamiltonianEnsemble,
    rho0: DensityMatrix,
    times: np.ndarray,
    K: int | None = None,
    rng: RngStream | int = 0,
    spec: MonteCarloSpec | None = None,
) -> TrajectoryRecord:
    """Disorder-averaged trajectory (1/K) sum_k U_k rho0 U_k^dag with exact propagators.

    Realization k draws from ``rng.child(k)``, so results do not depend on how the K
    realizations are split into chunks or distributed over workers.
    """
    spec = spec or MonteCarloSpec(realizations=K if K is not None else 1000)
    if K is not None and K != spec.realizations:
        spec = MonteCarloSpec(K, spec.max_workers, spec.serial_reduction, spec.chunk_size)
    if rho0.dim != ens.dim:
        raise DomainError(f"initial state has d={rho0.dim}, ensemble has d={ens.dim}")
    stream = _as_stream(rng)
    times = np.asarray(times, dtype=float)

    chunks = chunk_ranges(spec.realizations, spec.chunk_size)
    executor = RealizationExecutor(spec.max_workers, ordered=spec.serial_reduction)
    tasks = [(ens, rho0.matrix, times, stream, chunk) for chunk in chunks]
    logger.debug(
        "monte carlo average",
        extra={"K": spec.realizations, "chunks": len(chunks), "workers": spec.max_workers},
    )
    partials = executor.map(_simulate_chunk, tasks)

    total = partials[0]
    for part in partials[1:]:
        total = total + part

    w = total.weight
    states = total.states / w
    mean = total.comps / w
    var = np.clip(total.comps_sq / w - mean**2, 0.0, None)
    # effective sample size reduces to K for unit weights
    stderr = np.sqrt(var * total.weight_sq) / w
    return TrajectoryRecord(times=times, states=states, source="mc", stderr=stderr)
