from __future__ import annotations

import numpy as np

from ..config import ExpectationSpec
from ..ensemble.base import HamiltonianEnsemble
from ..ensemble.montecarlo import second_moment
from ..exceptions import DomainError, InvalidConfigError
from ..logging import get_logger
from ..qcore.linalg import as_matrix, dagger, is_hermitian, propagators
from .generator import (
    KernelTable,
    LindbladGenerator,
    RedfieldGenerator,
    ShortTimeGenerator,
    validate_grid,
)

logger = get_logger(__name__)


def interaction_potential(ens: HamiltonianEnsemble, v: np.ndarray, t: float) -> np.ndarray:
    """V~(t) = U_bar(t) V U_bar(t)^dag with U_bar(t) = exp(-i H_bar t / h)."""
    v = as_matrix(v)
    if not is_hermitian(v):
        raise DomainError("interaction_potential expects a Hermitian potential")
    if t == 0:
        return v
    u = propagators(ens.h_bar_avg, np.array([t]), ens.h_bar)[0]
    vt = u @ v @ dagger(u)
    return 0.5 * (vt + dagger(vt))


def lindblad_operator(ens: HamiltonianEnsemble, v: np.ndarray, t: float, alpha: int) -> np.ndarray:
    """L^alpha_t = (V + alpha V~(t))/2 for a single realization."""
    if alpha not in (1, -1):
        raise DomainError("alpha must be +1 or -1")
    return 0.5 * (as_matrix(v) + alpha * interaction_potential(ens, v, t))


def _kernels(
    ens: HamiltonianEnsemble,
    t_grid: np.ndarray,
    expectation: ExpectationSpec | None,
    dt: float | None,
) -> tuple[np.ndarray, KernelTable]:
    t_grid = validate_grid(t_grid)
    step = float(t_grid[1] - t_grid[0])
    if dt is not None and step > dt * (1 + 1e-9):
        raise InvalidConfigError(f"kernel grid step {step} is coarser than dt={dt}", key="t_grid")
    s = second_moment(ens, expectation)
    table = KernelTable.build(s, ens.h_bar_avg, ens.h_bar, t_grid)
    logger.debug(
        "kernel table built",
        extra={"ensemble": repr(ens), "points": t_grid.shape[0], "step": step},
    )
    return s, table


def build_redfield(
    ens: HamiltonianEnsemble,
    t_grid: np.ndarray,
    expectation: ExpectationSpec | None = None,
    dt: float | None = None,
) -> RedfieldGenerator:
    s, table = _kernels(ens, t_grid, expectation, dt)
    return RedfieldGenerator(ens.h_bar_avg, ens.h_bar, s, table)


def build_lindblad(
    ens: HamiltonianEnsemble,
    t_grid: np.ndarray,
    expectation: ExpectationSpec | None = None,
    dt: float | None = None,
) -> LindbladGenerator:
    s, table = _kernels(ens, t_grid, expectation, dt)
    return LindbladGenerator(ens.h_bar_avg, ens.h_bar, s, table)


def build_short_time(ens: HamiltonianEnsemble, expectation: ExpectationSpec | None = None) -> ShortTimeGenerator:
    return ShortTimeGenerator(ens.h_bar_avg, ens.h_bar, second_moment(ens, expectation))
