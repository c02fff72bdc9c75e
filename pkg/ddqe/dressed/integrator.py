from __future__ import annotations

import numpy as np

from ..config import IntegratorSpec
from ..exceptions import IntegrationError, InvalidConfigError
from ..logging import get_logger
from ..qcore.linalg import symmetrize
from ..qcore.states import DensityMatrix
from ..results import TrajectoryRecord
from .generator import DressedGenerator
from .guard import ValidityGuard

logger = get_logger(__name__)

HERMITICITY_WARN = 1e-12


def resolution_limit(gen: DressedGenerator) -> float:
    """Largest step resolving both the coherent and the disorder time scale (0.01 of each)."""
    evals = np.linalg.eigvalsh(gen.h_bar_avg)
    omega_max = (evals[-1] - evals[0]) / gen.h_bar
    v_sq = np.einsum("acce->ae", gen.second_moment)
    v_norm = float(np.sqrt(np.max(np.abs(np.linalg.eigvalsh(0.5 * (v_sq + v_sq.conj().T))))))
    scales = []
    if omega_max > 0:
        scales.append(2 * np.pi / omega_max)
    if v_norm > 0:
        scales.append(gen.h_bar / v_norm)
    return 0.01 * min(scales) if scales else float("inf")


def integrate(gen: DressedGenerator, rho0: DensityMatrix, spec: IntegratorSpec) -> TrajectoryRecord:
    """Fixed-step RK4 integration of the dressed master equation.

    Each step re-symmetrizes rho, checks the trace against ``trace_tolerance`` and
    feeds the dissipation rate to the validity guard.
    """
    if rho0.dim != gen.dim:
        raise InvalidConfigError(f"initial state has d={rho0.dim}, generator has d={gen.dim}", key="rho0")
    times = spec.times()
    if gen.kernel_step is not None and gen.kernel_step > spec.dt * (1 + 1e-9):
        raise InvalidConfigError(
            f"kernel grid step {gen.kernel_step} is coarser than dt={spec.dt}", key="dt"
        )
    if times[-1] > gen.t_max * (1 + 1e-9) + 1e-12:
        raise InvalidConfigError(
            f"generator covers t <= {gen.t_max}, integration needs {times[-1]}", key="t_max"
        )
    limit = resolution_limit(gen)
    if spec.dt > limit:
        logger.warning(
            "dt does not resolve the fastest time scale",
            extra={"dt": spec.dt, "recommended": limit},
        )

    d = gen.dim
    dt = spec.dt
    guard = ValidityGuard(spec.guard["threshold"], spec.guard["enabled"])
    tolerance = spec.guard["trace_tolerance"]

    states = np.empty((times.shape[0], d, d), dtype=complex)
    validity = np.ones(times.shape[0], dtype=int)
    rho = rho0.matrix.reshape(d * d).astype(complex)
    states[0] = rho0.matrix
    guard.check(0.0, gen.dissipation_rate(0.0))

    cache_t, cache_op = 0.0, gen.superoperator(0.0)
    max_drift = 0.0
    for n in range(times.shape[0] - 1):
        t = times[n]
        op_start = cache_op if cache_t == t else gen.superoperator(t)
        op_mid = gen.superoperator(t + 0.5 * dt)
        op_end = gen.superoperator(t + dt)
        k1 = op_start @ rho
        k2 = op_mid @ (rho + 0.5 * dt * k1)
        k3 = op_mid @ (rho + 0.5 * dt * k2)
        k4 = op_end @ (rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        cache_t, cache_op = times[n + 1], op_end

        mat, drift = symmetrize(rho.reshape(d, d))
        max_drift = max(max_drift, drift)
        trace = np.trace(mat)
        if abs(trace - 1.0) > tolerance:
            raise IntegrationError(
                f"trace drifted to {trace.real:.12f} at t={times[n + 1]:.6g} "
                f"(tolerance {tolerance:g})"
            )
        if spec.renormalize:
            mat = mat / trace.real
        rho = mat.reshape(d * d)
        states[n + 1] = mat

        if guard.check(times[n + 1], gen.dissipation_rate(times[n + 1])):
            validity[n + 1] = 0

    if max_drift > HERMITICITY_WARN:
        logger.warning("hermiticity drift removed by symmetrization", extra={"max_drift": max_drift})
    logger.debug(
        "integration finished",
        extra={
            "representation": gen.representation,
            "steps": times.shape[0] - 1,
            "accumulated": guard.accumulated,
        },
    )
    return TrajectoryRecord(
        times=times,
        states=states,
        source="me",
        validity=validity,
        breach_time=guard.activation_time,
    )
