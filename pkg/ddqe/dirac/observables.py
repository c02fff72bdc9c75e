"""Weak-disorder closed forms for the random-mass Dirac packet."""

from __future__ import annotations

import numpy as np
from scipy.integrate import cumulative_simpson

from ..exceptions import DomainError, InvalidConfigError
from .correlator import CorrelatorSpec, g_of_q
from .kernels import DisorderKernels


def mean_position(spec: CorrelatorSpec, p0: float, t: np.ndarray | float, x0: float = 0.0) -> np.ndarray | float:
    """<x>(t) = x0 + (v - C0/p0^2 v) t + (C0 h/2 v^2 p0^3) sin(2 p0 v t/h).

    Drift reduction plus Zitterbewegung at frequency 2 p0 v/h.
    """
    if not p0 > 0:
        raise DomainError("p0 must be positive")
    v, h_bar, c0 = spec.v, spec.h_bar, spec.c0
    t = np.asarray(t, dtype=float)
    drift = v - c0 / (p0**2 * v)
    amplitude = c0 * h_bar / (2.0 * v**2 * p0**3)
    value = x0 + drift * t + amplitude * np.sin(2.0 * p0 * v * t / h_bar)
    return float(value) if value.ndim == 0 else value


def zitterbewegung(spec: CorrelatorSpec, p0: float) -> tuple[float, float, float]:
    """(angular frequency, amplitude, drift velocity) of ``mean_position``."""
    v, h_bar, c0 = spec.v, spec.h_bar, spec.c0
    return 2.0 * p0 * v / h_bar, c0 * h_bar / (2.0 * v**2 * p0**3), v - c0 / (p0**2 * v)


def mean_position_from_kernels(
    kernels: DisorderKernels, times: np.ndarray, x0: float = 0.0
) -> np.ndarray:
    """x0 + v int_0^t exp(-2 F^g_t'(0, 0)) dt' on ``times`` (uniform, starting at 0)."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.shape[0] < 3 or times[0] != 0.0:
        raise InvalidConfigError("times must be a 1-D grid of >= 3 points starting at 0", key="times")
    velocity = kernels.spec.v * np.exp(-2.0 * kernels.f_g_origin(times))
    return x0 + cumulative_simpson(velocity, x=times, initial=0.0)


def purity_plateau(spec: CorrelatorSpec, p0: float, sigma: float) -> float:
    """1 - (C0/2 v^2 p0^2)(1 - ell/sqrt(ell^2 + 4 sigma^2))."""
    if not p0 > 0:
        raise DomainError("p0 must be positive")
    if sigma < 0:
        raise DomainError("sigma must be >= 0")
    ratio = spec.c0 / (2.0 * spec.v**2 * p0**2)
    return 1.0 - ratio * (1.0 - spec.ell / np.sqrt(spec.ell**2 + 4.0 * sigma**2))


def backscatter_rate(spec: CorrelatorSpec, p0: float) -> float:
    """Golden-rule rate 2 pi G(2 p0)/(h v) at which F^g_t(0, 0) grows at late times."""
    if not p0 > 0:
        raise DomainError("p0 must be positive")
    return 2.0 * np.pi * float(g_of_q(spec, 2.0 * p0)) / (spec.h_bar * abs(spec.v))
