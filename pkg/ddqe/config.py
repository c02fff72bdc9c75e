from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exceptions import InvalidConfigError

DEFAULT_GUARD = {
    "enabled": True,
    "threshold": 0.5,  # accumulated dissipator strength, dimensionless
    "trace_tolerance": 1e-8,
}

DEFAULT_EXPECTATION = {
    "mode": "auto",  # "auto", "closed_form" or "monte_carlo"
    "samples": 10_000,
    "seed": 0,
}


def worker_count(default: int | None = None) -> int | None:
    """Worker cap from ``DDQE_THREADS``; ``None`` lets the executor decide."""
    raw = os.getenv("DDQE_THREADS")
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidConfigError(f"DDQE_THREADS must be an integer, got {raw!r}", key="DDQE_THREADS") from exc
    if value < 1:
        raise InvalidConfigError("DDQE_THREADS must be >= 1", key="DDQE_THREADS")
    return value


@dataclass
class IntegratorSpec:
    dt: float
    t_max: float
    method: str = "rk4"
    renormalize: bool = False
    guard: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, v in DEFAULT_GUARD.items():
            self.guard.setdefault(k, v)
        self._validate()

    def _validate(self) -> None:
        if self.method not in {"rk4"}:
            raise InvalidConfigError(f"Unsupported integrator method={self.method}", key="method")
        if not self.dt > 0:
            raise InvalidConfigError("dt must be positive", key="dt")
        if not self.t_max >= 0:
            raise InvalidConfigError("t_max must be non-negative", key="t_max")
        if self.guard["threshold"] <= 0:
            raise InvalidConfigError("guard threshold must be positive", key="threshold")
        if self.guard["trace_tolerance"] <= 0:
            raise InvalidConfigError("trace_tolerance must be positive", key="trace_tolerance")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))

    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.dt


@dataclass
class ExpectationSpec:
    """How the disorder expectation E_eps[...] is evaluated by the generator builders."""

    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, v in DEFAULT_EXPECTATION.items():
            self.options.setdefault(k, v)
        if self.mode not in {"auto", "closed_form", "monte_carlo"}:
            raise InvalidConfigError(f"Unsupported expectation mode={self.mode}", key="mode")
        samples = self.options["samples"]
        if not isinstance(samples, int) or samples < 1:
            raise InvalidConfigError("samples must be positive int", key="samples")

    @property
    def mode(self) -> str:
        return self.options["mode"]

    @property
    def samples(self) -> int:
        return self.options["samples"]

    @property
    def seed(self) -> int:
        return self.options["seed"]


@dataclass
class MonteCarloSpec:
    realizations: int = 1000
    max_workers: int | None = field(default_factory=lambda: worker_count(default=1))
    serial_reduction: bool = True
    chunk_size: int = 100

    def __post_init__(self) -> None:
        if not isinstance(self.realizations, int) or self.realizations < 1:
            raise InvalidConfigError("realizations must be positive int", key="K")
        if self.max_workers is not None and self.max_workers < 1:
            raise InvalidConfigError("max_workers must be >= 1", key="max_workers")
        if self.chunk_size < 1:
            raise InvalidConfigError("chunk_size must be >= 1", key="chunk_size")


@dataclass
class CharacteristicGridSpec:
    """FFT-compatible (s, q) grid; extents in units of sigma and h_bar/sigma."""

    n_s: int = 512
    n_q: int = 512
    s_extent: float = 16.0
    q_extent: float = 8.0

    def __post_init__(self) -> None:
        for key in ("n_s", "n_q"):
            n = getattr(self, key)
            if not isinstance(n, int) or n < 4 or n % 2:
                raise InvalidConfigError(f"{key} must be an even int >= 4", key=key)
        for key in ("s_extent", "q_extent"):
            if not getattr(self, key) > 0:
                raise InvalidConfigError(f"{key} must be positive", key=key)

    def grids(self, sigma: float, h_bar: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
        """s_k = (k - n/2) ds, so s = 0 and q = 0 sit at index n/2."""
        ds = 2.0 * self.s_extent * sigma / self.n_s
        dq = 2.0 * self.q_extent * h_bar / (sigma * self.n_q)
        s = (np.arange(self.n_s) - self.n_s // 2) * ds
        q = (np.arange(self.n_q) - self.n_q // 2) * dq
        return s, q


@dataclass
class DiracGridSpec:
    """Periodic position grid for the split-step oracle."""

    length: float
    n_points: int = 4096
    x_min: float | None = None

    def __post_init__(self) -> None:
        n = self.n_points
        if not isinstance(n, int) or n < 2 or n & (n - 1):
            raise InvalidConfigError("n_points must be a power of two", key="n_points")
        if not self.length > 0:
            raise InvalidConfigError("length must be positive", key="length")
        if self.x_min is None:
            self.x_min = -0.5 * self.length

    @classmethod
    def for_packet(cls, sigma: float, v: float, t_max: float, n_points: int = 4096) -> DiracGridSpec:
        """Box with sigma/L <= 1/64 and v t_max <= L/4."""
        return cls(length=max(64.0 * sigma, 4.0 * abs(v) * t_max), n_points=n_points)

    @property
    def dx(self) -> float:
        return self.length / self.n_points

    def x(self) -> np.ndarray:
        return self.x_min + np.arange(self.n_points) * self.dx
