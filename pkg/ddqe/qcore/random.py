"""Seeded random streams, Haar unitaries and Gaussian variates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import qr

from ..exceptions import DomainError


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream keyed by ``(seed, stream_id, *path)``.

    Two streams with equal keys produce identical variate sequences no matter in which
    process or order they are consumed. A stream owns one generator, created on first
    use, so successive draws from the same stream continue a single sequence; use
    ``child(k)`` for independent deterministic substreams.
    """

    seed: int
    stream_id: int = 0
    path: tuple[int, ...] = ()
    _generator: np.random.Generator | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise DomainError("seed must be non-negative")

    def generator(self) -> np.random.Generator:
        if self._generator is None:
            seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self.path))
            object.__setattr__(self, "_generator", np.random.Generator(np.random.PCG64(seq)))
        return self._generator

    def child(self, k: int) -> RngStream:
        return RngStream(self.seed, self.stream_id, (*self.path, int(k)))


def _as_generator(rng: RngStream | np.random.Generator) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngStream) else rng


def haar_unitary(d: int, rng: RngStream | np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary from the QR factorization of a Ginibre matrix."""
    if d < 1:
        raise DomainError("dimension must be >= 1")
    gen = _as_generator(rng)
    z = (gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases


def gaussian(
    rng: RngStream | np.random.Generator,
    mean: float = 0.0,
    sd: float = 1.0,
    size: int | tuple[int, ...] | None = None,
) -> float | np.ndarray:
    if sd < 0:
        raise DomainError(f"standard deviation must be >= 0, got {sd}")
    gen = _as_generator(rng)
    if sd == 0:
        return mean if size is None else np.full(size, float(mean))
    value = gen.normal(mean, sd, size)
    return float(value) if size is None else value
