"""Disorder-impact kernels F_t(s, q) of the random-mass Dirac characteristic function.

F_t(s, q) = int_0^t dt' int dq' (2G(q')/h^2) int_0^t' dt'' cos(v t''(q' + 2p0)/h)
            e^{-i q v t''/h} e^{i q' s/h}

splits into an even part F^(g) and an odd part F^(u) in q, F = F^(g) + i F^(u).
Both time integrals have the closed form J(w, t) = (1 + i w t - e^{i w t})/w^2, which
leaves a single quadrature over q'.
"""

from __future__ import annotations

import numpy as np

from ..exceptions import DomainError, InvalidConfigError
from ..logging import get_logger
from .correlator import CorrelatorSpec, g_of_q

logger = get_logger(__name__)

MODES = ("exact", "large_time")
POINTS_PER_SCALE = 6
SERIES_CUTOFF = 1e-3


def _re_j(w: np.ndarray, t: float) -> np.ndarray:
    # (1 - cos wt)/w^2
    return 0.5 * t**2 * np.sinc(w * t / (2.0 * np.pi)) ** 2


def _im_j(w: np.ndarray, t: float) -> np.ndarray:
    # (wt - sin wt)/w^2, odd in w
    x = w * t
    small = np.abs(x) < SERIES_CUTOFF
    safe = np.where(small, 1.0, w)
    exact = (x - np.sin(x)) / safe**2
    series = w * t**3 / 6.0 * (1.0 - x**2 / 20.0)
    return np.where(small, series, exact)


class DisorderKernels:
    """Evaluates F^(g)_t(s, q) and F^(u)_t(s, q) on (s, q) grids.

    ``exact`` integrates over q' on a grid fine enough for times up to ``t_max`` and
    separations up to ``s_max``; ``large_time`` uses the vt >> ell, sigma limit, where
    F^(u) is dropped.
    """

    def __init__(
        self,
        spec: CorrelatorSpec,
        p0: float,
        t_max: float,
        mode: str = "exact",
        s_max: float | None = None,
    ):
        if mode not in MODES:
            raise InvalidConfigError(f"Unsupported kernel mode={mode}", key="mode")
        if not p0 > 0:
            raise DomainError("p0 must be positive")
        if t_max < 0:
            raise InvalidConfigError("t_max must be non-negative", key="t_max")
        self.spec = spec
        self.p0 = float(p0)
        self.t_max = float(t_max)
        self.mode = mode
        self.s_max = float(s_max) if s_max is not None else 16.0 * spec.ell
        if mode == "exact":
            self.q_prime, self.weights = self._quadrature()
            logger.debug("exact kernel quadrature", extra={"points": self.q_prime.shape[0]})

    def _quadrature(self) -> tuple[np.ndarray, np.ndarray]:
        h_bar, v = self.spec.h_bar, abs(self.spec.v)
        scales = [h_bar / self.spec.ell]
        if self.t_max > 0:
            scales.append(h_bar / (v * self.t_max))
        if self.s_max > 0:
            scales.append(h_bar / self.s_max)
        step = min(scales) / POINTS_PER_SCALE
        cutoff = self.spec.q_cutoff
        n = int(np.ceil(cutoff / step))
        q_prime = np.arange(-n, n + 1) * step
        weights = g_of_q(self.spec, q_prime) * step / h_bar**2
        return q_prime, weights

    def _check_time(self, t: float) -> None:
        if t < 0 or t > self.t_max * (1 + 1e-9) + 1e-12:
            raise DomainError(f"t={t} outside the kernel range [0, {self.t_max}]")

    def evaluate(self, s: np.ndarray, q: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
        """(F^(g), F^(u)) as arrays of shape (len(s), len(q))."""
        self._check_time(t)
        s = np.atleast_1d(np.asarray(s, dtype=float))
        q = np.atleast_1d(np.asarray(q, dtype=float))
        if t == 0:
            zero = np.zeros((s.shape[0], q.shape[0]), dtype=complex)
            return zero, zero.copy()
        if self.mode == "large_time":
            return self._large_time(s, q, t)

        h_bar, v = self.spec.h_bar, self.spec.v
        a = v * (self.q_prime + 2.0 * self.p0) / h_bar
        b = v * q / h_bar
        minus = a[:, None] - b[None, :]
        plus = a[:, None] + b[None, :]
        w = self.weights[:, None]
        even = w * (_re_j(minus, t) + _re_j(plus, t))
        odd = w * (_im_j(minus, t) - _im_j(plus, t))
        phase = np.exp(1j * np.multiply.outer(s, self.q_prime) / h_bar)
        return phase @ even, phase @ odd

    def _large_time(self, s: np.ndarray, q: np.ndarray, t: float) -> tuple[np.ndarray, np.ndarray]:
        h_bar, v = self.spec.h_bar, self.spec.v
        pref = np.pi * t / (h_bar * abs(v))
        plus = 2.0 * self.p0 + q
        minus = 2.0 * self.p0 - q
        fg = pref * (
            g_of_q(self.spec, plus)[None, :] * np.exp(-1j * np.multiply.outer(s, plus) / h_bar)
            + g_of_q(self.spec, minus)[None, :] * np.exp(-1j * np.multiply.outer(s, minus) / h_bar)
        )
        return fg, np.zeros_like(fg)

    def f_g(self, s: np.ndarray, q: np.ndarray, t: float) -> np.ndarray:
        return self.evaluate(s, q, t)[0]

    def f_u(self, s: np.ndarray, q: np.ndarray, t: float) -> np.ndarray:
        return self.evaluate(s, q, t)[1]

    def f_g_origin(self, times: np.ndarray) -> np.ndarray:
        """F^(g)_t(0, 0) for a sequence of times (real)."""
        return np.array([self.evaluate([0.0], [0.0], t)[0][0, 0].real for t in np.atleast_1d(times)])


def disorder_kernels(
    spec: CorrelatorSpec,
    p0: float,
    t_max: float,
    mode: str = "exact",
    s_max: float | None = None,
) -> DisorderKernels:
    return DisorderKernels(spec, p0, t_max, mode, s_max)
