"""Disorder-dressed generators as time-dependent superoperators.

States are vectorized row-major, vec(rho)[a*d + b] = rho[a, b], so that
rho -> L rho R has the matrix kron(L, R.T).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson

from ..exceptions import DomainError, InvalidConfigError
from ..qcore.linalg import dagger, propagators

REPRESENTATIONS = ("redfield", "lindblad", "short_time")
GRID_RTOL = 1e-9


def unitary_superoperator(h: np.ndarray, h_bar: float) -> np.ndarray:
    """Matrix of rho -> -(i/h_bar)[h, rho]."""
    eye = np.eye(h.shape[0])
    return (-1j / h_bar) * (np.kron(h, eye) - np.kron(eye, h.T))


def sandwich_superoperator(m: np.ndarray) -> np.ndarray:
    """Matrix of rho -> sum m[a,c,e,b] rho[c,e], i.e. E[X rho Y] for m = E[X (x) Y]."""
    d = m.shape[0]
    return m.transpose(0, 3, 1, 2).reshape(d * d, d * d)


def lindblad_superoperator(n: np.ndarray) -> np.ndarray:
    """Matrix of rho -> E[L rho L - 1/2 {L L, rho}] for Hermitian L with n = E[L (x) L]."""
    d = n.shape[0]
    eye = np.eye(d)
    left = np.einsum("acce->ae", n)
    right = np.einsum("ceeb->cb", n)
    return sandwich_superoperator(n) - 0.5 * (np.kron(left, eye) + np.kron(eye, right.T))


def rotate_second_moment(s: np.ndarray, u: np.ndarray) -> np.ndarray:
    """E[(U V U^dag) (x) (U V U^dag)] from S = E[V (x) V]; ``u`` may be a stack (t, d, d)."""
    uc = u.conj()
    if u.ndim == 2:
        return np.einsum("abce,ia,jb,kc,le->ijkl", s, u, uc, u, uc, optimize=True)
    return np.einsum("abce,tia,tjb,tkc,tle->tijkl", s, u, uc, u, uc, optimize=True)


def kernel_grid(t_max: float, dt: float) -> np.ndarray:
    """Uniform kernel grid of spacing dt/2 covering [0, t_max], at least three points."""
    if not dt > 0:
        raise InvalidConfigError("dt must be positive", key="dt")
    step = 0.5 * dt
    n = max(int(np.ceil(t_max / step - GRID_RTOL)), 2)
    return np.arange(n + 1) * step


@dataclass(frozen=True)
class KernelTable:
    """Cumulative t'-integrals of the disorder kernels on a uniform grid.

    ``cum_vvt[k] = int_0^{t_k} E[V (x) V~(t')] dt'`` and
    ``cum_vtvt[k] = int_0^{t_k} E[V~(t') (x) V~(t')] dt'``.
    """

    times: np.ndarray
    cum_vvt: np.ndarray
    cum_vtvt: np.ndarray

    @property
    def step(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def t_max(self) -> float:
        return float(self.times[-1])

    @classmethod
    def build(cls, s: np.ndarray, h_bar_avg: np.ndarray, h_bar: float, times: np.ndarray) -> KernelTable:
        times = validate_grid(times)
        u = propagators(h_bar_avg, times, h_bar)
        vvt = np.einsum("ijab,tka,tlb->tijkl", s, u, u.conj())
        vtvt = rotate_second_moment(s, u)
        return cls(times, _cumulative(vvt, times), _cumulative(vtvt, times))

    def _locate(self, t: float) -> tuple[int, float]:
        if t < -GRID_RTOL * self.step or t > self.t_max * (1 + GRID_RTOL) + GRID_RTOL:
            raise DomainError(f"t={t} outside the kernel grid [0, {self.t_max}]")
        pos = min(max(t / self.step, 0.0), len(self.times) - 1.0)
        nearest = round(pos)
        if abs(pos - nearest) < 1e-9:
            return int(nearest), 0.0
        i = min(int(np.floor(pos)), len(self.times) - 2)
        return i, pos - i

    def at(self, t: float) -> tuple[np.ndarray, np.ndarray]:
        i, frac = self._locate(t)
        if frac == 0.0:
            return self.cum_vvt[i], self.cum_vtvt[i]
        vvt = (1 - frac) * self.cum_vvt[i] + frac * self.cum_vvt[i + 1]
        vtvt = (1 - frac) * self.cum_vtvt[i] + frac * self.cum_vtvt[i + 1]
        return vvt, vtvt


def validate_grid(times: np.ndarray) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.shape[0] < 3:
        raise InvalidConfigError("kernel grid needs at least three points", key="t_grid")
    if times[0] != 0.0:
        raise InvalidConfigError("kernel grid must start at t=0", key="t_grid")
    steps = np.diff(times)
    if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > GRID_RTOL * steps[0] * 10:
        raise InvalidConfigError("kernel grid must be uniform and increasing", key="t_grid")
    return times


def _cumulative(values: np.ndarray, times: np.ndarray) -> np.ndarray:
    real = cumulative_simpson(values.real, x=times, axis=0, initial=0)
    imag = cumulative_simpson(values.imag, x=times, axis=0, initial=0)
    return real + 1j * imag


class DressedGenerator(ABC):
    """Second-order disorder-dressed generator d rho/dt = -(i/h)[H_eff, rho] + D_t(rho)."""

    representation: str = ""

    def __init__(self, h_bar_avg: np.ndarray, h_bar: float, second_moment: np.ndarray):
        self.h_bar_avg = h_bar_avg
        self.h_bar = h_bar
        self.second_moment = second_moment

    @property
    def dim(self) -> int:
        return self.h_bar_avg.shape[0]

    @property
    def kernel_step(self) -> float | None:
        """Spacing of the t' kernel grid, None when the generator is local in time."""
        return None

    @property
    def t_max(self) -> float:
        return float("inf")

    @abstractmethod
    def h_eff(self, t: float) -> np.ndarray:
        pass

    @abstractmethod
    def dissipator_superoperator(self, t: float) -> np.ndarray:
        pass

    def superoperator(self, t: float) -> np.ndarray:
        return unitary_superoperator(self.h_eff(t), self.h_bar) + self.dissipator_superoperator(t)

    def dissipate(self, t: float, rho: np.ndarray) -> np.ndarray:
        d = self.dim
        return (self.dissipator_superoperator(t) @ np.asarray(rho).reshape(d * d)).reshape(d, d)

    def apply(self, t: float, rho: np.ndarray) -> np.ndarray:
        d = self.dim
        return (self.superoperator(t) @ np.asarray(rho).reshape(d * d)).reshape(d, d)

    def dissipation_rate(self, t: float) -> float:
        """Spectral radius of the dissipator superoperator at time t."""
        return float(np.max(np.abs(np.linalg.eigvals(self.dissipator_superoperator(t)))))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dim={self.dim}, representation={self.representation!r})"


class _KernelGenerator(DressedGenerator):
    def __init__(self, h_bar_avg: np.ndarray, h_bar: float, second_moment: np.ndarray, kernels: KernelTable):
        super().__init__(h_bar_avg, h_bar, second_moment)
        self.kernels = kernels

    @property
    def kernel_step(self) -> float:
        return self.kernels.step

    @property
    def t_max(self) -> float:
        return self.kernels.t_max


class RedfieldGenerator(_KernelGenerator):
    """D_t(rho) = -(1/h^2) E int_0^t dt' [V, [V~(t'), rho]]."""

    representation = "redfield"

    def h_eff(self, t: float) -> np.ndarray:
        return self.h_bar_avg

    def dissipator_superoperator(self, t: float) -> np.ndarray:
        m, _ = self.kernels.at(t)
        d = self.dim
        eye = np.eye(d)
        left = np.einsum("acce->ae", m)
        right = np.einsum("ebce->cb", m)
        outer = np.einsum("ebac->abce", m).reshape(d * d, d * d)
        total = np.kron(left, eye) + np.kron(eye, right.T) - sandwich_superoperator(m) - outer
        return -total / self.h_bar**2


class LindbladGenerator(_KernelGenerator):
    """H_eff(t) plus sum over alpha = +-1 of (2 alpha/h^2) E int dt' L(L^alpha_t')."""

    representation = "lindblad"

    def h_eff(self, t: float) -> np.ndarray:
        m, _ = self.kernels.at(t)
        comm = np.einsum("acce->ae", m) - np.einsum("cbac->ab", m)
        h = self.h_bar_avg - (0.5j / self.h_bar) * comm
        return 0.5 * (h + dagger(h))

    def lindblad_moments(self, t: float) -> dict[int, np.ndarray]:
        """E int_0^t dt' L^alpha (x) L^alpha for alpha = +1 and -1."""
        m, c = self.kernels.at(t)
        s = t * self.second_moment
        mt = m.transpose(2, 3, 0, 1)
        return {alpha: 0.25 * (s + alpha * (m + mt) + c) for alpha in (1, -1)}

    def rates(self, t: float) -> dict[int, float]:
        return {alpha: 2.0 * alpha / self.h_bar**2 for alpha in (1, -1)}

    def dissipator_superoperator(self, t: float) -> np.ndarray:
        moments = self.lindblad_moments(t)
        rates = self.rates(t)
        return sum(rates[a] * lindblad_superoperator(moments[a]) for a in (1, -1))


class ShortTimeGenerator(DressedGenerator):
    """Next-to-leading short-time form.

    H_eff(t) = H_bar + (t^2/4h^2) E[V,[V,H_bar]], rate 2t/h^2 and
    L(t) = U_bar(t/4) V U_bar(t/4)^dag.
    """

    representation = "short_time"

    def __init__(self, h_bar_avg: np.ndarray, h_bar: float, second_moment: np.ndarray):
        super().__init__(h_bar_avg, h_bar, second_moment)
        s = second_moment
        vv = np.einsum("acce->ae", s)
        vhv = np.einsum("aceb,ce->ab", s, h_bar_avg)
        self.double_commutator = vv @ h_bar_avg - 2.0 * vhv + h_bar_avg @ vv

    def h_eff(self, t: float) -> np.ndarray:
        h = self.h_bar_avg + (t**2 / (4.0 * self.h_bar**2)) * self.double_commutator
        return 0.5 * (h + dagger(h))

    def dissipator_superoperator(self, t: float) -> np.ndarray:
        u = propagators(self.h_bar_avg, np.array([0.25 * t]), self.h_bar)[0]
        moment = rotate_second_moment(self.second_moment, u)
        return (2.0 * t / self.h_bar**2) * lindblad_superoperator(moment)
