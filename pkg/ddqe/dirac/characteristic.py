"""Characteristic-function solution of the disorder-averaged random-mass Dirac model.

chi^{+/-}_t(s, q) = Tr[rho_t P_{up/down} e^{i(q x + s p)/h}] is carried on a uniform (s, q) grid
with s_k = (k - n/2) ds, so s = 0 and q = 0 sit at index n/2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..config import CharacteristicGridSpec
from ..exceptions import DomainError, InvalidConfigError
from ..logging import get_logger
from .kernels import DisorderKernels

logger = get_logger(__name__)

BANDS = ("+", "-")
# |beta| below which sinh(beta)/beta uses its series
SINH_CUTOFF = 1e-6
PACKET_WIDTHS = 8.0


@dataclass
class CharacteristicSpinor:
    s_grid: np.ndarray
    q_grid: np.ndarray
    chi_plus: np.ndarray
    chi_minus: np.ndarray
    p0: float
    t: float = 0.0
    h_bar: float = 1.0

    def __post_init__(self) -> None:
        self.s_grid = np.asarray(self.s_grid, dtype=float)
        self.q_grid = np.asarray(self.q_grid, dtype=float)
        self.chi_plus = np.asarray(self.chi_plus, dtype=complex)
        self.chi_minus = np.asarray(self.chi_minus, dtype=complex)
        shape = (self.s_grid.shape[0], self.q_grid.shape[0])
        if self.chi_plus.shape != shape or self.chi_minus.shape != shape:
            raise InvalidConfigError(
                f"chi components must have shape {shape}, got {self.chi_plus.shape} and {self.chi_minus.shape}",
                key="chi",
            )

    @property
    def ds(self) -> float:
        return float(self.s_grid[1] - self.s_grid[0])

    @property
    def dq(self) -> float:
        return float(self.q_grid[1] - self.q_grid[0])

    @property
    def origin(self) -> tuple[int, int]:
        return self.s_grid.shape[0] // 2, self.q_grid.shape[0] // 2

    def norm(self) -> complex:
        i, j = self.origin
        return complex(self.chi_plus[i, j] + self.chi_minus[i, j])

    def hermiticity_drift(self) -> float:
        """max |chi(-s,-q) - conj(chi(s,q))| over both components."""
        return max(
            float(np.max(np.abs(_reflect(chi) - np.conj(chi)))) for chi in (self.chi_plus, self.chi_minus)
        )


def _reflect(x: np.ndarray) -> np.ndarray:
    # index k -> n - k (mod n) on both axes, i.e. (s, q) -> (-s, -q)
    return np.roll(np.flip(x, axis=(0, 1)), 1, axis=(0, 1))


def _check_uniform(grid: np.ndarray, key: str) -> None:
    n = grid.shape[0]
    if n < 4 or n % 2:
        raise InvalidConfigError(f"{key} needs an even number of >= 4 points", key=key)
    step = np.diff(grid)
    if np.any(step <= 0) or not np.allclose(step, step[0], rtol=1e-9, atol=0.0):
        raise InvalidConfigError(f"{key} must be uniform", key=key)
    if abs(grid[n // 2]) > 1e-9 * step[0]:
        raise InvalidConfigError(f"{key} must have 0 at index n/2", key=key)


def gaussian_characteristic(
    sigma: float,
    p0: float,
    grid: CharacteristicGridSpec | None = None,
    band: str = "+",
    x0: float = 0.0,
    h_bar: float = 1.0,
) -> CharacteristicSpinor:
    """Gaussian packet of position width sigma and carrier momentum p0 in a single band.

    chi(s, q) = exp[-s^2/8 sigma^2 - q^2 sigma^2/2h^2 + i p0 s/h - i q x0/h].
    """
    if not sigma > 0:
        raise InvalidConfigError("sigma must be positive", key="sigma")
    if band not in BANDS:
        raise InvalidConfigError(f"Unsupported band={band}", key="band")
    grid = grid or CharacteristicGridSpec()
    s, q = grid.grids(sigma, h_bar)
    p_max = np.pi * h_bar / (s[1] - s[0])
    if abs(p0) + PACKET_WIDTHS * h_bar / (2.0 * sigma) > p_max:
        raise InvalidConfigError(
            f"s grid resolves momenta up to {p_max:.4g}, too coarse for p0={p0}", key="n_s"
        )
    ss, qq = np.meshgrid(s, q, indexing="ij")
    chi = np.exp(
        -(ss**2) / (8.0 * sigma**2)
        - (qq * sigma) ** 2 / (2.0 * h_bar**2)
        + 1j * (p0 * ss - qq * x0) / h_bar
    )
    zero = np.zeros_like(chi)
    plus, minus = (chi, zero) if band == "+" else (zero, chi)
    return CharacteristicSpinor(s, q, plus, minus, p0=float(p0), t=0.0, h_bar=h_bar)


def _sinh_over(beta: np.ndarray) -> np.ndarray:
    small = np.abs(beta) < SINH_CUTOFF
    safe = np.where(small, 1.0, beta)
    return np.where(small, 1.0 + beta**2 / 6.0, np.sinh(safe) / safe)


def evolve_characteristic(
    chi0: CharacteristicSpinor, kernels: DisorderKernels, t: float
) -> CharacteristicSpinor:
    """Apply exp{-F^g(0,q) + F^g(s,q) sx - F^u(s,q) sy - i(v t q/h - F^u(0,q)) sz} pointwise.

    The 2x2 exponential of a 1 + b.sigma is e^a [cosh(beta) + sinh(beta)/beta b.sigma] with
    beta = sqrt(b.b) for complex b.
    """
    if chi0.t != 0.0:
        raise DomainError("evolve_characteristic starts from the initial characteristic function")
    if abs(chi0.h_bar - kernels.spec.h_bar) > 1e-12 * chi0.h_bar:
        raise InvalidConfigError("h_bar of packet and kernels differ", key="h_bar")
    h_bar, v = kernels.spec.h_bar, kernels.spec.v
    s, q = chi0.s_grid, chi0.q_grid
    fg, fu = kernels.evaluate(s, q, t)
    fg0, fu0 = kernels.evaluate([0.0], q, t)

    a = -fg0
    bx = fg
    by = -fu
    bz = np.broadcast_to(-1j * (v * t * q / h_bar - fu0), fg.shape)
    beta = np.sqrt(bx**2 + by**2 + bz**2 + 0j)
    ch = np.cosh(beta)
    sh = _sinh_over(beta)
    scale = np.exp(a)

    plus, minus = chi0.chi_plus, chi0.chi_minus
    chi_plus = scale * ((ch + sh * bz) * plus + sh * (bx - 1j * by) * minus)
    chi_minus = scale * (sh * (bx + 1j * by) * plus + (ch - sh * bz) * minus)
    out = replace(chi0, chi_plus=chi_plus, chi_minus=chi_minus, t=float(t))
    logger.debug("characteristic evolved", extra={"t": t, "norm_drift": abs(out.norm() - chi0.norm())})
    return out


def momentum_distribution(chi: CharacteristicSpinor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(p, P^+(p), P^-(p)) from P(p) = (1/2 pi h) int ds e^{-ips/h} chi(s, 0)."""
    _check_uniform(chi.s_grid, "s_grid")
    _, j = chi.origin
    n = chi.s_grid.shape[0]
    ds = chi.ds
    p = (np.arange(n) - n // 2) * 2.0 * np.pi * chi.h_bar / (n * ds)
    out = []
    for component in (chi.chi_plus, chi.chi_minus):
        spectrum = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(component[:, j])))
        density = ds / (2.0 * np.pi * chi.h_bar) * spectrum
        imag = float(np.max(np.abs(density.imag)))
        if imag > 1e-8:
            logger.warning("momentum distribution has an imaginary part", extra={"max_imag": imag})
        out.append(density.real)
    return p, out[0], out[1]


def characteristic_purity(chi: CharacteristicSpinor) -> float:
    """(1/2 pi h) int ds dq [chi+(s,q) chi+(-s,-q) + chi-(s,q) chi-(-s,-q)]."""
    _check_uniform(chi.s_grid, "s_grid")
    _check_uniform(chi.q_grid, "q_grid")
    total = sum(np.sum(c * _reflect(c)) for c in (chi.chi_plus, chi.chi_minus))
    return float((total * chi.ds * chi.dq / (2.0 * np.pi * chi.h_bar)).real)


def band_weights(chi: CharacteristicSpinor) -> tuple[float, float]:
    i, j = chi.origin
    return float(chi.chi_plus[i, j].real), float(chi.chi_minus[i, j].real)


def backscattered_weight(chi: CharacteristicSpinor) -> float:
    """Weight of the left-moving band at negative momentum."""
    p, _, p_minus = momentum_distribution(chi)
    dp = p[1] - p[0]
    return float(np.sum(p_minus[p < 0]) * dp)
