"""Split-step spectral oracle for H = v p sigma_z + m(x) v^2 sigma_x on a periodic grid.

Spinors are stored as (..., 2, N) arrays, component 0 the right-moving (up) band. The mass
field f(x) = m(x) v^2 is an energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ..config import DiracGridSpec, MonteCarloSpec
from ..ensemble.executor import RealizationExecutor, chunk_ranges
from ..exceptions import DomainError, InvalidConfigError
from ..logging import get_logger
from ..qcore.random import RngStream
from .correlator import CorrelatorSpec, g_of_q

logger = get_logger(__name__)

# dt max(|v p|, |f|)/h
CFL_LIMIT = 0.1
POINTS_PER_WAVELENGTH = 8
MOMENTUM_WIDTHS = 4.0


@dataclass
class GridState:
    x: np.ndarray
    psi: np.ndarray
    mass_field: np.ndarray | None = None
    t: float = 0.0
    h_bar: float = 1.0
    v: float = 1.0

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=float)
        self.psi = np.asarray(self.psi, dtype=complex)
        n = self.x.shape[0]
        if n < 2 or n & (n - 1):
            raise InvalidConfigError("grid size must be a power of two", key="n_points")
        if self.psi.shape != (2, n):
            raise InvalidConfigError(f"spinor must have shape (2, {n}), got {self.psi.shape}", key="psi")
        if self.mass_field is None:
            self.mass_field = np.zeros(n)
        self.mass_field = np.asarray(self.mass_field, dtype=float)
        if self.mass_field.shape != (n,):
            raise InvalidConfigError("mass field must match the grid", key="mass_field")

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def length(self) -> float:
        return self.dx * self.x.shape[0]

    def norm(self) -> float:
        return float(grid_norm(self.psi, self.dx))


def gaussian_grid_state(
    grid: DiracGridSpec,
    sigma: float,
    p0: float,
    x0: float = 0.0,
    h_bar: float = 1.0,
    v: float = 1.0,
) -> GridState:
    """Right-moving Gaussian packet, |psi|^2 of position width sigma, in the up band."""
    if not sigma > 0:
        raise InvalidConfigError("sigma must be positive", key="sigma")
    x = grid.x()
    # nearest periodic image of x - x0
    d = (x - x0 + 0.5 * grid.length) % grid.length - 0.5 * grid.length
    up = np.exp(-(d**2) / (4.0 * sigma**2) + 1j * p0 * x / h_bar)
    up /= np.sqrt(np.sum(np.abs(up) ** 2) * grid.dx)
    psi = np.stack([up, np.zeros_like(up)])
    return GridState(x=x, psi=psi, h_bar=h_bar, v=v)


def _momenta(n: int, dx: float, h_bar: float) -> np.ndarray:
    return 2.0 * np.pi * h_bar * np.fft.fftfreq(n, dx)


def sample_mass_field(
    spec: CorrelatorSpec, x: np.ndarray, rng: RngStream | np.random.Generator
) -> np.ndarray:
    """Gaussian random field with E[f(x) f(x')] = C(x - x') by spectral filtering.

    Complex white noise weighted by sqrt(G(q) dq), dq = 2 pi h/L, transformed back and
    made real; the factor sqrt(2) restores the variance lost to the real part.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    dx = float(x[1] - x[0])
    if spec.c0 == 0:
        return np.zeros(n)
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    q = _momenta(n, dx, spec.h_bar)
    dq = 2.0 * np.pi * spec.h_bar / (n * dx)
    noise = (gen.standard_normal(n) + 1j * gen.standard_normal(n)) / np.sqrt(2.0)
    amplitudes = noise * np.sqrt(g_of_q(spec, q) * dq)
    return np.sqrt(2.0) * np.real(n * np.fft.ifft(amplitudes))


# ---------------------------------------------------------------------------
# observables on (..., 2, N) spinor arrays
# ---------------------------------------------------------------------------


def grid_norm(psi: np.ndarray, dx: float) -> np.ndarray:
    return np.sum(np.abs(psi) ** 2, axis=(-2, -1)) * dx


def grid_mean_position(psi: np.ndarray, x: np.ndarray, dx: float) -> np.ndarray:
    return np.sum(np.abs(psi) ** 2 * x, axis=(-2, -1)) * dx


def grid_band_weights(psi: np.ndarray, dx: float) -> np.ndarray:
    """(..., 2) weights of the up and down components."""
    return np.sum(np.abs(psi) ** 2, axis=-1) * dx


def momentum_density(psi: np.ndarray, dx: float, h_bar: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """(p, |phi(p)|^2) with phi = dx/sqrt(2 pi h) FFT(psi); sum |phi|^2 dp = sum |psi|^2 dx."""
    n = psi.shape[-1]
    p = np.fft.fftshift(_momenta(n, dx, h_bar))
    phi = dx / np.sqrt(2.0 * np.pi * h_bar) * np.fft.fftshift(np.fft.fft(psi, axis=-1), axes=-1)
    return p, np.abs(phi) ** 2


def grid_backscattered_weight(psi: np.ndarray, dx: float, h_bar: float = 1.0) -> np.ndarray:
    """Down-band weight at p < 0, the resonant left movers."""
    n = psi.shape[-1]
    p, density = momentum_density(psi, dx, h_bar)
    dp = 2.0 * np.pi * h_bar / (n * dx)
    return np.sum(density[..., 1, :][..., p < 0], axis=-1) * dp


def momentum_extent(state: GridState) -> float:
    """|<p>| + 4 std(p) of the packet."""
    p, density = momentum_density(state.psi, state.dx, state.h_bar)
    weights = density.sum(axis=0)
    weights = weights / weights.sum()
    mean = float(np.sum(weights * p))
    std = float(np.sqrt(max(np.sum(weights * p**2) - mean**2, 0.0)))
    return abs(mean) + MOMENTUM_WIDTHS * std


def _step_counts(times: np.ndarray, dt: float) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.shape[0] == 0 or times[0] < 0:
        raise InvalidConfigError("times must be a non-empty 1-D array of t >= 0", key="times")
    steps = np.rint(times / dt).astype(int)
    if np.any(np.abs(steps * dt - times) > 1e-9 * max(1.0, float(times[-1]))):
        raise InvalidConfigError("output times must be multiples of dt", key="dt")
    if np.any(np.diff(steps) <= 0):
        raise InvalidConfigError("output times must be strictly increasing", key="times")
    return steps


def check_resolution(state: GridState, dt: float, fields: np.ndarray | None = None) -> None:
    """Raise unless dx and dt resolve the packet's momentum extent and the mass field."""
    if not dt > 0:
        raise InvalidConfigError("dt must be positive", key="dt")
    extent = momentum_extent(state)
    if extent > 0 and state.dx > 2.0 * np.pi * state.h_bar / (POINTS_PER_WAVELENGTH * extent):
        raise InvalidConfigError(
            f"dx={state.dx:.4g} gives fewer than {POINTS_PER_WAVELENGTH} points per wavelength", key="dx"
        )
    fields = state.mass_field if fields is None else fields
    scale = max(abs(state.v) * extent, float(np.max(np.abs(fields))))
    if dt * scale / state.h_bar > CFL_LIMIT:
        raise InvalidConfigError(
            f"dt={dt} violates dt max(|vp|, |m v^2|)/h <= {CFL_LIMIT}", key="dt"
        )


def _propagate(
    psi: np.ndarray,
    fields: np.ndarray,
    steps: np.ndarray,
    dt: float,
    dx: float,
    h_bar: float,
    v: float,
):
    """Yield the batch (B, 2, N) at each step count in ``steps`` (Strang splitting).

    Adjacent kinetic half-steps between two recordings are merged into full steps.
    """
    n = psi.shape[-1]
    p = _momenta(n, dx, h_bar)
    phase = v * p * dt / (2.0 * h_bar)
    half = np.stack([np.exp(-1j * phase), np.exp(1j * phase)])
    full = half**2
    theta = fields * dt / h_bar
    cos, sin = np.cos(theta), np.sin(theta)

    psi = psi.copy()
    done = 0
    for target in steps:
        count = int(target - done)
        if count:
            psi_k = np.fft.fft(psi, axis=-1) * half
            for i in range(count):
                psi = np.fft.ifft(psi_k, axis=-1)
                up, down = psi[:, 0], psi[:, 1]
                psi = np.stack([cos * up - 1j * sin * down, -1j * sin * up + cos * down], axis=1)
                psi_k = np.fft.fft(psi, axis=-1) * (full if i < count - 1 else half)
            psi = np.fft.ifft(psi_k, axis=-1)
            done = int(target)
        yield psi


@dataclass
class GridTrajectory:
    times: np.ndarray
    states: np.ndarray
    x: np.ndarray
    mass_field: np.ndarray
    h_bar: float = 1.0

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    def norm(self) -> np.ndarray:
        return grid_norm(self.states, self.dx)

    def mean_position(self) -> np.ndarray:
        return grid_mean_position(self.states, self.x, self.dx)

    def band_weights(self) -> np.ndarray:
        return grid_band_weights(self.states, self.dx)

    def backscattered_weight(self) -> np.ndarray:
        return grid_backscattered_weight(self.states, self.dx, self.h_bar)

    def state(self, i: int, v: float = 1.0) -> GridState:
        return GridState(self.x, self.states[i], self.mass_field, float(self.times[i]), self.h_bar, v)


def grid_evolve(
    state: GridState,
    spec: CorrelatorSpec | None,
    dt: float,
    times: np.ndarray,
    rng: RngStream | np.random.Generator | None = None,
) -> GridTrajectory:
    """Evolve ``state`` and record it at ``times`` (multiples of dt, measured from ``state.t``).

    With a ``spec`` and ``rng`` a fresh mass field is sampled; otherwise the state's own
    field is used.
    """
    fields = state.mass_field
    if spec is not None:
        if rng is None:
            raise InvalidConfigError("sampling a mass field needs an rng", key="seed")
        fields = sample_mass_field(spec, state.x, rng)
    steps = _step_counts(times, dt)
    check_resolution(state, dt, fields)
    records = np.array(
        [
            psi[0]
            for psi in _propagate(
                state.psi[None], fields[None], steps, dt, state.dx, state.h_bar, state.v
            )
        ]
    )
    drift = float(np.max(np.abs(grid_norm(records, state.dx) - state.norm())))
    logger.debug("grid evolution", extra={"steps": int(steps[-1]), "norm_drift": drift})
    return GridTrajectory(
        times=state.t + np.asarray(times, dtype=float),
        states=records,
        x=state.x,
        mass_field=fields,
        h_bar=state.h_bar,
    )


@dataclass
class _GridSums:
    count: int
    sums: np.ndarray
    sums_sq: np.ndarray

    def __add__(self, other: _GridSums) -> _GridSums:
        return _GridSums(self.count + other.count, self.sums + other.sums, self.sums_sq + other.sums_sq)


OBSERVABLES = ("mean_position", "backscatter_weight", "norm", "up_weight", "down_weight")


def _grid_chunk(
    spec: CorrelatorSpec,
    state: GridState,
    steps: np.ndarray,
    dt: float,
    rng: RngStream,
    indices: range,
) -> _GridSums:
    fields = np.array([sample_mass_field(spec, state.x, rng.child(k)) for k in indices])
    batch = np.broadcast_to(state.psi, (len(indices), *state.psi.shape))
    values = np.zeros((steps.shape[0], len(OBSERVABLES), len(indices)))
    dx = state.dx
    for i, psi in enumerate(_propagate(batch, fields, steps, dt, dx, state.h_bar, state.v)):
        bands = grid_band_weights(psi, dx)
        values[i] = [
            grid_mean_position(psi, state.x, dx),
            grid_backscattered_weight(psi, dx, state.h_bar),
            grid_norm(psi, dx),
            bands[:, 0],
            bands[:, 1],
        ]
    return _GridSums(len(indices), values.sum(axis=-1), (values**2).sum(axis=-1))


@dataclass
class GridEnsembleResult:
    times: np.ndarray
    means: dict[str, np.ndarray]
    stderr: dict[str, np.ndarray]
    realizations: int

    @property
    def mean_position(self) -> np.ndarray:
        return self.means["mean_position"]

    @property
    def backscatter_weight(self) -> np.ndarray:
        return self.means["backscatter_weight"]


def run_grid_ensemble(
    spec: CorrelatorSpec,
    grid: DiracGridSpec,
    sigma: float,
    p0: float,
    times: np.ndarray,
    n_realizations: int = 500,
    rng: RngStream | int = 0,
    dt: float = 0.02,
    x0: float = 0.0,
    mc_spec: MonteCarloSpec | None = None,
) -> GridEnsembleResult:
    """Disorder average of grid observables over independent mass fields.

    Realization k samples its field from ``rng.child(k)``.
    """
    if n_realizations < 2:
        raise InvalidConfigError("run_grid_ensemble needs at least two realizations", key="n_realizations")
    mc_spec = mc_spec or MonteCarloSpec(realizations=n_realizations)
    stream = rng if isinstance(rng, RngStream) else RngStream(int(rng))
    state = gaussian_grid_state(grid, sigma, p0, x0, spec.h_bar, spec.v)
    steps = _step_counts(times, dt)
    # the resolution check uses a 5-sigma bound on the field amplitude
    check_resolution(state, dt, np.array([5.0 * np.sqrt(spec.c0)]))

    chunks = chunk_ranges(n_realizations, mc_spec.chunk_size)
    executor = RealizationExecutor(mc_spec.max_workers, ordered=mc_spec.serial_reduction)
    tasks = [(spec, state, steps, dt, stream, chunk) for chunk in chunks]
    logger.info(
        "grid ensemble",
        extra={"realizations": n_realizations, "n_points": grid.n_points, "steps": int(steps[-1])},
    )
    partials = executor.map(_grid_chunk, tasks)
    total = partials[0]
    for part in partials[1:]:
        total = total + part

    mean = total.sums / total.count
    var = np.clip(total.sums_sq / total.count - mean**2, 0.0, None)
    err = np.sqrt(var / total.count)
    return GridEnsembleResult(
        times=np.asarray(times, dtype=float),
        means={name: mean[:, i] for i, name in enumerate(OBSERVABLES)},
        stderr={name: err[:, i] for i, name in enumerate(OBSERVABLES)},
        realizations=total.count,
    )


@dataclass
class ZitterbewegungFit:
    omega: float
    amplitude: float
    drift_velocity: float
    residual: float


def fit_zitterbewegung(
    times: np.ndarray, x_mean: np.ndarray, omega_guess: float, x0: float = 0.0, v: float = 1.0
) -> ZitterbewegungFit:
    """Fit x0 + (v + b) t + c sin(w t) + d cos(w t) + a, scanning w over [0.5, 1.5] w_guess."""
    if not omega_guess > 0:
        raise DomainError("omega_guess must be positive")
    times = np.asarray(times, dtype=float)
    y = np.asarray(x_mean, dtype=float) - x0 - v * times

    def solve(omega: float) -> tuple[np.ndarray, float]:
        design = np.column_stack(
            [times, np.sin(omega * times), np.cos(omega * times), np.ones_like(times)]
        )
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        return coef, float(np.sum((design @ coef - y) ** 2))

    scan = np.linspace(0.5, 1.5, 401) * omega_guess
    residuals = np.array([solve(w)[1] for w in scan])
    best = int(np.argmin(residuals))
    step = scan[1] - scan[0]
    lo, hi = scan[max(best - 1, 0)], scan[min(best + 1, scan.shape[0] - 1)]
    if hi - lo < step:
        hi = lo + step
    refined = minimize_scalar(lambda w: solve(w)[1], bounds=(lo, hi), method="bounded")
    omega = float(refined.x)
    coef, residual = solve(omega)
    return ZitterbewegungFit(
        omega=omega,
        amplitude=float(np.hypot(coef[1], coef[2])),
        drift_velocity=float(v + coef[0]),
        residual=residual,
    )


def fit_backscatter_rate(times: np.ndarray, weight: np.ndarray, t_min: float = 5.0) -> float:
    """Slope of -log(1 - 2 w)/2 against t for t >= ``t_min``.

    The backscattered weight follows w = (1 - exp(-2F))/2 with F linear in t once the
    transient has passed.
    """
    times = np.asarray(times, dtype=float)
    weight = np.asarray(weight, dtype=float)
    if times.shape != weight.shape:
        raise DomainError("times and weight must have the same shape")
    window = times >= t_min
    if np.count_nonzero(window) < 2:
        raise InvalidConfigError("need at least two times at or after t_min", key="t_min")
    if np.any(weight[window] >= 0.5):
        raise DomainError("backscattered weight must stay below 1/2")
    linearized = -0.5 * np.log1p(-2.0 * weight[window])
    return float(np.polyfit(times[window], linearized, 1)[0])
