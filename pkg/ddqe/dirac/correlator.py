"""Mass-disorder correlations C(x) and the momentum-transfer distribution G(q)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ..exceptions import DomainError, InvalidConfigError

FORMS = ("gaussian", "table")
# Gaussian G is negligible (< e^-36) beyond this many h_bar/ell
GAUSSIAN_Q_CUTOFF = 12.0


@dataclass(frozen=True)
class CorrelatorSpec:
    """C(x - x') = E[m(x) v^2 m(x') v^2] = int dq e^{iq(x-x')/h} G(q).

    ``form="gaussian"`` uses C(x) = c0 exp(-(x/ell)^2). ``form="table"`` takes G sampled
    on q >= 0 (``table_q``, ``table_g``), extended evenly and linearly interpolated;
    c0 is then the integral of the table.
    """

    c0: float
    ell: float
    form: str = "gaussian"
    h_bar: float = 1.0
    v: float = 1.0
    table_q: tuple[float, ...] = ()
    table_g: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.form not in FORMS:
            raise InvalidConfigError(f"Unsupported correlator form={self.form}", key="form")
        if self.c0 < 0:
            raise InvalidConfigError("c0 must be >= 0", key="c0")
        if not self.ell > 0:
            raise InvalidConfigError("ell must be positive", key="ell")
        if not self.h_bar > 0:
            raise InvalidConfigError("h_bar must be positive", key="h_bar")
        if self.v == 0:
            raise InvalidConfigError("v must be non-zero", key="v")
        if self.form == "table":
            q = np.asarray(self.table_q, dtype=float)
            g = np.asarray(self.table_g, dtype=float)
            if q.ndim != 1 or q.shape != g.shape or q.shape[0] < 3:
                raise InvalidConfigError("table needs matching q and G arrays of >= 3 points", key="table_g")
            if q[0] != 0.0 or np.any(np.diff(q) <= 0):
                raise InvalidConfigError("table_q must start at 0 and increase", key="table_q")
            if np.any(g < 0):
                raise DomainError("momentum-transfer table has negative entries")
            object.__setattr__(self, "c0", 2.0 * float(simpson(g, x=q)))

    @classmethod
    def from_table(
        cls, q: np.ndarray, g: np.ndarray, ell: float, h_bar: float = 1.0, v: float = 1.0
    ) -> CorrelatorSpec:
        q = np.asarray(q, dtype=float)
        g = np.asarray(g, dtype=float)
        return cls(0.0, ell, "table", h_bar, v, tuple(q.tolist()), tuple(g.tolist()))

    @property
    def q_cutoff(self) -> float:
        if self.form == "table":
            return float(self.table_q[-1])
        return GAUSSIAN_Q_CUTOFF * self.h_bar / self.ell


def g_of_q(spec: CorrelatorSpec, q: np.ndarray | float) -> np.ndarray | float:
    q = np.asarray(q, dtype=float)
    if spec.form == "gaussian":
        x = q * spec.ell / (2.0 * spec.h_bar)
        value = spec.c0 * spec.ell / (2.0 * np.sqrt(np.pi) * spec.h_bar) * np.exp(-(x**2))
    else:
        value = np.interp(np.abs(q), spec.table_q, spec.table_g, right=0.0)
    return float(value) if value.ndim == 0 else value


def correlation(spec: CorrelatorSpec, x: np.ndarray | float) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    if spec.form == "gaussian":
        value = spec.c0 * np.exp(-((x / spec.ell) ** 2))
    else:
        q = np.asarray(spec.table_q)
        g = np.asarray(spec.table_g)
        integrand = np.cos(np.multiply.outer(x, q) / spec.h_bar) * g
        value = 2.0 * simpson(integrand, x=q, axis=-1)
    return float(value) if np.ndim(value) == 0 else value
