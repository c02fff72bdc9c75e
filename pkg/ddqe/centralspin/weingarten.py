"""Second-order Haar integrals over the unitary group."""

from __future__ import annotations

import numpy as np

from ..exceptions import DimensionError, DomainError
from ..qcore.linalg import as_matrix, dagger
from ..qcore.random import RngStream, haar_unitary


def weingarten_haar_integral(
    x1: np.ndarray, x2: np.ndarray, x3: np.ndarray, d: int | None = None
) -> np.ndarray:
    """int dmu(W) W X1 W^dag X2 W X3 W^dag over the Haar measure on U(d).

    Evaluates to
    (d Tr[X1 X3] - Tr X1 Tr X3) Tr X2 / (d(d^2-1)) * 1
    + (d Tr X1 Tr X3 - Tr[X1 X3]) / (d(d^2-1)) * X2.
    """
    x1, x2, x3 = as_matrix(x1), as_matrix(x2), as_matrix(x3)
    if not x1.shape == x2.shape == x3.shape:
        raise DimensionError("X1, X2, X3 must share one dimension")
    d = x1.shape[0] if d is None else d
    if d != x1.shape[0]:
        raise DimensionError(f"matrices have d={x1.shape[0]}, requested d={d}")
    if d == 1:
        return x1 @ x2 @ x3
    tr1, tr2, tr3 = np.trace(x1), np.trace(x2), np.trace(x3)
    tr13 = np.trace(x1 @ x3)
    norm = d * (d * d - 1)
    return ((d * tr13 - tr1 * tr3) * tr2 / norm) * np.eye(d) + ((d * tr1 * tr3 - tr13) / norm) * x2


def mc_haar_integral(
    x1: np.ndarray,
    x2: np.ndarray,
    x3: np.ndarray,
    n: int,
    rng: RngStream | np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Monte-Carlo estimate of the same integral and its per-entry standard error."""
    if n < 2:
        raise DomainError("need at least two Haar samples")
    x1, x2, x3 = as_matrix(x1), as_matrix(x2), as_matrix(x3)
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    d = x1.shape[0]
    acc = np.zeros((d, d), dtype=complex)
    acc_sq = np.zeros((d, d))
    acc_sq_im = np.zeros((d, d))
    for _ in range(n):
        w = haar_unitary(d, gen)
        wd = dagger(w)
        sample = w @ x1 @ wd @ x2 @ w @ x3 @ wd
        acc += sample
        acc_sq += sample.real**2
        acc_sq_im += sample.imag**2
    mean = acc / n
    var_re = np.clip(acc_sq / n - mean.real**2, 0.0, None)
    var_im = np.clip(acc_sq_im / n - mean.imag**2, 0.0, None)
    return mean, np.sqrt((var_re + var_im) / n)
