"""Minimum-norm least-squares interpolation on a kernel span.

Given points x_1..x_N and targets v, the coefficient vector w = Q^+ v (Q the
Gram matrix) yields f = sum_i w_i K(., x_i) with v - Qw in the null space of
Q. That f attains the smallest possible sum of squared residuals at the
points over the whole space, and among all least-squares minimizers it is
the one of minimal norm. The pseudoinverse route also makes w itself the
representative orthogonal to the null space, so the answer does not depend
on an arbitrary choice inside w + null(Q).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .kernels import GramMatrix, Kernel, gram

#: eigenvalues below DEFAULT_RANK_TOL * lambda_max are treated as zero
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class InterpolationResult:
    """Coefficients and diagnostics of a minimum-norm least-squares fit.

    ``nullspace_residual`` is ||Q (v - Q w)||; it certifies the defining
    condition v - Qw in null(Q) and should be ~0 up to roundoff.
    """

    alpha: np.ndarray
    fitted_values: np.ndarray
    lsq_error: float
    rkhs_norm: float
    nullspace_residual: float
    rank: int
    rank_tol: float


def pseudo_solve(Q: GramMatrix, v, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Q^+ v through the spectral decomposition of the Hermitian PSD Q.

    Eigenvalues below ``rank_tol * lambda_max`` count as zero; a rank-0
    matrix gives the zero vector. The result has no component in null(Q).
    """
    v = np.asarray(v)
    if v.shape != (Q.n,):
        raise DimensionMismatch(f"value vector {v.shape} vs Gram of size {Q.n}")
    lam, vec = Q.eigh()
    lam_max = float(lam[-1]) if Q.n else 0.0
    if lam_max <= 0:
        return np.zeros(Q.n, dtype=Q.entries.dtype)
    keep = lam > rank_tol * lam_max
    coeffs = (vec[:, keep].conj().T @ v) / lam[keep]
    return vec[:, keep] @ coeffs


def rank_of(Q: GramMatrix, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    lam = Q.eigh()[0]
    lam_max = float(lam[-1]) if Q.n else 0.0
    if lam_max <= 0:
        return 0
    return int(np.count_nonzero(lam > rank_tol * lam_max))


def min_norm_interpolate(
    kernel: Kernel, points, values, rank_tol: float = DEFAULT_RANK_TOL
) -> InterpolationResult:
    """Fit the norm-minimal least-squares interpolant through (points, values)."""
    Q = gram(kernel, points)
    return interpolate_gram(Q, values, rank_tol=rank_tol)


def interpolate_gram(Q: GramMatrix, values, rank_tol: float = DEFAULT_RANK_TOL) -> InterpolationResult:
    """Same as :func:`min_norm_interpolate` but starting from an assembled Gram."""
    v = np.asarray(values)
    if v.shape != (Q.n,):
        raise DimensionMismatch(f"{v.shape[0] if v.ndim else 0} values for {Q.n} points")
    if np.iscomplexobj(Q.entries) and not np.iscomplexobj(v):
        v = v.astype(complex)
    w = pseudo_solve(Q, v, rank_tol)
    fitted = Q.entries @ w
    resid = v - fitted
    lsq_error = float(np.real(np.vdot(resid, resid)))
    norm_sq = max(float(np.real(np.vdot(w, fitted))), 0.0)
    nullspace_residual = float(np.linalg.norm(Q.entries @ resid))
    return InterpolationResult(
        alpha=w,
        fitted_values=fitted,
        lsq_error=lsq_error,
        rkhs_norm=float(np.sqrt(norm_sq)),
        nullspace_residual=nullspace_residual,
        rank=rank_of(Q, rank_tol),
        rank_tol=rank_tol,
    )
