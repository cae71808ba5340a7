"""Frame-bound estimation for the family of kernel sections under a measure.

For f = sum_j alpha_j K(., x_j) and a finitely supported probability measure
mu on the x_i, the two quadratic forms

    integral |f|^2 dmu = alpha^H Q W Q alpha      (W = diag of weights)
    ||f||^2            = alpha^H Q alpha

make the p = 2 frame bounds on the span exactly the extreme generalized
Rayleigh quotients of (QWQ, Q) restricted to range(Q). For other p the
bounds are estimated by sampling unit-norm span elements.

The restriction to the span is deliberate: over an infinite-dimensional
ambient space the lower bound of a finitely supported measure is always 0
(functions vanishing on the support), so the span-restricted quantity is the
one a finite computation can certify. Reports say so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DiscreteMeasure
from .errors import DegenerateSpan, UnsupportedExponent
from .kernels import GramMatrix, Kernel, gram

RANK_TOL = 1e-10


@dataclass(frozen=True)
class FrameBounds:
    """Lower/upper bounds A <= B for the p-frame inequality on the span."""

    lower: float
    upper: float
    p: float
    method: str  # "eigen_p2" | "sampled"
    n_samples: Optional[int] = None
    seed: Optional[int] = None


def _whitened_basis(Q: GramMatrix):
    """Columns B with alpha = B c unit-parameterizing range(Q) in RKHS norm."""
    lam, vec = Q.eigh()
    lam_max = float(lam[-1]) if Q.n else 0.0
    if lam_max <= 0:
        raise DegenerateSpan("Gram matrix has rank 0")
    keep = lam > RANK_TOL * lam_max
    return vec[:, keep] / np.sqrt(lam[keep])[None, :], lam[keep], vec[:, keep]


def frame_bounds_p2(kernel: Kernel, mu: DiscreteMeasure) -> FrameBounds:
    """Exact p = 2 bounds on the span: extreme eigenvalues after whitening.

    In the eigenbasis of Q (eigenvalues above the rank cutoff), the Rayleigh
    quotient becomes c^H M c / c^H c with M = L^(1/2) V^H W V L^(1/2), so A
    and B are the extreme eigenvalues of the small Hermitian M.
    """
    Q = gram(kernel, mu.points)
    _, lam, vec = _whitened_basis(Q)
    half = vec * np.sqrt(lam)[None, :]
    m = half.conj().T @ (mu.weights[:, None] * half)
    ev = np.linalg.eigvalsh(m)
    return FrameBounds(lower=float(ev[0]), upper=float(ev[-1]), p=2.0, method="eigen_p2")


def frame_ratio_sample(
    kernel: Kernel, mu: DiscreteMeasure, p: float, n_samples: int, seed
) -> FrameBounds:
    """Inner bound estimates from random unit-norm span elements.

    Samples coefficients in the whitened basis (null directions excluded),
    normalizes to unit RKHS norm, and records min/max of
    sum_i mu_i |f(x_i)|^p. Estimates are inner: min >= A, max <= B on the
    span. With a fixed seed the sample stream is nested, so the min is
    non-increasing and the max non-decreasing in ``n_samples``.
    """
    if p < 1:
        raise UnsupportedExponent(f"p-frame sampling needs p >= 1, got {p}")
    if n_samples < 1:
        raise UnsupportedExponent("need at least one sample")
    Q = gram(kernel, mu.points)
    basis, _, _ = _whitened_basis(Q)
    r = basis.shape[1]
    rng = np.random.default_rng(seed)
    is_complex = np.iscomplexobj(Q.entries)
    lo, hi = np.inf, -np.inf
    for _ in range(int(n_samples)):
        c = rng.standard_normal(r)
        if is_complex:
            c = c + 1j * rng.standard_normal(r)
        c /= np.linalg.norm(c)
        alpha = basis @ c
        vals = Q.entries @ alpha
        ratio = float(np.sum(mu.weights * np.abs(vals) ** p))
        lo = min(lo, ratio)
        hi = max(hi, ratio)
    return FrameBounds(
        lower=lo, upper=hi, p=float(p), method="sampled", n_samples=int(n_samples), seed=seed
    )


@dataclass(frozen=True)
class NormEquivalenceReport:
    """Constants for the norm equivalence c1 ||f|| <= ||f||_Lp(mu) <= c2 ||f||.

    ``ratios`` holds every sampled value of integral |f|^p dmu over unit-norm
    span elements (histogram material); c1, c2 are A^(1/p), B^(1/p) from the
    eigen route when p = 2 and from the sampled bounds otherwise.
    """

    p: float
    c1: float
    c2: float
    sampled: FrameBounds
    eigen: Optional[FrameBounds]
    ratios: np.ndarray
    rank: int
    n_points: int
    note: str

    @property
    def full_rank(self) -> bool:
        return self.rank == self.n_points


def norm_equivalence_report(
    kernel: Kernel, mu: DiscreteMeasure, p: float, n_samples: int, seed
) -> NormEquivalenceReport:
    if p < 1:
        raise UnsupportedExponent(f"norm equivalence report needs p >= 1, got {p}")
    Q = gram(kernel, mu.points)
    basis, _, _ = _whitened_basis(Q)
    rank = basis.shape[1]
    rng = np.random.default_rng(seed)
    is_complex = np.iscomplexobj(Q.entries)
    ratios = np.empty(int(n_samples))
    for k in range(int(n_samples)):
        c = rng.standard_normal(rank)
        if is_complex:
            c = c + 1j * rng.standard_normal(rank)
        c /= np.linalg.norm(c)
        alpha = basis @ c
        vals = Q.entries @ alpha
        ratios[k] = np.sum(mu.weights * np.abs(vals) ** p)
    sampled = FrameBounds(
        lower=float(ratios.min()),
        upper=float(ratios.max()),
        p=float(p),
        method="sampled",
        n_samples=int(n_samples),
        seed=seed,
    )
    eigen = frame_bounds_p2(kernel, mu) if p == 2 else None
    src = eigen if eigen is not None else sampled
    note = (
        "bounds hold on the span of the support sections"
        if rank == mu.n
        else f"rank-deficient span (rank {rank} of {mu.n}); bounds restricted to the span"
    )
    return NormEquivalenceReport(
        p=float(p),
        c1=float(src.lower ** (1.0 / p)),
        c2=float(src.upper ** (1.0 / p)),
        sampled=sampled,
        eigen=eigen,
        ratios=ratios,
        rank=rank,
        n_points=mu.n,
        note=note,
    )
