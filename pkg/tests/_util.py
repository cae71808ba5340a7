"""Shared instance generators for the test suite.

Solver-accuracy tests use quasi-uniform point sets (minimum-separation
rejection sampling) so that Gram conditioning stays moderate and the
comparisons measure solver correctness instead of conditioning.
"""

import numpy as np

import rkhs_approx as ra


def sep_points(rng, n, d=2, box=3.0, min_sep=0.5):
    """n random points in [0, box]^d with pairwise separation >= min_sep."""
    pts = []
    while len(pts) < n:
        cand = rng.uniform(0, box, size=d)
        if all(np.linalg.norm(cand - p) >= min_sep for p in pts):
            pts.append(cand)
    return np.asarray(pts)


def ring_points(rng, n, radius=0.55, jitter=0.05):
    """Well-separated disk points near a circle of the given radius."""
    theta = 2 * np.pi * (np.arange(n) + rng.uniform(0, 1)) / n
    rho = radius + jitter * (rng.random(n) - 0.5)
    return rho * np.exp(1j * theta)


def random_measure(rng, n, d=2, min_sep=0.5):
    w = rng.uniform(0.2, 1.0, n)
    return ra.make_discrete_measure(sep_points(rng, n, d=d, min_sep=min_sep), w / w.sum())


def random_disk_measure(rng, n):
    w = rng.uniform(0.2, 1.0, n)
    return ra.make_discrete_measure(ring_points(rng, n), w / w.sum())


def random_psd(rng, n, rank=None):
    """Random Hermitian PSD matrix with controllable rank."""
    r = n if rank is None else rank
    b = rng.normal(size=(n, r))
    return b @ b.T


def random_gaussian_problem(rng, n_max=20, cost=None, p=2.0):
    n = int(rng.integers(2, n_max + 1))
    mu = random_measure(rng, n)
    g = rng.normal(size=n)
    return ra.ProblemSpec(
        kernel=ra.Gaussian(2.0),
        measure=mu,
        targets=g,
        cost=cost if cost is not None else ra.Squared(),
        reg_exponent=p,
    )


def batch_objective(Q, mu, g, q, p, A):
    """Vectorized J over rows of A for Power(q) cost (grid-search oracle)."""
    U = A @ Q - g[None, :]
    data = np.sum(mu[None, :] * np.abs(U) ** q, axis=1)
    s = np.maximum(np.einsum("ij,jk,ik->i", A, Q, A), 0.0)
    return data + s ** (p / 2.0)


def grid_search_min(Q, mu, g, q, p, n, radius=2.0, final_step=2.5e-6):
    """Brute-force hierarchical grid minimizer (independent of the solver).

    Full product grid (9 per axis) around the incumbent, window shrunk 4x
    per level; passes through resolution 1e-2 on the way down. Convex
    objective + shrinking window makes this a global search over the box.
    """
    c = np.zeros(n)
    step = radius / 2.0
    best = np.inf
    while step > final_step:
        axes = [c[k] + step * np.arange(-4, 5) for k in range(n)]
        mesh = np.meshgrid(*axes, indexing="ij")
        A = np.stack([m.ravel() for m in mesh], axis=1)
        vals = batch_objective(Q, mu, g, q, p, A)
        i = int(np.argmin(vals))
        best = float(vals[i])
        c = A[i]
        step /= 4.0
    return best, c
