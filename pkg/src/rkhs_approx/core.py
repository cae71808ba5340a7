"""Scalar fields, points, and finitely supported measures.

Two point domains are supported:

* Euclidean points in R^d, stored as an ``(N, d)`` float64 array;
* points of the open unit disk in C, stored as an ``(N,)`` complex128 array.

A probability measure (:class:`DiscreteMeasure`) carries strictly positive
weights summing to one; a signed/complex measure (:class:`FMeasure`) carries
arbitrary scalar weights. Both require pairwise-distinct support points,
compared exactly after canonicalization (``-0.0`` folded into ``0.0``); near
duplicates are deliberately not merged, since the Gram-matrix semantics
downstream need a definite support set.

All containers are frozen and their arrays are marked read-only, so values
can be shared freely across threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    EmptySupport,
    InvalidSampler,
    InvariantViolation,
    NonPositiveWeight,
    RenormalizationWarning,
)

REAL = "real"
COMPLEX = "complex"

EUCLIDEAN = "euclidean"
DISK = "disk"

#: |sum(weights) - 1| above this triggers a RenormalizationWarning.
RENORM_REPORT_TOL = 1e-9


def euclidean_points(points) -> np.ndarray:
    """Coerce to an (N, d) float64 point array; 1-D input becomes (N, 1)."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected (N, d) coordinates, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InvariantViolation("non-finite coordinate in point set")
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def disk_points(points) -> np.ndarray:
    """Coerce to an (N,) complex128 point array (unit-disk domain)."""
    arr = np.asarray(points, dtype=complex)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a flat list of complex points, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise InvariantViolation("non-finite coordinate in point set")
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def as_point_array(points) -> np.ndarray:
    """Coerce a point list, inferring the domain from the element type."""
    if isinstance(points, np.ndarray) and np.iscomplexobj(points):
        return disk_points(points)
    if not isinstance(points, np.ndarray):
        flat = np.asarray(points)
        if np.iscomplexobj(flat):
            return disk_points(flat)
        return euclidean_points(flat)
    return euclidean_points(points)


def point_domain(points: np.ndarray) -> str:
    return DISK if np.iscomplexobj(points) else EUCLIDEAN


def canonical_keys(points: np.ndarray) -> list:
    """Hashable per-point keys; adding 0.0 folds -0.0 into 0.0."""
    if point_domain(points) == DISK:
        return [(z.real + 0.0, z.imag + 0.0) for z in points]
    return [tuple(c + 0.0 for c in row) for row in points]


def _check_distinct(points: np.ndarray) -> None:
    keys = canonical_keys(points)
    if len(set(keys)) != len(keys):
        seen = set()
        for i, k in enumerate(keys):
            if k in seen:
                raise DuplicatePoint(f"point index {i} repeats an earlier point")
            seen.add(k)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported probability measure: distinct points, weights > 0, total mass 1."""

    points: np.ndarray
    weights: np.ndarray
    #: factor the input weights were divided by (their original sum)
    renorm_factor: float = 1.0

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def domain(self) -> str:
        return point_domain(self.points)


@dataclass(frozen=True)
class FMeasure:
    """Finitely supported signed or complex measure (arbitrary scalar weights)."""

    points: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def domain(self) -> str:
        return point_domain(self.points)


def make_discrete_measure(points, weights) -> DiscreteMeasure:
    """Validate and renormalize a finitely supported probability measure.

    Weights must be strictly positive; they are divided by their sum so the
    result has total mass 1 exactly (up to roundoff). A deviation of the
    input mass from 1 beyond 1e-9 is reported via RenormalizationWarning and
    recorded in ``renorm_factor``.
    """
    pts = as_point_array(points)
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1:
        raise DimensionMismatch(f"weights must be 1-D, got shape {w.shape}")
    if len(pts) != len(w):
        raise DimensionMismatch(f"{len(pts)} points but {len(w)} weights")
    if len(w) == 0:
        raise EmptySupport("a probability measure needs at least one support point")
    if not np.all(np.isfinite(w)):
        raise InvariantViolation("non-finite weight")
    if np.any(w <= 0):
        bad = int(np.argmax(w <= 0))
        raise NonPositiveWeight(f"weight {w[bad]} at index {bad} is not > 0")
    _check_distinct(pts)
    total = float(np.sum(w))
    if abs(total - 1.0) > RENORM_REPORT_TOL:
        warnings.warn(
            f"weights summed to {total!r}; renormalized to total mass 1",
            RenormalizationWarning,
            stacklevel=2,
        )
    w = w / total
    w.setflags(write=False)
    return DiscreteMeasure(points=pts, weights=w, renorm_factor=total)


def make_fmeasure(points, weights) -> FMeasure:
    """Validate a finitely supported signed/complex measure."""
    pts = as_point_array(points)
    w = np.asarray(weights)
    w = w.astype(complex) if np.iscomplexobj(w) else w.astype(float)
    if w.ndim != 1:
        raise DimensionMismatch(f"weights must be 1-D, got shape {w.shape}")
    if len(pts) != len(w):
        raise DimensionMismatch(f"{len(pts)} points but {len(w)} weights")
    if len(w) and not np.all(np.isfinite(w)):
        raise InvariantViolation("non-finite weight")
    _check_distinct(pts)
    w.setflags(write=False)
    return FMeasure(points=pts, weights=w)


def total_variation(xi: FMeasure) -> float:
    """Total variation of a finitely supported measure: sum of |weights|."""
    return float(np.sum(np.abs(xi.weights)))


# -- realification ------------------------------------------------------------
#
# A complex coefficient vector alpha in C^N is identified with
# (Re alpha, Im alpha) in R^{2N}; a Hermitian form Q becomes the symmetric
# form [[Re Q, -Im Q], [Im Q, Re Q]]. Norms agree under this identification,
# which is what lets one optimizer core serve both fields.


def realify_vector(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag])


def unrealify_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if len(x) % 2:
        raise DimensionMismatch("realified vector must have even length")
    n = len(x) // 2
    return x[:n] + 1j * x[n:]


def realify_matrix(q) -> np.ndarray:
    q = np.asarray(q, dtype=complex)
    return np.block([[q.real, -q.imag], [q.imag, q.real]])


# -- samplers ------------------------------------------------------------------


@dataclass(frozen=True)
class BoxSampler:
    """Uniform distribution on an axis-aligned box, given per-axis bounds."""

    lows: tuple
    highs: tuple

    def __post_init__(self):
        lows = tuple(float(v) for v in self.lows)
        highs = tuple(float(v) for v in self.highs)
        object.__setattr__(self, "lows", lows)
        object.__setattr__(self, "highs", highs)
        if len(lows) != len(highs) or not lows:
            raise InvalidSampler("box bounds must be nonempty and of equal length")
        if any(lo >= hi for lo, hi in zip(lows, highs)):
            raise InvalidSampler("box must have lo < hi on every axis")

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        lo = np.asarray(self.lows)
        hi = np.asarray(self.highs)
        return lo + (hi - lo) * rng.random((n, len(lo)))


@dataclass(frozen=True)
class DiskSampler:
    """Uniform distribution on the open disk of given radius about 0."""

    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if not 0 < self.radius:
            raise InvalidSampler("disk radius must be positive")

    def draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        # area-uniform: radius ~ R*sqrt(U), angle uniform
        rho = self.radius * np.sqrt(rng.random(n))
        theta = 2 * np.pi * rng.random(n)
        return rho * np.exp(1j * theta)


def empirical_measure(sampler, n: int, seed) -> DiscreteMeasure:
    """n i.i.d. points from a built-in sampler with equal weights 1/n.

    Deterministic given ``seed``: the call owns a fresh PCG64 generator.
    """
    if not isinstance(sampler, (BoxSampler, DiskSampler)):
        raise InvalidSampler(f"not a built-in sampler: {sampler!r}")
    if n < 1:
        raise InvariantViolation("need at least one sample")
    rng = np.random.default_rng(seed)
    pts = sampler.draw(int(n), rng)
    return make_discrete_measure(pts, np.full(int(n), 1.0 / n))
