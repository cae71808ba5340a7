"""Kernel functions, Gram matrices, and norm algebra on finite spans.

The kernel registry is closed: five analytic variants (Gaussian, Laplacian,
Polynomial on R^d; Szego and Bergman on the unit disk) plus
:class:`CustomGram`, which accepts an explicit positive-semidefinite matrix
for everything else. Arbitrary user kernel *code* is not accepted, because
positive semidefiniteness of code cannot be checked; a matrix can be.

Conventions. ``evaluate(k, x, y)`` returns K(x, y) with the second argument
conjugated on the disk, so that K(x, y) as a function of x is the kernel
section attached to y, and a finite-span function f = sum_j alpha_j K(., x_j)
satisfies f(x_i) = (Q alpha)_i with Q the Gram matrix Q_ij = K(x_i, x_j).
The squared norm of that span element is alpha^H Q alpha.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import _backend
from .core import (
    DISK,
    EUCLIDEAN,
    FMeasure,
    _check_distinct,
    disk_points,
    euclidean_points,
    point_domain,
)
from .errors import (
    DimensionMismatch,
    DomainMismatch,
    InvariantViolation,
    NegativeNormWarning,
)

#: relative floor used by the positive-semidefiniteness acceptance check
PSD_TOL = 1e-9

INDEX = "index"


@dataclass(frozen=True)
class Gaussian:
    """exp(-gamma * ||x - y||^2) on R^d."""

    gamma: float
    domain = EUCLIDEAN
    is_complex = False

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvariantViolation("Gaussian gamma must be > 0")


@dataclass(frozen=True)
class Laplacian:
    """exp(-gamma * ||x - y||) on R^d."""

    gamma: float
    domain = EUCLIDEAN
    is_complex = False

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvariantViolation("Laplacian gamma must be > 0")


@dataclass(frozen=True)
class Polynomial:
    """(<x, y> + offset)^degree on R^d, integer degree >= 1, offset >= 0."""

    degree: int
    offset: float = 1.0
    domain = EUCLIDEAN
    is_complex = False

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvariantViolation("Polynomial degree must be an integer >= 1")
        if self.offset < 0:
            raise InvariantViolation("Polynomial offset must be >= 0")
        object.__setattr__(self, "degree", int(self.degree))


@dataclass(frozen=True)
class Szego:
    """1 / (1 - conj(w) z) on the open unit disk."""

    domain = DISK
    is_complex = True


@dataclass(frozen=True)
class Bergman:
    """1 / (1 - conj(w) z)^2 on the open unit disk."""

    domain = DISK
    is_complex = True


@dataclass(frozen=True)
class CustomGram:
    """User-supplied kernel given as an explicit M x M PSD matrix.

    Points are the row indices 0..M-1 (passed as integer-valued Euclidean
    points). The matrix is required to be Hermitian within 1e-12 of its
    scale, is then symmetrized exactly, and must pass the PSD check.
    """

    entries: np.ndarray
    domain = INDEX

    def __post_init__(self):
        a = np.asarray(self.entries)
        a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvariantViolation(f"explicit Gram must be square, got {a.shape}")
        scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
        if np.max(np.abs(a - a.conj().T)) > 1e-12 * scale:
            raise InvariantViolation("explicit Gram is not Hermitian")
        a = _hermitianize(a)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        lo = float(np.linalg.eigvalsh(a)[0]) if a.size else 0.0
        hi = float(np.linalg.eigvalsh(a)[-1]) if a.size else 0.0
        if lo < -PSD_TOL * max(1.0, hi):
            raise InvariantViolation(
                f"explicit Gram is not positive semidefinite (min eigenvalue {lo:g})"
            )

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.entries))

    @property
    def size(self) -> int:
        return self.entries.shape[0]


Kernel = Union[Gaussian, Laplacian, Polynomial, Szego, Bergman, CustomGram]


@dataclass(frozen=True)
class GramMatrix:
    """Dense Hermitian kernel matrix over a point list.

    Hermitian exactly by construction (lower triangle filled from the
    upper, diagonal forced real). ``eigh()`` caches the spectral
    decomposition, which downstream modules reuse.
    """

    entries: np.ndarray
    points: np.ndarray
    _eig: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def eigh(self):
        """Eigenvalues (ascending) and eigenvectors, computed once."""
        if self._eig is None:
            w, v = np.linalg.eigh(self.entries)
            object.__setattr__(self, "_eig", (w, v))
        return self._eig


def _hermitianize(c: np.ndarray) -> np.ndarray:
    """Upper triangle wins; diagonal forced real."""
    q = np.triu(c, 1)
    q = q + q.conj().T
    q[np.diag_indices_from(q)] = np.real(np.diag(c))
    return q


def _coerce_domain(kernel: Kernel, points) -> np.ndarray:
    """Validate points against the kernel's domain and pack them."""
    if kernel.domain == EUCLIDEAN:
        pts = np.asarray(points)
        if np.iscomplexobj(pts):
            raise DomainMismatch(f"{type(kernel).__name__} kernel needs real coordinates")
        return euclidean_points(points)
    if kernel.domain == DISK:
        pts = np.asarray(points)
        if not np.iscomplexobj(pts):
            if pts.ndim > 1:
                raise DomainMismatch(f"{type(kernel).__name__} kernel needs complex disk points")
            pts = pts.astype(complex)
        z = disk_points(pts)
        if np.any(np.abs(z) >= 1.0):
            worst = np.max(np.abs(z))
            raise DomainMismatch(f"disk kernel needs |z| < 1 strictly, got |z| = {worst:g}")
        return z
    # explicit-Gram kernel: integer row indices, possibly packed as (N, 1)
    pts = np.asarray(points)
    if np.iscomplexobj(pts):
        raise DomainMismatch("explicit-Gram kernel indexes rows with integers")
    arr = euclidean_points(pts)
    if arr.shape[1] != 1:
        raise DomainMismatch("explicit-Gram kernel points must be scalar indices")
    idx = arr[:, 0]
    if np.any(idx != np.round(idx)):
        raise DomainMismatch("explicit-Gram kernel indices must be integral")
    if np.any(idx < 0) or np.any(idx >= kernel.size):
        raise DomainMismatch(f"index out of range for {kernel.size} x {kernel.size} Gram")
    return arr


def _cross(kernel: Kernel, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    impl = _backend.impl
    if isinstance(kernel, Gaussian):
        return impl.gaussian_cross(np.ascontiguousarray(X), np.ascontiguousarray(Y), kernel.gamma)
    if isinstance(kernel, Laplacian):
        return impl.laplacian_cross(np.ascontiguousarray(X), np.ascontiguousarray(Y), kernel.gamma)
    if isinstance(kernel, Polynomial):
        return impl.polynomial_cross(
            np.ascontiguousarray(X), np.ascontiguousarray(Y), kernel.degree, kernel.offset
        )
    if isinstance(kernel, Szego):
        return impl.szego_cross(np.ascontiguousarray(X), np.ascontiguousarray(Y))
    if isinstance(kernel, Bergman):
        return impl.bergman_cross(np.ascontiguousarray(X), np.ascontiguousarray(Y))
    if isinstance(kernel, CustomGram):
        i = X[:, 0].astype(int)
        j = Y[:, 0].astype(int)
        return kernel.entries[np.ix_(i, j)]
    raise DomainMismatch(f"unknown kernel {kernel!r}")


def _diagonal(kernel: Kernel, X: np.ndarray) -> np.ndarray:
    """K(x, x) for each packed point, by the closed per-variant formula."""
    if isinstance(kernel, (Gaussian, Laplacian)):
        return np.ones(len(X))
    if isinstance(kernel, Polynomial):
        return (np.einsum("ij,ij->i", X, X) + kernel.offset) ** kernel.degree
    if isinstance(kernel, Szego):
        return 1.0 / (1.0 - np.abs(X) ** 2)
    if isinstance(kernel, Bergman):
        return 1.0 / (1.0 - np.abs(X) ** 2) ** 2
    idx = X[:, 0].astype(int)
    return np.real(kernel.entries[idx, idx])


def cross_matrix(kernel: Kernel, X, Y) -> np.ndarray:
    """Matrix of K(x_i, y_j); rows follow X, columns follow Y."""
    return _cross(kernel, _coerce_domain(kernel, X), _coerce_domain(kernel, Y))


def evaluate(kernel: Kernel, x, y):
    """K(x, y) for two single points (Hermitian: K(y, x) = conj(K(x, y)))."""
    X = _coerce_domain(kernel, _pack_single(kernel, x))
    Y = _coerce_domain(kernel, _pack_single(kernel, y))
    val = _cross(kernel, X, Y)[0, 0]
    return complex(val) if np.iscomplexobj(val) else float(val)


def _pack_single(kernel: Kernel, x) -> np.ndarray:
    if kernel.domain == DISK:
        return np.asarray([complex(x)])
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr[None]
    return arr[None, :]


def gram(kernel: Kernel, points) -> GramMatrix:
    """Assemble the N x N Hermitian Gram matrix over distinct points."""
    pts = _coerce_domain(kernel, points)
    _check_distinct(pts)
    c = _cross(kernel, pts, pts)
    q = _hermitianize(c)
    q[np.diag_indices_from(q)] = _diagonal(kernel, pts)
    return GramMatrix(entries=q, points=pts)


def min_eigenvalue(Q: GramMatrix) -> float:
    """Smallest eigenvalue of the Hermitian Gram matrix."""
    return float(Q.eigh()[0][0])


def rkhs_norm_sq(alpha, Q: GramMatrix) -> float:
    """alpha^H Q alpha, clamped to >= 0.

    This is the squared norm of sum_i alpha_i K(., x_i); round-off can push
    it slightly negative on rank-deficient spans, and downstream p/2 powers
    need a nonnegative value. A clamp beyond 1e-9 is reported.
    """
    a = np.asarray(alpha)
    if a.shape != (Q.n,):
        raise DimensionMismatch(f"coefficient vector {a.shape} vs Gram of size {Q.n}")
    val = float(np.real(np.vdot(a, Q.entries @ a)))
    if val < 0:
        if val < -1e-9:
            warnings.warn(
                f"clamped negative squared norm {val:g} to 0", NegativeNormWarning, stacklevel=2
            )
        val = 0.0
    return val


def embed_fmeasure(kernel: Kernel, nu: FMeasure, eval_points) -> np.ndarray:
    """Evaluate f(y) = sum_i w_i K(y, x_i) at each eval point.

    This is the finitely supported instance of integrating the feature map
    against a signed/complex measure.
    """
    if point_domain(nu.points) == DISK and kernel.domain != DISK:
        raise DomainMismatch("measure lives on the disk but kernel does not")
    c = cross_matrix(kernel, eval_points, nu.points)
    return c @ nu.weights
