"""Uniform-disk approximation in the Hardy space, end to end.

Target g is a finite power series (a Bergman-space element); the data term
integrates |f - g|^2 against the uniform probability measure on the disk of
radius r < 1, and the penalty is the squared Hardy norm. Writing f and g in
the monomial basis, where the Hardy Gram matrix is the identity and the
uniform measure is diagonal on monomials, each coefficient decouples and the
stationarity condition per degree n reads

    (1 + (n + 1) / r^(2n)) a_n = b_n.

The module reproduces that answer numerically from a polar quadrature
discretization, exhibits the monomials as kernel-section integrals against
explicit densities on the disk (with closed-form total variation), and
bounds the total variation of the series of those representing measures.

Quadrature is Gauss-Legendre radially times a uniform (trapezoidal) angular
grid: the angular rule kills every off-diagonal monomial coupling below the
aliasing frequency exactly, which is what makes the discrete computation
match the analytic decoupling to roundoff.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DiscreteMeasure, make_discrete_measure, make_fmeasure
from .errors import (
    InvalidResolution,
    InvariantViolation,
    QuadratureTooCoarse,
    RadiusOutOfRange,
)
from .kernels import Szego, embed_fmeasure
from .solver import ProblemSpec, Squared, solve_closed_form

HARDY = "hardy"
BERGMAN = "bergman"


@dataclass(frozen=True)
class CoefficientFunction:
    """Finite power series sum_n coeffs[n] z^n, tagged with its home space."""

    coeffs: np.ndarray
    space: str

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1:
            raise InvariantViolation("coefficients must be a flat list")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if self.space not in (HARDY, BERGMAN):
            raise InvariantViolation(f"unknown space tag {self.space!r}")

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def norm_sq(self) -> float:
        a2 = np.abs(self.coeffs) ** 2
        if self.space == HARDY:
            return float(np.sum(a2))
        return float(np.sum(a2 / (np.arange(len(a2)) + 1.0)))

    def __call__(self, z):
        """Evaluate the series at complex points (Horner)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out


def _check_radius(r: float) -> float:
    r = float(r)
    if not 0.0 < r < 1.0:
        raise RadiusOutOfRange(f"need 0 < r < 1, got {r}")
    return r


@dataclass(frozen=True)
class QuadratureSpec:
    """Polar product rule: n_r Gauss-Legendre radial nodes x n_theta angles."""

    n_r: int
    n_theta: int

    def __post_init__(self):
        if self.n_r < 1 or self.n_theta < 3:
            raise InvalidResolution(f"need n_r >= 1 and n_theta >= 3, got {self}")


def polar_grid(r: float, quad: QuadratureSpec):
    """Nodes and area weights so that sum(w * f(nodes)) ~ integral of f over the disk.

    Radially exact for polynomials in rho of degree <= 2 n_r - 1 (after the
    area factor rho); angularly exact for frequencies |m| < n_theta.
    """
    r = _check_radius(r)
    x, wx = np.polynomial.legendre.leggauss(quad.n_r)
    rho = 0.5 * r * (x + 1.0)
    w_rho = 0.5 * r * wx
    theta = 2.0 * np.pi * np.arange(quad.n_theta) / quad.n_theta
    w_theta = 2.0 * np.pi / quad.n_theta
    nodes = (rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = ((w_rho * rho)[:, None] * np.full(quad.n_theta, w_theta)[None, :]).ravel()
    return nodes, weights


def disk_quadrature_measure(r: float, n_r: int, n_theta: int) -> DiscreteMeasure:
    """Polar-grid discretization of the uniform probability measure on D_r."""
    nodes, area_w = polar_grid(r, QuadratureSpec(n_r, n_theta))
    return make_discrete_measure(nodes, area_w / (np.pi * r * r))


def euler_lagrange_coeffs(b: CoefficientFunction, r: float) -> CoefficientFunction:
    """Per-degree stationarity solve: a_n = b_n / (1 + (n+1) / r^(2n))."""
    r = _check_radius(r)
    if b.space != BERGMAN:
        raise InvariantViolation("target coefficients must be tagged bergman")
    n = np.arange(len(b))
    a = b.coeffs / (1.0 + (n + 1.0) / r ** (2.0 * n))
    return CoefficientFunction(a, HARDY)


def shrinkage_factor(n: int, r: float) -> float:
    """The factor a_n / b_n = r^(2n) / (r^(2n) + n + 1), always in (0, 1)."""
    r = _check_radius(r)
    return r ** (2.0 * n) / (r ** (2.0 * n) + n + 1.0)


@dataclass(frozen=True)
class MonomialMeasure:
    """Complex measure with density ((k+1)/pi) r^(-2k-2) w^k on D_r.

    Integrating the kernel sections against it reproduces z^k exactly; its
    total variation has the closed form (2k+2)/(k+2) * r^(-k).
    """

    k: int
    r: float

    def __post_init__(self):
        _check_radius(self.r)
        if self.k < 0 or int(self.k) != self.k:
            raise InvariantViolation("monomial degree k must be a nonnegative integer")
        object.__setattr__(self, "k", int(self.k))

    def density(self, w):
        w = np.asarray(w, dtype=complex)
        return (self.k + 1) / np.pi * self.r ** (-2.0 * self.k - 2.0) * w**self.k

    def total_variation(self) -> float:
        return (2.0 * self.k + 2.0) / (self.k + 2.0) * self.r ** (-float(self.k))

    def discretize(self, quad: QuadratureSpec):
        """FMeasure on the polar grid approximating this density measure."""
        nodes, area_w = polar_grid(self.r, quad)
        return make_fmeasure(nodes, area_w * self.density(nodes))


def monomial_measure_total_variation(k: int, r: float) -> float:
    """Closed form (2k+2)/(k+2) * r^(-k) of the representing measure's mass."""
    return MonomialMeasure(k, r).total_variation()


@dataclass(frozen=True)
class MonomialRepresentationReport:
    k: int
    r: float
    quad: QuadratureSpec
    test_points: np.ndarray
    errors: np.ndarray
    max_error: float


def verify_monomial_representation(
    k: int, r: float, quad: QuadratureSpec, test_points
) -> MonomialRepresentationReport:
    """Quadrature check of z^k = integral of K(z, .) against the degree-k density.

    The only quadrature error left is angular aliasing, so the reported
    maximum error decays like (r |z|)^n_theta under refinement. A rule with
    n_theta <= 2k + 2 is flagged as too coarse.
    """
    if quad.n_theta <= 2 * k + 2:
        warnings.warn(
            f"n_theta={quad.n_theta} aliases the degree-{k} density (need > {2 * k + 2})",
            QuadratureTooCoarse,
            stacklevel=2,
        )
    z = np.asarray(test_points, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise RadiusOutOfRange("test points must satisfy |z| < 1")
    xi = MonomialMeasure(k, r).discretize(quad)
    approx = embed_fmeasure(Szego(), xi, z)
    errors = np.abs(approx - z**k)
    return MonomialRepresentationReport(
        k=k,
        r=_check_radius(r),
        quad=quad,
        test_points=z,
        errors=errors,
        max_error=float(errors.max()),
    )


def series_measure(a: CoefficientFunction, r: float, quad: QuadratureSpec):
    """Discretized sum of a_n-weighted monomial densities (one FMeasure).

    Integrating the kernel sections against it approximates the power series
    itself; refinement drives the pointwise gap to zero.
    """
    nodes, area_w = polar_grid(r, quad)
    dens = np.zeros(len(nodes), dtype=complex)
    for n, an in enumerate(a.coeffs):
        if an != 0:
            dens += an * MonomialMeasure(n, r).density(nodes)
    return make_fmeasure(nodes, area_w * dens)


@dataclass(frozen=True)
class TVBoundResult:
    """Partial sum of |a_n| ||xi_n|| against its closed-form upper bound."""

    partial_sum: float
    bound: float
    up_to: int


def tv_partial_sum_bound(b: CoefficientFunction, r: float, up_to: int) -> TVBoundResult:
    """Total-variation control of the series of representing measures.

    partial_sum = sum_{n <= up_to} |a_n| * (2n+2)/(n+2) * r^(-n), with a_n
    from the per-degree solve; the bound is the Cauchy-Schwarz split
    sqrt(sum |b_n|^2/(n+1)) * sqrt(sum 4 r^(2n)/(n+1)) over the same range.
    """
    r = _check_radius(r)
    if b.space != BERGMAN:
        raise InvariantViolation("target coefficients must be tagged bergman")
    a = euler_lagrange_coeffs(b, r)
    ns = np.arange(min(len(b), up_to + 1))
    partial = float(
        np.sum(np.abs(a.coeffs[: len(ns)]) * [(2 * n + 2) / (n + 2) * r ** (-float(n)) for n in ns])
    )
    b_sum = float(np.sum(np.abs(b.coeffs[: len(ns)]) ** 2 / (ns + 1.0)))
    all_ns = np.arange(up_to + 1)
    r_sum = float(np.sum(4.0 * r ** (2.0 * all_ns) / (all_ns + 1.0)))
    return TVBoundResult(partial_sum=partial, bound=float(np.sqrt(b_sum) * np.sqrt(r_sum)), up_to=up_to)


@dataclass(frozen=True)
class HardyDemoReport:
    r: float
    truncation: int
    quad: QuadratureSpec
    #: rows (n, formula coefficient, computed coefficient, |deviation|)
    table: tuple
    max_deviation: float
    tail_shrinkage: float
    tail_estimate: float
    node_check_points: Optional[np.ndarray] = None
    node_check_deviation: Optional[float] = None

    @property
    def computed(self) -> np.ndarray:
        return np.asarray([row[2] for row in self.table])

    @property
    def formula(self) -> np.ndarray:
        return np.asarray([row[1] for row in self.table])


def hardy_demo(
    b: CoefficientFunction,
    r: float,
    truncation: Optional[int] = None,
    quad: QuadratureSpec = QuadratureSpec(64, 64),
    node_check: bool = False,
    node_check_quad: QuadratureSpec = QuadratureSpec(12, 24),
) -> HardyDemoReport:
    """Solve the discretized disk problem and compare with the per-degree formula.

    The optimization runs in the monomial basis restricted to degrees below
    ``truncation`` (default len(b) + 8): with the Hardy Gram equal to the
    identity there, the normal equations are (V^H D V + I) a = V^H D g for
    the node Vandermonde V and weight diagonal D, the same reduction the
    kernel-section solver uses, just expressed in this basis.

    With ``node_check`` a second, independent route solves the same
    discretized problem in the kernel-section basis at the nodes of a
    coarser rule and the two optimizers are compared at probe points.
    """
    r = _check_radius(r)
    if b.space != BERGMAN:
        raise InvariantViolation("target coefficients must be tagged bergman")
    m = int(truncation) if truncation is not None else len(b) + 8
    if m < len(b):
        raise InvariantViolation(f"truncation {m} below coefficient count {len(b)}")

    mu = disk_quadrature_measure(r, quad.n_r, quad.n_theta)
    nodes = mu.points
    g_vals = b(nodes)
    v = nodes[:, None] ** np.arange(m)[None, :]
    wv = mu.weights[:, None] * v
    normal = v.conj().T @ wv
    normal[np.diag_indices_from(normal)] += 1.0
    a_computed = np.linalg.solve(normal, v.conj().T @ (mu.weights * g_vals))

    a_formula = np.zeros(m, dtype=complex)
    el = euler_lagrange_coeffs(b, r)
    a_formula[: len(el)] = el.coeffs
    deviations = np.abs(a_computed - a_formula)
    table = tuple(
        (n, complex(a_formula[n]), complex(a_computed[n]), float(deviations[n])) for n in range(m)
    )

    b_tail = abs(b.coeffs[m]) if m < len(b) else 0.0
    report = HardyDemoReport(
        r=r,
        truncation=m,
        quad=quad,
        table=table,
        max_deviation=float(deviations.max()),
        tail_shrinkage=shrinkage_factor(m, r),
        tail_estimate=float(shrinkage_factor(m, r) * b_tail),
    )
    if not node_check:
        return report

    mu_c = disk_quadrature_measure(r, node_check_quad.n_r, node_check_quad.n_theta)
    spec = ProblemSpec(
        kernel=Szego(),
        measure=mu_c,
        targets=b(mu_c.points),
        cost=Squared(),
        reg_exponent=2.0,
    )
    sol = solve_closed_form(spec)
    probes = 0.5 * r * np.exp(2j * np.pi * np.arange(7) / 7)
    node_vals = embed_fmeasure(Szego(), make_fmeasure(mu_c.points, sol.alpha), probes)
    mono_vals = CoefficientFunction(a_computed, HARDY)(probes)
    dev = float(np.max(np.abs(node_vals - mono_vals)))
    return HardyDemoReport(
        r=report.r,
        truncation=report.truncation,
        quad=report.quad,
        table=report.table,
        max_deviation=report.max_deviation,
        tail_shrinkage=report.tail_shrinkage,
        tail_estimate=report.tail_estimate,
        node_check_points=probes,
        node_check_deviation=dev,
    )
