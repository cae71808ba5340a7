"""Regularized approximation against a finitely supported measure.

The optimizer of

    integral c(f(x), g(x)) dmu(x)  +  ||f||^p

over the whole space lies in the span of the kernel sections at supp(mu)
when mu is finitely supported, so the search reduces to a coefficient
vector alpha on the support with objective

    J(alpha) = sum_i mu_i * c((Q alpha)_i, g_i) + (alpha^H Q alpha)^(p/2).

Every built-in cost is of the form c(a, b) = psi(|a - b|) with psi convex
and nondecreasing, so J is convex for p >= 1. Squared cost with p = 2 has
the closed form (I + W Q) alpha = W g (W = diag of weights); everything else
goes through gradient descent with backtracking line search on the realified
problem, with a diminishing-step fallback at nonsmooth kinks.

Complex problems are handled in the realified sense: a complex vector G
represents the gradient on R^{2N} through the pairing Re(G^H d), which gives
exactly the same iterates as literally unpacking into real and imaginary
parts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .core import COMPLEX, REAL, DiscreteMeasure
from .errors import (
    DimensionMismatch,
    DomainMismatch,
    DuplicatePoint,
    InvariantViolation,
    NonSmoothPointWarning,
    NotConvergedWarning,
    UnsupportedCombination,
    UnsupportedExponent,
)
from .interpolate import pseudo_solve
from .kernels import GramMatrix, Kernel, gram, rkhs_norm_sq

# -- cost functions -----------------------------------------------------------
#
# Each variant defines psi(t) on t = |a - b| >= 0 together with a chosen
# element of the subdifferential; kink_mask flags arguments where psi is not
# differentiable (so callers can report the subgradient substitution).


@dataclass(frozen=True)
class Squared:
    """c(a, b) = |a - b|^2."""

    def psi(self, t):
        return t * t

    def dpsi(self, t):
        return 2.0 * t

    def kink_mask(self, t):
        return np.zeros(np.shape(t), dtype=bool)


@dataclass(frozen=True)
class Power:
    """c(a, b) = |a - b|^q with q >= 1."""

    q: float

    def __post_init__(self):
        if not self.q >= 1:
            raise InvariantViolation("Power exponent must be >= 1 to stay convex")

    def psi(self, t):
        return t**self.q

    def dpsi(self, t):
        if self.q == 1.0:
            return np.ones(np.shape(t))
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        pos = t > 0
        out[pos] = self.q * t[pos] ** (self.q - 1.0)
        return out

    def kink_mask(self, t):
        if self.q == 1.0:
            return np.asarray(t) == 0
        return np.zeros(np.shape(t), dtype=bool)


@dataclass(frozen=True)
class Huber:
    """Quadratic below delta, linear above; continuously differentiable."""

    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise InvariantViolation("Huber delta must be > 0")

    def psi(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= self.delta, 0.5 * t * t, self.delta * (t - 0.5 * self.delta))

    def dpsi(self, t):
        return np.minimum(np.asarray(t, dtype=float), self.delta)

    def kink_mask(self, t):
        return np.zeros(np.shape(t), dtype=bool)


@dataclass(frozen=True)
class EpsInsensitive:
    """c(a, b) = max(0, |a - b| - eps); flat inside the tube."""

    eps: float

    def __post_init__(self):
        if self.eps < 0:
            raise InvariantViolation("eps must be >= 0")

    def psi(self, t):
        return np.maximum(0.0, np.asarray(t, dtype=float) - self.eps)

    def dpsi(self, t):
        # at the kink t == eps the subdifferential is [0, 1]; 0 keeps
        # iterates from chattering around the tube boundary
        return (np.asarray(t, dtype=float) > self.eps).astype(float)

    def kink_mask(self, t):
        return np.asarray(t) == self.eps


CostFunction = (Squared, Power, Huber, EpsInsensitive)


# -- problem and solution containers ------------------------------------------


@dataclass(frozen=True)
class ProblemSpec:
    """Kernel + measure + targets + cost + regularization exponent."""

    kernel: Kernel
    measure: DiscreteMeasure
    targets: np.ndarray
    cost: object
    reg_exponent: float
    _gram: GramMatrix = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.targets)
        t = t.astype(complex) if (self.kernel.is_complex or np.iscomplexobj(t)) else t.astype(float)
        if t.ndim != 1 or len(t) != self.measure.n:
            raise DimensionMismatch(
                f"{t.shape} targets for a measure with {self.measure.n} support points"
            )
        if not np.all(np.isfinite(t)):
            raise InvariantViolation("non-finite target value")
        if not isinstance(self.cost, CostFunction):
            raise UnsupportedCombination(f"unknown cost {self.cost!r}")
        if not self.reg_exponent > 0:
            raise UnsupportedExponent("regularization exponent must be > 0")
        t.setflags(write=False)
        object.__setattr__(self, "targets", t)

    @property
    def n(self) -> int:
        return self.measure.n

    @property
    def scalar_field(self) -> str:
        return COMPLEX if (self.kernel.is_complex or np.iscomplexobj(self.targets)) else REAL

    def gram(self) -> GramMatrix:
        if self._gram is None:
            object.__setattr__(self, "_gram", gram(self.kernel, self.measure.points))
        return self._gram


@dataclass(frozen=True)
class Solution:
    """Coefficients over supp(mu) plus objective decomposition and diagnostics."""

    alpha: np.ndarray
    objective: float
    data_term: float
    reg_term: float
    rkhs_norm: float
    iterations: int
    converged: bool
    method: str
    #: best-objective-so-far after each accepted iteration (non-increasing)
    objective_trace: tuple = field(default=(), repr=False)


# -- objective machinery -------------------------------------------------------


def _unit(u, t):
    """u / |u| with the 0/0 convention -> 0."""
    out = np.zeros_like(u)
    pos = t > 0
    out[pos] = u[pos] / t[pos]
    return out


class _Objective:
    """Caches Q, weights, and targets for repeated evaluation of one problem."""

    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self.Q = spec.gram().entries
        self.mu = spec.measure.weights
        self.g = spec.targets
        self.cost = spec.cost
        self.p = float(spec.reg_exponent)
        self.is_complex = spec.scalar_field == COMPLEX
        self.dtype = complex if self.is_complex else float

    def split(self, alpha):
        """(data_term, reg_term, norm_sq) at alpha."""
        alpha = np.asarray(alpha, dtype=self.dtype)
        u = self.Q @ alpha - self.g
        data = float(np.sum(self.mu * self.cost.psi(np.abs(u))))
        s = max(float(np.real(np.vdot(alpha, self.Q @ alpha))), 0.0)
        return data, s ** (self.p / 2.0), s

    def value(self, alpha) -> float:
        data, reg, _ = self.split(alpha)
        return data + reg

    def gradient(self, alpha, warn: bool = False):
        alpha = np.asarray(alpha, dtype=self.dtype)
        qx = self.Q @ alpha
        u = qx - self.g
        t = np.abs(u)
        if warn and bool(np.any(self.cost.kink_mask(t))):
            warnings.warn(
                "cost is nonsmooth at this point; returning a subgradient element",
                NonSmoothPointWarning,
                stacklevel=3,
            )
        r = self.mu * self.cost.dpsi(t) * _unit(u, t)
        grad = self.Q @ r
        s = max(float(np.real(np.vdot(alpha, qx))), 0.0)
        if s > 0.0:
            grad = grad + self.p * s ** (self.p / 2.0 - 1.0) * qx
        elif warn and self.p <= 1.0:
            warnings.warn(
                "norm term is nonsmooth at 0; returning subgradient 0",
                NonSmoothPointWarning,
                stacklevel=3,
            )
        return grad


def objective(spec: ProblemSpec, alpha) -> float:
    """J(alpha) = sum_i mu_i c((Q alpha)_i, g_i) + (alpha^H Q alpha)^(p/2)."""
    alpha = _check_coeffs(spec, alpha)
    return _Objective(spec).value(alpha)


def gradient(spec: ProblemSpec, alpha) -> np.ndarray:
    """Gradient of J in the realified sense (complex vector = paired reals).

    For squared cost and p = 2 this is 2 Q W (Q alpha - g) + 2 Q alpha. At
    kinks of the cost (or of the norm term at 0 when p <= 1) a subgradient
    element is returned and a NonSmoothPointWarning is issued.
    """
    alpha = _check_coeffs(spec, alpha)
    return _Objective(spec).gradient(alpha, warn=True)


def _check_coeffs(spec: ProblemSpec, alpha) -> np.ndarray:
    a = np.asarray(alpha)
    if a.shape != (spec.n,):
        raise DimensionMismatch(f"coefficient vector {a.shape} for {spec.n} support points")
    return a


def _solution_from(obj: _Objective, alpha, iterations, converged, method, trace=()) -> Solution:
    data, reg, s = obj.split(alpha)
    alpha = np.asarray(alpha, dtype=obj.dtype)
    alpha.setflags(write=False)
    return Solution(
        alpha=alpha,
        objective=data + reg,
        data_term=data,
        reg_term=reg,
        rkhs_norm=float(np.sqrt(s)),
        iterations=iterations,
        converged=converged,
        method=method,
        objective_trace=tuple(trace),
    )


# -- solvers -------------------------------------------------------------------


def solve_closed_form(spec: ProblemSpec, tol: float = 1e-10) -> Solution:
    """Exact solve for squared cost and p = 2.

    The stationarity system (I + W Q) alpha = W g is solved in whitened form:
    with S = W^(1/2) Q W^(1/2) (Hermitian PSD), alpha = W^(1/2) (I + S)^(-1)
    W^(1/2) g, which is the same solution through a Cholesky factorization
    of a provably positive definite matrix. The residual of the original
    system is checked against ``tol``.
    """
    if not isinstance(spec.cost, Squared) or spec.reg_exponent != 2:
        raise UnsupportedCombination(
            "closed form needs squared cost and exponent 2; use solve_iterative"
        )
    obj = _Objective(spec)
    Q, mu, g = obj.Q, obj.mu, np.asarray(spec.targets, dtype=obj.dtype)
    sw = np.sqrt(mu)
    A = (sw[:, None] * Q) * sw[None, :]
    A[np.diag_indices_from(A)] += 1.0
    cf = scipy.linalg.cho_factor(A, lower=True, check_finite=False)
    alpha = sw * scipy.linalg.cho_solve(cf, sw * g, check_finite=False)
    resid = alpha + mu * (Q @ alpha) - mu * g
    rel = float(np.linalg.norm(resid)) / max(1.0, float(np.linalg.norm(mu * g)))
    if rel > tol:
        warnings.warn(
            f"closed-form residual {rel:g} above {tol:g}", NotConvergedWarning, stacklevel=2
        )
    return _solution_from(obj, alpha, iterations=0, converged=rel <= tol, method="closed_form")


@dataclass(frozen=True)
class IterativeOptions:
    tol: float = 1e-8
    max_iter: int = 50000
    step_policy: str = "bb"  # "bb" or "halving"
    seed: Optional[int] = None


def _is_smooth_setup(cost, p: float) -> bool:
    """Whether the objective is differentiable along generic trajectories."""
    if isinstance(cost, EpsInsensitive):
        return False
    if isinstance(cost, Power) and cost.q == 1.0:
        return False
    return p > 1.0


def solve_iterative(spec: ProblemSpec, opts: IterativeOptions = IterativeOptions()) -> Solution:
    """Gradient descent with backtracking line search (subgradient fallback).

    Needs p >= 1 (for p < 1 the reduced problem is nonconvex and is
    rejected). The trial step is a Barzilai-Borwein estimate, backtracked
    until the objective drops below the worst of the last few accepted
    values minus the Armijo margin (the usual nonmonotone safeguard; a
    strictly monotone safeguard would degrade the method to steepest-descent
    rates). The best iterate so far is what the solver answers with, and
    ``objective_trace`` records its objective, so the reported sequence is
    non-increasing. When no decrease can be found at all (possible only at
    kinks of a nonsmooth cost), a diminishing non-monotone subgradient step
    is taken instead.

    Stopping. For smooth configurations the solver stops once the
    first-order error estimate ||grad|| / lambda_min_est falls below
    ``tol * max(1, ||alpha||)``, where lambda_min_est is the smallest
    curvature seen along accepted steps; ``tol`` therefore targets
    coefficient accuracy, which is what makes independent restarts land
    within a small multiple of ``tol`` of each other. Nonsmooth
    configurations stop on a windowed objective plateau instead. A run that
    exhausts ``max_iter`` returns ``converged=False`` and warns.
    """
    if spec.reg_exponent < 1:
        raise UnsupportedExponent(
            f"iterative solver needs p >= 1, got {spec.reg_exponent}; "
            "p < 1 makes the reduced problem nonconvex"
        )
    obj = _Objective(spec)
    Q = obj.Q
    n = spec.n

    if opts.seed is None:
        x = np.zeros(n, dtype=obj.dtype)
    else:
        rng = np.random.default_rng(opts.seed)
        x = rng.standard_normal(n).astype(obj.dtype)
        if obj.is_complex:
            x = x + 1j * rng.standard_normal(n)

    sigma = 1e-4
    memory = 10  # nonmonotone reference window
    window = 40  # plateau detection window
    smooth = _is_smooth_setup(obj.cost, obj.p)

    qx = Q @ x
    J = _value_from_parts(obj, x, qx)
    recent = [J]
    J_best, x_best = J, x.copy()
    trace = [J_best]
    eta_prev = 1.0
    x_old = None
    g_old = None
    lam_min_est = np.inf
    ok_streak = 0
    stalls = 0
    converged = False
    it = 0

    for it in range(1, opts.max_iter + 1):
        grad = _grad_from_parts(obj, x, qx)
        gg = float(np.real(np.vdot(grad, grad)))
        if not np.isfinite(gg):
            break
        if gg == 0.0:
            converged = True
            break

        if smooth and np.isfinite(lam_min_est) and lam_min_est > 0:
            # the curvature along visited directions overestimates the
            # smallest Hessian eigenvalue; pad the first-order error bound
            err_est = 100.0 * np.sqrt(gg) / lam_min_est
            if err_est <= opts.tol * max(1.0, float(np.linalg.norm(x))):
                ok_streak += 1
                if ok_streak >= 3:
                    # the certificate speaks for the current iterate; near the
                    # objective's float resolution it can be a strictly better
                    # coefficient vector than the best-objective one
                    x_best = x.copy()
                    converged = True
                    break
            else:
                ok_streak = 0

        if g_old is not None:
            dx = x - x_old
            dg = grad - g_old
            den = float(np.real(np.vdot(dx, dg)))
            num = float(np.real(np.vdot(dx, dx)))
            if den > 0 and np.isfinite(den) and num > 0:
                lam_min_est = min(lam_min_est, den / num)
                eta = min(max(num / den, 1e-14), 1e14) if opts.step_policy == "bb" else eta_prev * 2
            else:
                eta = eta_prev * 2.0
        else:
            eta = eta_prev
        x_old, g_old = x.copy(), grad

        v = Q @ grad
        ref = max(recent)
        accepted = False
        for _ in range(70):
            x_new = x - eta * grad
            qx_new = qx - eta * v
            J_new = _value_from_parts(obj, x_new, qx_new)
            if J_new <= ref - sigma * eta * gg:
                accepted = True
                break
            eta *= 0.5

        if accepted:
            x, qx, J = x_new, qx_new, J_new
            eta_prev = eta
        else:
            # nonsmooth stall: diminishing non-monotone subgradient step
            stalls += 1
            eta = eta_prev / stalls
            x = x - eta * grad
            qx = qx - eta * v
            J = _value_from_parts(obj, x, qx)

        recent.append(J)
        if len(recent) > memory:
            recent.pop(0)
        if it % 200 == 0:
            qx = Q @ x  # kill incremental drift
            J = _value_from_parts(obj, x, qx)
            recent[-1] = J

        if J < J_best:
            J_best = J
            x_best = x.copy()
        trace.append(J_best)
        if (not smooth or stalls > 0) and len(trace) > window:
            dec = trace[-window - 1] - trace[-1]
            if dec < opts.tol * max(1.0, abs(J_best)):
                converged = True
                break

    if not converged:
        warnings.warn(
            f"iterative solve stopped after {it} iterations without meeting tol={opts.tol:g}",
            NotConvergedWarning,
            stacklevel=2,
        )
    return _solution_from(
        obj, x_best, iterations=it, converged=converged, method="iterative", trace=trace
    )


def _value_from_parts(obj: _Objective, x, qx) -> float:
    u = qx - obj.g
    data = float(np.sum(obj.mu * obj.cost.psi(np.abs(u))))
    s = max(float(np.real(np.vdot(x, qx))), 0.0)
    return data + s ** (obj.p / 2.0)


def _grad_from_parts(obj: _Objective, x, qx):
    u = qx - obj.g
    t = np.abs(u)
    r = obj.mu * obj.cost.dpsi(t) * _unit(u, t)
    grad = obj.Q @ r
    s = max(float(np.real(np.vdot(x, qx))), 0.0)
    if s > 0.0:
        grad = grad + obj.p * s ** (obj.p / 2.0 - 1.0) * qx
    return grad


def solve(spec: ProblemSpec, opts: IterativeOptions = IterativeOptions()) -> Solution:
    """Closed form when available (squared cost, p = 2), else iterative."""
    if isinstance(spec.cost, Squared) and spec.reg_exponent == 2:
        return solve_closed_form(spec)
    return solve_iterative(spec, opts)


# -- representer certificate ----------------------------------------------------


@dataclass(frozen=True)
class CertificateRow:
    probe: object
    orth_norm_sq: float
    in_span: bool
    #: objective change for each (step, sign) tried, smallest first
    min_increase: float
    increases: tuple


@dataclass(frozen=True)
class CertificateReport:
    rows: tuple
    min_increase: float

    def passed(self, floor: float = -1e-9) -> bool:
        return self.min_increase >= floor


def representer_certificate(
    spec: ProblemSpec, sol: Solution, probe_points, steps=(1e-3, 1e-2, 1e-1)
) -> CertificateReport:
    """Check optimality against directions leaving the support span.

    For each probe y, the component h of K(., y) orthogonal to the span of
    the support sections vanishes at every support point, so perturbing the
    solution by +-t*h leaves the data term alone and can only grow the norm
    term; the observed objective change must be >= 0 up to roundoff. Probes
    whose section already lies in the span give a ~0 component and ~0 change.
    """
    base = spec.gram()
    probes = _coerce_probe_list(spec, probe_points)
    support_keys = set(_point_keys(spec.measure.points))
    obj = _Objective(spec)
    rows = []
    for y in probes:
        if _point_keys(np.asarray([y]))[0] in support_keys:
            raise DuplicatePoint(f"probe {y!r} is a support point")
        ext_pts = _append_point(spec.measure.points, y)
        Q_ext = gram(spec.kernel, ext_pts).entries
        q = Q_ext[:-1, -1]
        beta = pseudo_solve(base, q)
        gamma = np.concatenate([-beta, [1.0]])
        h_norm_sq = max(float(np.real(np.vdot(gamma, Q_ext @ gamma))), 0.0)
        kyy = float(np.real(Q_ext[-1, -1]))
        in_span = h_norm_sq <= 1e-10 * max(1.0, kyy)

        alpha_ext = np.concatenate([sol.alpha, [0.0]]).astype(Q_ext.dtype)
        j0 = _ext_objective(obj, Q_ext, alpha_ext)
        increases = []
        for t in steps:
            for sgn in (1.0, -1.0):
                jt = _ext_objective(obj, Q_ext, alpha_ext + (sgn * t) * gamma)
                increases.append(jt - j0)
        rows.append(
            CertificateRow(
                probe=y,
                orth_norm_sq=h_norm_sq,
                in_span=in_span,
                min_increase=min(increases),
                increases=tuple(increases),
            )
        )
    return CertificateReport(rows=tuple(rows), min_increase=min(r.min_increase for r in rows))


def _ext_objective(obj: _Objective, Q_ext, coeffs) -> float:
    vals = (Q_ext @ coeffs)[:-1]
    data = float(np.sum(obj.mu * obj.cost.psi(np.abs(vals - obj.g))))
    s = max(float(np.real(np.vdot(coeffs, Q_ext @ coeffs))), 0.0)
    return data + s ** (obj.p / 2.0)


def _point_keys(points):
    from .core import canonical_keys

    return canonical_keys(points)


def _coerce_probe_list(spec: ProblemSpec, probe_points):
    if spec.measure.domain == "disk":
        return [complex(z) for z in np.asarray(probe_points, dtype=complex)]
    arr = np.asarray(probe_points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape[1] != spec.measure.points.shape[1]:
        raise DomainMismatch(
            f"probe dimension {arr.shape[1]} vs support dimension {spec.measure.points.shape[1]}"
        )
    return [row for row in arr]


def _append_point(points, y):
    if np.iscomplexobj(points):
        return np.concatenate([points, [complex(y)]])
    return np.vstack([points, np.asarray(y, dtype=float)[None, :]])
