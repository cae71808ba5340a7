import numpy as np
import pytest

import rkhs_approx as ra
from rkhs_approx.errors import (
    DimensionMismatch,
    NonSmoothPointWarning,
    NotConvergedWarning,
    UnsupportedCombination,
    UnsupportedExponent,
)
from rkhs_approx.solver import _is_smooth_setup

from _util import random_gaussian_problem, random_measure, ring_points, sep_points

COSTS = [ra.Squared(), ra.Power(1.5), ra.Power(2.5), ra.Huber(0.5), ra.EpsInsensitive(0.2)]


def _scalar_spec(q_val=1.0, mu=1.0, g=2.0, cost=None, p=2.0):
    measure = ra.make_discrete_measure([[0.0]], [mu])
    return ra.ProblemSpec(
        kernel=ra.CustomGram([[q_val]]),
        measure=measure,
        targets=[g],
        cost=cost or ra.Squared(),
        reg_exponent=p,
    )


class TestCostFunctions:
    def test_vanish_on_diagonal_and_nonnegative(self):
        rng = np.random.default_rng(0)
        for cost in COSTS:
            t = np.abs(rng.normal(size=50))
            assert np.all(cost.psi(t) >= 0)
            assert np.all(cost.psi(np.zeros(3)) == 0)

    def test_power_needs_q_at_least_one(self):
        with pytest.raises(Exception):
            ra.Power(0.5)

    def test_convexity_witness(self):
        # J(mid) <= (J(a1) + J(a2)) / 2 + 1e-10 over random pairs, each cost, p >= 1
        rng = np.random.default_rng(1)
        for cost in COSTS:
            for p in (1.0, 1.5, 2.0, 3.0):
                spec = random_gaussian_problem(rng, n_max=8, cost=cost, p=p)
                for _ in range(100):
                    a1 = rng.normal(size=spec.n)
                    a2 = rng.normal(size=spec.n)
                    mid = ra.objective(spec, 0.5 * (a1 + a2))
                    avg = 0.5 * (ra.objective(spec, a1) + ra.objective(spec, a2))
                    assert mid <= avg + 1e-10


class TestObjective:
    def test_zero_candidate_bound(self):
        # J(0) equals the weighted cost of the zero function
        rng = np.random.default_rng(2)
        for cost in COSTS:
            spec = random_gaussian_problem(rng, n_max=6, cost=cost)
            expected = float(np.sum(spec.measure.weights * cost.psi(np.abs(spec.targets))))
            assert ra.objective(spec, np.zeros(spec.n)) == pytest.approx(expected, rel=1e-13)

    def test_zero_targets_zero_alpha(self):
        spec = _scalar_spec(g=0.0)
        assert ra.objective(spec, [0.0]) == 0.0

    def test_scalar_arithmetic(self):
        spec = _scalar_spec()
        assert ra.objective(spec, [1.0]) == pytest.approx(2.0, rel=1e-14)

    def test_dimension_mismatch(self):
        spec = _scalar_spec()
        with pytest.raises(DimensionMismatch):
            ra.objective(spec, [1.0, 2.0])


class TestGradient:
    def test_stationary_at_closed_form(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            spec = random_gaussian_problem(rng, n_max=12)
            sol = ra.solve_closed_form(spec)
            assert np.linalg.norm(ra.gradient(spec, sol.alpha)) <= 1e-8

    def test_zero_at_global_minimum(self):
        spec = _scalar_spec(g=0.0)
        assert np.all(ra.gradient(spec, [0.0]) == 0)

    def test_finite_differences_real(self):
        rng = np.random.default_rng(4)
        h = 1e-6
        for cost in (ra.Squared(), ra.Huber(0.5), ra.Power(2.5)):
            for p in (1.5, 2.0, 3.0):
                spec = random_gaussian_problem(rng, n_max=6, cost=cost, p=p)
                alpha = rng.normal(size=spec.n)
                grad = ra.gradient(spec, alpha)
                for i in range(spec.n):
                    e = np.zeros(spec.n)
                    e[i] = h
                    fd = (ra.objective(spec, alpha + e) - ra.objective(spec, alpha - e)) / (2 * h)
                    assert fd == pytest.approx(grad[i], rel=1e-5, abs=1e-8)

    def test_finite_differences_complex_realified(self):
        rng = np.random.default_rng(5)
        z = ring_points(rng, 5)
        mu = ra.make_discrete_measure(z, np.full(5, 0.2))
        spec = ra.ProblemSpec(
            kernel=ra.Szego(),
            measure=mu,
            targets=rng.normal(size=5) + 1j * rng.normal(size=5),
            cost=ra.Squared(),
            reg_exponent=2.0,
        )
        alpha = rng.normal(size=5) + 1j * rng.normal(size=5)
        grad = ra.gradient(spec, alpha)
        h = 1e-6
        for i in range(5):
            for direction, part in ((1.0, np.real), (1j, np.imag)):
                e = np.zeros(5, complex)
                e[i] = direction * h
                fd = (ra.objective(spec, alpha + e) - ra.objective(spec, alpha - e)) / (2 * h)
                assert fd == pytest.approx(part(grad[i]), rel=1e-5, abs=1e-8)

    def test_squared_p2_matches_formula(self):
        rng = np.random.default_rng(6)
        spec = random_gaussian_problem(rng, n_max=8)
        q = spec.gram().entries
        w = spec.measure.weights
        alpha = rng.normal(size=spec.n)
        expected = 2 * q @ (w * (q @ alpha - spec.targets)) + 2 * q @ alpha
        np.testing.assert_allclose(ra.gradient(spec, alpha), expected, rtol=1e-12)

    def test_nonsmooth_point_warns_and_returns_subgradient(self):
        spec = _scalar_spec(g=1.0, cost=ra.Power(1.0), p=2.0)
        with pytest.warns(NonSmoothPointWarning):
            g = ra.gradient(spec, [1.0])  # residual exactly 0: kink of |.|
        assert np.isfinite(g).all()


class TestClosedForm:
    def test_scalar_example(self):
        sol = ra.solve_closed_form(_scalar_spec())
        np.testing.assert_allclose(sol.alpha, [1.0], rtol=1e-14)
        assert sol.objective == pytest.approx(2.0, rel=1e-14)
        assert sol.method == "closed_form"

    def test_zero_targets_give_zero_solution_exactly(self):
        rng = np.random.default_rng(7)
        mu = random_measure(rng, 6)
        spec = ra.ProblemSpec(
            kernel=ra.Gaussian(2.0), measure=mu, targets=np.zeros(6),
            cost=ra.Squared(), reg_exponent=2.0,
        )
        sol = ra.solve_closed_form(spec)
        assert np.linalg.norm(sol.alpha) == 0.0
        assert sol.objective == 0.0

    def test_rejects_other_costs_and_exponents(self):
        with pytest.raises(UnsupportedCombination):
            ra.solve_closed_form(_scalar_spec(cost=ra.Huber(1.0)))
        with pytest.raises(UnsupportedCombination):
            ra.solve_closed_form(_scalar_spec(p=1.5))

    def test_solves_original_normal_equations(self):
        # the whitened Cholesky route must satisfy (I + WQ) alpha = W g
        rng = np.random.default_rng(8)
        for _ in range(10):
            spec = random_gaussian_problem(rng, n_max=15)
            sol = ra.solve_closed_form(spec)
            q = spec.gram().entries
            w = spec.measure.weights
            resid = sol.alpha + w * (q @ sol.alpha) - w * spec.targets
            assert np.linalg.norm(resid) <= 1e-10 * max(1, np.linalg.norm(w * spec.targets))

    def test_solution_invariants(self):
        rng = np.random.default_rng(9)
        spec = random_gaussian_problem(rng, n_max=10)
        sol = ra.solve_closed_form(spec)
        assert sol.objective == pytest.approx(sol.data_term + sol.reg_term, rel=1e-10)
        assert sol.reg_term == pytest.approx(sol.rkhs_norm ** spec.reg_exponent, rel=1e-10)


class TestIterative:
    def test_matches_closed_form(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            spec = random_gaussian_problem(rng, n_max=12)
            cf = ra.solve_closed_form(spec)
            it = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-9))
            assert it.converged
            assert np.linalg.norm(it.alpha - cf.alpha) <= 1e-8 * max(1, np.linalg.norm(cf.alpha))

    def test_zero_targets_converge_to_zero(self):
        rng = np.random.default_rng(11)
        for cost in (ra.Squared(), ra.Huber(0.3), ra.Power(1.5)):
            mu = random_measure(rng, 5)
            spec = ra.ProblemSpec(
                kernel=ra.Gaussian(2.0), measure=mu, targets=np.zeros(5),
                cost=cost, reg_exponent=2.0,
            )
            sol = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-10))
            assert sol.objective <= 1e-12

    def test_rejects_p_below_one(self):
        with pytest.raises(UnsupportedExponent):
            ra.solve_iterative(_scalar_spec(p=0.5))

    def test_monotone_best_objective_trace(self):
        rng = np.random.default_rng(12)
        for cost in (ra.Squared(), ra.EpsInsensitive(0.2), ra.Power(1.0)):
            spec = random_gaussian_problem(rng, n_max=8, cost=cost, p=1.5)
            sol = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-8, seed=1))
            trace = np.asarray(sol.objective_trace)
            assert np.all(np.diff(trace) <= 0)

    def test_restart_determinism_smooth_costs(self):
        # the computational face of optimizer uniqueness for p > 1
        rng = np.random.default_rng(13)
        tol = 1e-9
        for cost, p in [(ra.Squared(), 3.0), (ra.Huber(0.4), 2.0), (ra.Power(1.5), 1.5)]:
            spec = random_gaussian_problem(rng, n_max=7, cost=cost, p=p)
            sols = [
                ra.solve_iterative(spec, ra.IterativeOptions(tol=tol, seed=s)) for s in range(3)
            ]
            for a in range(3):
                for b in range(a + 1, 3):
                    scale = max(1.0, np.linalg.norm(sols[a].alpha))
                    assert (
                        np.linalg.norm(sols[a].alpha - sols[b].alpha) <= 10 * tol * scale
                    )

    def test_p_equal_one_runs_without_uniqueness_claim(self):
        # p = 1 admits optimizers but the strict-convexity argument fails;
        # the solver only reports what it found
        rng = np.random.default_rng(14)
        spec = random_gaussian_problem(rng, n_max=5, cost=ra.Squared(), p=1.0)
        sol = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-8))
        assert np.isfinite(sol.objective)

    def test_not_converged_warns(self):
        rng = np.random.default_rng(15)
        spec = random_gaussian_problem(rng, n_max=10)
        with pytest.warns(NotConvergedWarning):
            sol = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-13, max_iter=3))
        assert not sol.converged

    def test_data_term_fidelity(self):
        # recompute the data term from scratch through evaluate()
        rng = np.random.default_rng(16)
        spec = random_gaussian_problem(rng, n_max=6, cost=ra.Huber(0.7), p=2.0)
        sol = ra.solve_iterative(spec, ra.IterativeOptions(tol=1e-10))
        pts = spec.measure.points
        vals = np.asarray(
            [
                sum(sol.alpha[j] * ra.evaluate(spec.kernel, pts[i], pts[j]) for j in range(spec.n))
                for i in range(spec.n)
            ]
        )
        data = float(np.sum(spec.measure.weights * spec.cost.psi(np.abs(vals - spec.targets))))
        assert data == pytest.approx(sol.data_term, rel=1e-10)

    def test_smoothness_classifier(self):
        assert _is_smooth_setup(ra.Squared(), 2.0)
        assert not _is_smooth_setup(ra.EpsInsensitive(0.1), 2.0)
        assert not _is_smooth_setup(ra.Power(1.0), 2.0)
        assert not _is_smooth_setup(ra.Squared(), 1.0)


class TestAutoSolve:
    def test_dispatches_closed_form(self):
        sol = ra.solve(_scalar_spec())
        assert sol.method == "closed_form"

    def test_dispatches_iterative(self):
        sol = ra.solve(_scalar_spec(cost=ra.Huber(1.0)))
        assert sol.method == "iterative"


class TestRepresenterCertificate:
    def test_generic_probes_strictly_increase(self):
        rng = np.random.default_rng(17)
        spec = random_gaussian_problem(rng, n_max=8)
        sol = ra.solve_closed_form(spec)
        probes = sep_points(rng, 5, box=3.0, min_sep=0.3) + 5.0  # away from support
        report = ra.representer_certificate(spec, sol, probes)
        assert report.passed(-1e-9)
        assert all(not row.in_span for row in report.rows)
        assert all(row.min_increase > 0 for row in report.rows)

    def test_probe_section_already_in_span(self):
        # rank-deficient explicit Gram: the probe's section is a combination
        # of the support sections, so the orthogonal component vanishes
        rng = np.random.default_rng(18)
        b = rng.normal(size=(3, 2))
        entries = np.zeros((4, 4))
        rows = np.vstack([b, (b[0] + b[1])[None, :]])  # last section dependent
        entries = rows @ rows.T
        kern = ra.CustomGram(entries)
        mu = ra.make_discrete_measure([[0.0], [1.0], [2.0]], np.full(3, 1 / 3))
        spec = ra.ProblemSpec(
            kernel=kern, measure=mu, targets=rng.normal(size=3), cost=ra.Squared(), reg_exponent=2.0
        )
        sol = ra.solve_closed_form(spec)
        report = ra.representer_certificate(spec, sol, [[3.0]])
        assert report.rows[0].in_span
        assert abs(report.rows[0].min_increase) <= 1e-9

    def test_five_random_probes_on_closed_form(self):
        rng = np.random.default_rng(19)
        for _ in range(3):
            spec = random_gaussian_problem(rng, n_max=10)
            sol = ra.solve_closed_form(spec)
            probes = sep_points(rng, 5, box=3.0, min_sep=0.3) - 4.0
            assert ra.representer_certificate(spec, sol, probes).passed(-1e-9)

    def test_probe_on_support_rejected(self):
        rng = np.random.default_rng(20)
        spec = random_gaussian_problem(rng, n_max=5)
        sol = ra.solve_closed_form(spec)
        with pytest.raises(Exception):
            ra.representer_certificate(spec, sol, [spec.measure.points[0]])


def test_regularization_limit_zero_targets():
    # scaling the data toward zero targets drives the optimizer to zero;
    # at g = 0 the closed form is exactly zero
    rng = np.random.default_rng(21)
    mu = random_measure(rng, 6)
    g = rng.normal(size=6)
    norms = []
    for scale in (1.0, 0.1, 0.01, 0.0):
        spec = ra.ProblemSpec(
            kernel=ra.Gaussian(2.0), measure=mu, targets=scale * g,
            cost=ra.Squared(), reg_exponent=2.0,
        )
        norms.append(np.linalg.norm(ra.solve_closed_form(spec).alpha))
    assert norms[0] > norms[1] > norms[2] > norms[3]
    assert norms[3] == 0.0
