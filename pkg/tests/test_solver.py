import math

import numpy as np
import pytest

from rdn.errors import SingularOperator, StationaryOfMerit
from rdn.linalg import symmetrize
from rdn.manifold import SpdPoint, exp_map, inner, random_spd
from rdn.objectives import Family, GradientField, Objective, minimizer
from rdn.solver import (
    ArmijoResult,
    DirectionKind,
    Method,
    SolverConfig,
    Status,
    armijo_stepsize,
    direction,
    solve,
)


class ConstantField:
    """X(P) = C with a singular Newton system everywhere.

    The merit phi(P) = tr(C P^{-1} C P^{-1}) / 2 still has the honest
    gradient -sym(C P^{-1} C), so the steepest-descent safeguard makes
    progress even though no singularity exists.
    """

    def __init__(self, c):
        self.c = symmetrize(c)

    def field_value(self, p):
        return self.c

    def hess_apply(self, p, v):
        pinv = p.inv()
        return -0.5 * symmetrize(v @ pinv @ self.c + self.c @ pinv @ v)

    def newton_solve(self, p):
        raise SingularOperator("derivative has no inverse")

    def merit_value(self, p):
        return 0.5 * inner(p, self.c, self.c)

    def merit_gradient(self, p):
        return -symmetrize(self.c @ p.inv() @ self.c)

    def fallback_direction(self, p):
        return -self.merit_gradient(p)


class FlatMeritField:
    """Nonzero field whose declared merit gradient vanishes identically."""

    def field_value(self, p):
        return np.eye(p.dim)

    def hess_apply(self, p, v):
        return np.zeros_like(v)

    def newton_solve(self, p):
        raise SingularOperator("derivative has no inverse")

    def merit_value(self, p):
        return 1.0

    def merit_gradient(self, p):
        return np.zeros((p.dim, p.dim))

    def fallback_direction(self, p):
        return np.zeros((p.dim, p.dim))


class RejectingMerit(GradientField):
    """Well-posed directions, but every trial merit reads as infinite."""

    def merit_value(self, p):
        return math.inf


def f1_problem(b=0.1):
    return GradientField(Objective(Family.F1, 1.0, b))


class TestSolverConfig:
    @pytest.mark.parametrize("sigma", [0.0, 0.5, -0.1, 0.7])
    def test_sigma_strictly_inside_half_interval(self, sigma):
        with pytest.raises(ValueError):
            SolverConfig(sigma=sigma)

    def test_sigma_interior_accepted(self):
        SolverConfig(sigma=0.49999)
        SolverConfig(sigma=1e-12)

    def test_other_bounds(self):
        with pytest.raises(ValueError):
            SolverConfig(grad_tol=0.0)
        with pytest.raises(ValueError):
            SolverConfig(max_iters=0)
        with pytest.raises(ValueError):
            SolverConfig(max_backtracks=-1)


class TestDirection:
    def test_newton_direction_scalar(self):
        v, kind = direction(f1_problem(), SpdPoint(np.array([[1.0]])))
        assert kind is DirectionKind.NEWTON
        assert v[0, 0] == pytest.approx(-9.0, rel=1e-13)

    def test_singular_system_falls_back_to_merit_descent(self):
        field = ConstantField(np.eye(3))
        p = random_spd(3, 1.0, 2.0, seed=5)
        v, kind = direction(field, p)
        assert kind is DirectionKind.GRADIENT_FALLBACK
        assert inner(p, field.merit_gradient(p), v) < 0.0

    def test_zero_fallback_raises(self):
        with pytest.raises(StationaryOfMerit):
            direction(FlatMeritField(), SpdPoint(np.eye(2)))


class TestArmijo:
    def test_full_step_in_quadratic_regime(self):
        problem = f1_problem()
        p = SpdPoint(np.array([[0.100001]]))
        res = armijo_stepsize(problem, p, problem.newton_solve(p), sigma=1e-4)
        assert res.accepted and res.alpha == 1.0 and res.backtracks == 0

    def test_overshoot_backtracks_to_scalar_oracle_step(self):
        # scalar oracle: lambda(t) = 10 e^{-99 t}, phi = (1 - 0.1/lambda)^2 / 2
        sigma = 1e-4
        v_scalar = 10.0 - 10.0 * 100.0
        phi = lambda lam: 0.5 * (1.0 - 0.1 / lam) ** 2
        j = 0
        while True:
            t = 2.0**-j
            if phi(10.0 * math.exp(t * v_scalar / 10.0)) <= (1.0 - 2.0 * sigma * t) * phi(10.0):
                break
            j += 1
        assert j == 5  # frozen from the oracle above

        problem = f1_problem()
        p = SpdPoint(np.array([[10.0]]))
        res = armijo_stepsize(problem, p, problem.newton_solve(p), sigma=sigma)
        assert res.accepted
        assert res.alpha == 2.0**-j and res.backtracks == j
        assert res.evaluations == j + 1

    def test_exhausted_search_reports_failure(self):
        problem = RejectingMerit(Objective(Family.F1, 1.0, 0.1))
        p = SpdPoint(np.array([[2.0]]))
        res = armijo_stepsize(
            problem, p, problem.newton_solve(p), sigma=1e-4, max_backtracks=8, merit=1.0
        )
        assert not res.accepted
        assert res.point is None

    def test_returns_accepted_point_and_merit(self):
        problem = f1_problem()
        p = SpdPoint(np.array([[10.0]]))
        res = armijo_stepsize(problem, p, problem.newton_solve(p), sigma=1e-4)
        assert isinstance(res, ArmijoResult)
        assert res.merit == pytest.approx(problem.merit_value(res.point), rel=1e-15)


class TestSolve:
    def test_start_at_minimizer_converges_immediately(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        point, trace = solve(GradientField(obj), minimizer(obj, 4))
        assert trace.status is Status.CONVERGED
        assert trace.nit == 0 and trace.he == 0 and trace.ge == 0
        assert np.array_equal(point.matrix, minimizer(obj, 4).matrix)

    def test_full_method_matches_scalar_recurrence(self):
        obj = Objective(Family.F1, 1.0, 0.5)
        seen = []
        cfg = SolverConfig(grad_tol=1e-300, max_iters=10, method=Method.FULL)
        solve(GradientField(obj), SpdPoint(np.array([[3.0]])), cfg,
              on_iterate=lambda k, p: seen.append(p.matrix[0, 0]))
        assert len(seen) >= 8  # hits the fixed point exactly within the cap
        lam = 3.0
        for k in range(1, len(seen)):
            lam *= math.exp(1.0 - 2.0 * lam)
            assert seen[k] == pytest.approx(lam, rel=1e-12)

    def test_full_method_overflow_is_a_status(self):
        obj = Objective(Family.F2, 1.0, 0.001)
        point, trace = solve(
            GradientField(obj), SpdPoint(np.array([[1.0]])), SolverConfig(method=Method.FULL)
        )
        assert trace.status is Status.STEP_OVERFLOW
        assert point.matrix[0, 0] == 1.0  # last good iterate is returned

    def test_max_iters_status(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        _, trace = solve(
            GradientField(obj),
            SpdPoint(np.array([[9.0]])),
            SolverConfig(max_iters=2, method=Method.FULL),
        )
        assert trace.status is Status.MAX_ITERS
        assert trace.nit == 2

    def test_line_search_failure_status(self):
        problem = RejectingMerit(Objective(Family.F1, 1.0, 0.1))
        _, trace = solve(problem, SpdPoint(np.array([[2.0]])), SolverConfig(max_backtracks=5))
        assert trace.status is Status.LINE_SEARCH_FAILED
        assert trace.nit == 0

    def test_stationary_of_merit_status(self):
        _, trace = solve(FlatMeritField(), SpdPoint(np.eye(3)), SolverConfig())
        assert trace.status is Status.STATIONARY_OF_MERIT
        assert trace.nit == 0

    def test_gradient_fallback_decreases_merit(self):
        field = ConstantField(np.eye(3))
        p0 = random_spd(3, 1.0, 2.0, seed=5)
        _, trace = solve(field, p0, SolverConfig(max_iters=12))
        assert trace.status is Status.MAX_ITERS
        assert all(r.direction_kind is DirectionKind.GRADIENT_FALLBACK for r in trace.records)
        merits = [r.merit for r in trace.records]
        assert all(a > b for a, b in zip(merits, merits[1:]))

    def test_damped_counters(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        _, trace = solve(GradientField(obj), SpdPoint(np.array([[10.0]])), SolverConfig())
        assert trace.status is Status.CONVERGED
        assert trace.he == trace.nit
        backtracks = sum(r.backtracks for r in trace.records)
        assert trace.ge == 2 * trace.nit + backtracks
        assert backtracks > 0 and trace.ge > trace.nit

    def test_full_counters(self):
        obj = Objective(Family.F1, 1.0, 1.0)
        _, trace = solve(
            GradientField(obj), SpdPoint(np.array([[4.0]])), SolverConfig(method=Method.FULL)
        )
        assert trace.status is Status.CONVERGED
        assert trace.he == trace.nit == trace.ge

    def test_record_fields(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        _, trace = solve(GradientField(obj), SpdPoint(np.array([[10.0]])), SolverConfig())
        for i, rec in enumerate(trace.records):
            assert rec.k == i
            assert rec.merit >= 0.0
            assert rec.alpha == 2.0 ** -round(math.log2(1.0 / rec.alpha))
            assert 0.0 < rec.alpha <= 1.0

    def test_on_iterate_sees_start_and_every_step(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        ks = []
        _, trace = solve(
            GradientField(obj), SpdPoint(np.array([[10.0]])), SolverConfig(),
            on_iterate=lambda k, p: ks.append(k),
        )
        assert ks == list(range(trace.nit + 1))

    def test_damped_equals_full_once_full_step_accepted(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        problem = GradientField(obj)
        points = []
        _, trace = solve(
            problem, random_spd(5, 9.0, 10.0, seed=2), SolverConfig(),
            on_iterate=lambda k, p: points.append(p),
        )
        assert trace.status is Status.CONVERGED
        unit_steps = [r.k for r in trace.records if r.alpha == 1.0]
        assert unit_steps
        for k in unit_steps:
            v, kind = direction(problem, points[k])
            assert kind is DirectionKind.NEWTON
            manual = exp_map(points[k], v).matrix
            got = points[k + 1].matrix
            assert np.linalg.norm(got - manual) <= 1e-12 * np.linalg.norm(manual)

    def test_elapsed_is_positive(self):
        obj = Objective(Family.F1, 1.0, 0.1)
        _, trace = solve(GradientField(obj), SpdPoint(np.array([[2.0]])), SolverConfig())
        assert trace.elapsed > 0.0
