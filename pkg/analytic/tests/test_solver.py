import math

import numpy as np
from django.test import SimpleTestCase
from scipy.optimize import brentq

from analytic.formulas import (
    choreography_radius,
    circle_action,
    force_balance_residual,
    lower_bound,
    lower_bound_from,
    mismatch_f,
    radius_r1,
    radius_r2,
)
from analytic.solver import one_plus_minus, radius_sweep, solve_lambda
from core.exceptions import ConvergenceError, DomainError
from core.params import ProblemParams


def params(**overrides):
    fields = dict(alpha=1.0, beta=1.0, m=1.0, M=1.0, n=3)
    fields.update(overrides)
    return ProblemParams(**fields)


def random_params(rng):
    return ProblemParams(
        alpha=float(rng.choice([0.5, 1.0, 2.0])),
        beta=float(rng.choice([0.5, 1.0, 2.0])),
        m=float(rng.uniform(0.1, 10.0)),
        M=float(rng.uniform(0.1, 10.0)),
        n=int(rng.integers(2, 7)),
    )


class SolveLambdaTests(SimpleTestCase):
    def test_defaults(self):
        report = solve_lambda(params())
        self.assertLess(report.f_residual, 1e-12)
        self.assertTrue(-1.0 < report.lambda_tilde < 1.0)
        self.assertAlmostEqual(report.r1 / report.r2, 1.0, places=10)
        self.assertAlmostEqual(report.radius, 1.121, places=2)

    def test_matches_an_independent_root_finder(self):
        p = params()
        oracle = brentq(lambda lam: mismatch_f(lam, p), -1 + 1e-6, 1 - 1e-6, xtol=1e-15)
        self.assertAlmostEqual(solve_lambda(p).lambda_tilde, oracle, places=10)

    def test_random_parameter_sets(self):
        rng = np.random.default_rng(2024)
        for _ in range(20):
            p = random_params(rng)
            with self.subTest(params=p):
                report = solve_lambda(p)
                self.assertLess(abs(report.r1 - report.r2), 1e-10 * report.radius)
                self.assertLess(abs(force_balance_residual(report.radius, p)), 1e-8 * report.radius)

    def test_lower_bound_is_attained_by_the_circle(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            p = random_params(rng)
            report = solve_lambda(p)
            bound = lower_bound_from(*one_plus_minus(report), p)
            self.assertAlmostEqual(bound / circle_action(report.radius, p).total, 1.0, places=9)

    def test_lower_bound_below_circle_elsewhere(self):
        p = params()
        report = solve_lambda(p)
        circle = circle_action(report.radius, p).total
        for lam in (-0.5, 0.0, 0.5):
            if abs(lam - report.lambda_tilde) > 1e-3:
                self.assertLess(lower_bound(lam, p), circle)

    def test_tiny_mutual_mass_tends_to_single_particle(self):
        report = solve_lambda(params(m=1e-8))
        self.assertGreater(report.lambda_tilde, 1 - 1e-6)
        self.assertAlmostEqual(report.radius, radius_r1(1.0, 1.0, 1.0), places=6)
        self.assertLess(report.f_residual, 1e-12)

    def test_tiny_center_mass_tends_to_choreography(self):
        report = solve_lambda(params(M=1e-8))
        self.assertLess(report.lambda_tilde, -1 + 1e-6)
        self.assertAlmostEqual(report.radius, choreography_radius(1.0, 1.0, 3), places=6)

    def test_budget_exhausted(self):
        with self.assertRaises(ConvergenceError) as ctx:
            solve_lambda(params(), max_bisections=3, polish=False)
        self.assertEqual(ctx.exception.iterations, 3)
        self.assertGreater(ctx.exception.residual, 1e-12)

    def test_centers_off_the_unit_sphere(self):
        with self.assertRaises(DomainError):
            solve_lambda(params(c1=(2.0, 0.0, 0.0), c2=(-2.0, 0.0, 0.0)))


class LimitCaseTests(SimpleTestCase):
    def test_no_center_mass(self):
        report = solve_lambda(params(M=0.0))
        self.assertEqual(report.lambda_tilde, -1.0)
        self.assertEqual(report.radius, choreography_radius(1.0, 1.0, 3))
        self.assertAlmostEqual(report.radius, radius_r2(-1.0, 1.0, 1.0, 3), places=14)

    def test_no_moving_mass(self):
        report = solve_lambda(params(m=0.0))
        self.assertEqual(report.lambda_tilde, 1.0)
        self.assertAlmostEqual(report.radius, math.sqrt(2 ** (2 / 3) - 1), places=14)
        self.assertEqual(one_plus_minus(report), (2.0, 0.0))

    def test_no_moving_mass_needs_strong_centers(self):
        with self.assertRaises(DomainError):
            solve_lambda(params(m=0.0, M=0.4))

    def test_no_mass_at_all(self):
        with self.assertRaises(DomainError):
            solve_lambda(params(m=0.0, M=0.0))

    def test_invalid_params(self):
        with self.assertRaises(DomainError):
            solve_lambda(params(alpha=-1.0))


class RadiusSweepTests(SimpleTestCase):
    def test_radius_grows_and_lambda_falls_with_mass(self):
        masses = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
        for n in (2, 3, 5):
            with self.subTest(n=n):
                points = radius_sweep(params(n=n), masses)
                self.assertEqual([p.m for p in points], masses)
                radii = [p.radius for p in points]
                lambdas = [p.lambda_tilde for p in points]
                self.assertTrue(all(a < b for a, b in zip(radii, radii[1:])))
                self.assertTrue(all(a > b for a, b in zip(lambdas, lambdas[1:])))

    def test_input_order_is_kept(self):
        points = radius_sweep(params(), [2.0, 0.5])
        self.assertEqual([p.m for p in points], [2.0, 0.5])
        self.assertGreater(points[0].radius, points[1].radius)

    def test_nonpositive_mass(self):
        with self.assertRaises(DomainError):
            radius_sweep(params(), [1.0, 0.0])
        with self.assertRaises(DomainError):
            radius_sweep(params(), [-1.0])
