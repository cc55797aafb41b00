import numpy as np
from django.conf import settings
from django.test import SimpleTestCase, override_settings, tag

from analytic.formulas import circle_action, lower_bound_from
from analytic.solver import one_plus_minus, solve_lambda
from core.exceptions import CollisionError, DomainError
from core.params import ProblemParams
from minimize.optimizer import (
    MinimizeOptions,
    minimize,
    multistart,
    project,
    random_start,
    reference_radius,
)
from trajectory.choreography import ChoreographySystem, min_separation
from trajectory.paths import FourierPath, circle_path, random_path, resize
from verify.dynamics import ode_residual
from verify.geometry import circle_fit

DEFAULTS = ProblemParams(alpha=1.0, beta=1.0, m=1.0, M=1.0, n=3)
SMALL = MinimizeOptions(order=4, nodes=128, max_iters=500, grad_tol=1e-8)


def perturbed(radius, seed, scale=0.02, order=4):
    bump = random_path(np.random.default_rng(seed), 3, scale=scale * radius)
    return resize(circle_path(radius), order) + resize(bump, order)


class OptionsTests(SimpleTestCase):
    def test_invalid_options(self):
        with self.assertRaises(DomainError):
            MinimizeOptions(max_iters=0)
        with self.assertRaises(DomainError):
            MinimizeOptions(grad_tol=0.0)
        with self.assertRaises(DomainError):
            MinimizeOptions(step_init=-1.0)

    def test_defaults_follow_settings(self):
        opts = MinimizeOptions()
        expected = (settings.CHOREO2C_ORDER, settings.CHOREO2C_NODES, settings.CHOREO2C_MAX_ITERS)
        self.assertEqual((opts.order, opts.nodes, opts.max_iters), expected)
        with override_settings(CHOREO2C_ORDER=6, CHOREO2C_NODES=128, CHOREO2C_MAX_ITERS=50):
            opts = MinimizeOptions()
            self.assertEqual((opts.order, opts.nodes, opts.max_iters), (6, 128, 50))
            self.assertEqual(opts.quadrature.nodes, 128)
            self.assertEqual(MinimizeOptions(nodes=64).nodes, 64)

    def test_projection(self):
        path = random_path(np.random.default_rng(0), 4)
        cos_coeffs = path.cos_coeffs.copy()
        cos_coeffs[0] = (1.0, 2.0, 3.0)
        moved = FourierPath(cos_coeffs, path.sin_coeffs)
        self.assertTrue(np.all(project(moved).mean == 0.0))
        odd = project(moved, antiperiodic=True)
        self.assertTrue(np.all(odd.cos_coeffs[2::2] == 0.0))
        self.assertTrue(np.all(odd.sin_coeffs[1::2] == 0.0))


class MinimizeTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.radius = solve_lambda(DEFAULTS).radius

    def test_circle_is_already_critical(self):
        report = minimize(circle_path(self.radius), DEFAULTS, SMALL)
        self.assertTrue(report.converged)
        self.assertLessEqual(report.iters, 2)
        self.assertLess(report.grad_norm, 1e-8)

    def test_collision_start(self):
        through_center = FourierPath.from_harmonics(4, cos={1: (1.0, 0.0, 0.0)})
        with self.assertRaises(CollisionError):
            minimize(through_center, DEFAULTS, SMALL)

    def test_perturbed_circle_relaxes_to_the_analytic_circle(self):
        report = minimize(perturbed(1.2 * self.radius, seed=4), DEFAULTS, SMALL)
        self.assertTrue(report.converged)
        fit = circle_fit(report.path, SMALL.nodes)
        self.assertLess(abs(fit.radius - self.radius), 1e-4)
        self.assertLess(fit.speed_dev, 1e-4)
        self.assertLess(ode_residual(report.path, DEFAULTS, SMALL.nodes), 1e-6)

    def test_trace_is_monotone(self):
        report = minimize(perturbed(0.8 * self.radius, seed=5), DEFAULTS, SMALL)
        actions = [row[1] for row in report.trace]
        self.assertEqual(report.trace[0][0], 0)
        self.assertEqual(len(report.trace), report.iters + 1)
        self.assertTrue(all(after <= before for before, after in zip(actions, actions[1:])))
        self.assertEqual(report.action.total, actions[-1])

    def test_iterates_keep_zero_mean(self):
        path = perturbed(self.radius, seed=6)
        cos_coeffs = path.cos_coeffs.copy()
        cos_coeffs[0] = (0.3, -0.2, 0.1)
        start = FourierPath(cos_coeffs, path.sin_coeffs)
        report = minimize(start, DEFAULTS, SMALL)
        self.assertTrue(np.all(report.path.mean == 0.0))

    def test_antiperiodic_keeps_odd_harmonics_only(self):
        opts = MinimizeOptions(order=5, nodes=128, max_iters=500, grad_tol=1e-8, use_antiperiodic=True)
        report = minimize(perturbed(1.1 * self.radius, seed=7, order=5), DEFAULTS, opts)
        self.assertTrue(np.all(report.path.cos_coeffs[0::2] == 0.0))
        self.assertTrue(np.all(report.path.sin_coeffs[1::2] == 0.0))

    def test_min_sep_is_reported(self):
        report = minimize(circle_path(self.radius), DEFAULTS, SMALL)
        expected = min_separation(ChoreographySystem(report.path, 3), SMALL.nodes, DEFAULTS.centers).distance
        self.assertEqual(report.min_sep, expected)


class RandomStartTests(SimpleTestCase):
    def test_start_is_admissible_and_seeded(self):
        opts = MinimizeOptions(order=6, nodes=128)
        radius = reference_radius(DEFAULTS)
        first = random_start(DEFAULTS, opts, seed=3, radius=radius)
        again = random_start(DEFAULTS, opts, seed=3, radius=radius)
        self.assertEqual(first.order, 6)
        self.assertTrue(first.allclose(again, atol=0.0))
        self.assertTrue(np.all(first.mean == 0.0))
        separation = min_separation(ChoreographySystem(first, 3), opts.nodes, DEFAULTS.centers)
        self.assertGreater(separation.distance, 0.1 * radius)

    def test_reference_radius_falls_back(self):
        with self.assertLogs('minimize.optimizer', level='WARNING'):
            self.assertEqual(reference_radius(ProblemParams(alpha=1.0, beta=1.0, m=0.0, M=0.1, n=3)), 1.0)


class MultistartTests(SimpleTestCase):
    opts = MinimizeOptions(order=4, nodes=64, max_iters=300, grad_tol=1e-6, seed=10)

    def test_deterministic(self):
        first = multistart(DEFAULTS, self.opts, n_starts=2)
        second = multistart(DEFAULTS, self.opts, n_starts=2)
        self.assertEqual(first.action.total, second.action.total)
        self.assertTrue(first.path.allclose(second.path, atol=0.0))
        self.assertEqual(first.basin_actions, second.basin_actions)
        self.assertEqual(list(first.basin_actions), sorted(first.basin_actions))

    def test_single_start_matches_minimize(self):
        best = multistart(DEFAULTS, self.opts, n_starts=1)
        start = random_start(DEFAULTS, self.opts, self.opts.seed, reference_radius(DEFAULTS))
        alone = minimize(start, DEFAULTS, self.opts)
        self.assertEqual(best.action.total, alone.action.total)
        self.assertEqual(best.seed, self.opts.seed)
        self.assertEqual(best.basin_actions, (alone.action.total,))

    def test_needs_a_start(self):
        with self.assertRaises(DomainError):
            multistart(DEFAULTS, self.opts, n_starts=0)


@tag('slow')
class EndToEndTests(SimpleTestCase):
    opts = MinimizeOptions(order=16, nodes=512, max_iters=2000, grad_tol=1e-8)

    def test_minimizer_is_the_analytic_circle(self):
        for p in (DEFAULTS, ProblemParams(alpha=1.0, beta=1.0, m=0.5, M=2.0, n=4)):
            with self.subTest(params=p):
                best = multistart(p, self.opts, n_starts=8)
                report = solve_lambda(p)
                fit = circle_fit(best.path, self.opts.nodes)
                self.assertTrue(best.converged)
                self.assertTrue(fit.uniform)
                # circle in the yoz-plane, centered between the two centers
                self.assertAlmostEqual(abs(fit.normal[0]), 1.0, places=6)
                np.testing.assert_allclose(fit.center, 0.0, atol=1e-6)
                self.assertLess(abs(fit.radius - report.radius), 1e-4)
                expected = circle_action(report.radius, p).total
                self.assertLess(abs(best.action.total - expected) / expected, 1e-6)
                self.assertLess(ode_residual(best.path, p, self.opts.nodes), 1e-5)

                bound = lower_bound_from(*one_plus_minus(report), p)
                for action in best.basin_actions:
                    self.assertGreaterEqual(action, bound - 1e-8)
