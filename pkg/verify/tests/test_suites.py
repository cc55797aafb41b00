import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from core.exceptions import DomainError
from core.params import ProblemParams
from verify.inequalities import make_check
from verify.suites import CheckTally, SuiteSummary, random_params, run_suite


class CheckTallyTests(SimpleTestCase):
    def test_counts_and_relative_margin(self):
        tally = CheckTally()
        self.assertTrue(tally.add(make_check(10.0, 8.0, 1e-10)))
        self.assertFalse(tally.add(make_check(1.0, 2.0, 1e-10)))
        self.assertFalse(tally.add(make_check(2.0, 1.0, 1e-10), expect_equality=True))
        self.assertEqual((tally.checked, tally.failed), (3, 2))
        self.assertAlmostEqual(tally.worst_margin, -0.5, places=15)

    def test_empty_summary(self):
        summary = SuiteSummary(suite='ode', paths=1, seed=0)
        self.assertTrue(summary.ok)
        self.assertIsNone(summary.worst_margin)
        self.assertIsNone(CheckTally().as_dict()['worst_margin'])


class RandomParamsTests(SimpleTestCase):
    def test_ranges(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            p = random_params(rng)
            self.assertIn(p.alpha, (0.5, 1.0, 2.0))
            self.assertIn(p.beta, (0.5, 1.0, 2.0))
            self.assertTrue(0.1 <= p.m <= 10.0 and 0.1 <= p.M <= 10.0)
            self.assertTrue(2 <= p.n <= 6)


class RunSuiteTests(SimpleTestCase):
    def test_inequalities(self):
        summary = run_suite('inequalities', 25, seed=0)
        self.assertTrue(summary.ok)
        self.assertEqual(summary.tally('pw').checked, 25)
        self.assertEqual(summary.tally('jensen').checked + summary.tally('jensen').skipped, 25)
        self.assertGreaterEqual(summary.worst_margin, -1e-12)

    def test_ode(self):
        summary = run_suite('ode', 5, seed=1)
        self.assertTrue(summary.ok)
        self.assertEqual(sorted(summary.details), ['force_balance', 'ode_residual'])

    def test_chain(self):
        summary = run_suite('chain', 5, seed=2)
        self.assertTrue(summary.ok)
        self.assertEqual(summary.tally('chain_equality').checked, 5)
        self.assertEqual(summary.tally('split_center').failed, 0)
        self.assertEqual(summary.tally('symmetry').checked, 5)
        self.assertEqual(summary.tally('center_jensen_equality').checked, 5)
        self.assertEqual(summary.tally('center_jensen').failed, 0)

    def test_fixed_params(self):
        p = ProblemParams(alpha=2.0, beta=1.0, m=0.5, M=3.0, n=4)
        self.assertTrue(run_suite('all', 3, seed=3, params=p).ok)

    def test_deterministic(self):
        first = run_suite('all', 4, seed=7).as_dict()
        self.assertEqual(first, run_suite('all', 4, seed=7).as_dict())
        self.assertNotEqual(first, run_suite('all', 4, seed=8).as_dict())

    @override_settings(CHOREO2C_THREADS=3)
    def test_thread_count_does_not_change_results(self):
        threaded = run_suite('inequalities', 6, seed=5).as_dict()
        with override_settings(CHOREO2C_THREADS=1):
            self.assertEqual(threaded, run_suite('inequalities', 6, seed=5).as_dict())

    def test_summary_dict(self):
        data = run_suite('ode', 2, seed=0).as_dict()
        self.assertEqual(data['suite'], 'ode')
        self.assertEqual(data['checked'], 4)
        self.assertEqual(data['failed'], 0)
        self.assertFalse(math.isinf(data['worst_margin']))

    def test_unknown_suite(self):
        with self.assertRaises(DomainError):
            run_suite('everything', 3, seed=0)

    def test_needs_a_path(self):
        with self.assertRaises(DomainError):
            run_suite('ode', 0, seed=0)
