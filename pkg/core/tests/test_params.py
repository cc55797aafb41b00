from django.test import SimpleTestCase

from core.conf import DEFAULTS, setting
from core.exceptions import CollisionError, DomainError
from core.params import ProblemParams, validate


class ValidateTests(SimpleTestCase):
    def test_default_centers_are_accepted(self):
        params = ProblemParams(alpha=1.0, beta=1.0, m=1.0, M=1.0, n=3)
        self.assertIs(validate(params), params)
        self.assertEqual(params.centers.shape, (2, 3))
        self.assertEqual(params.centers[0].tolist(), [1.0, 0.0, 0.0])

    def test_zero_masses_are_limits_not_errors(self):
        validate(ProblemParams(alpha=1.0, beta=1.0, m=0.0, M=1.0, n=2))
        validate(ProblemParams(alpha=1.0, beta=1.0, m=1.0, M=0.0, n=2))

    def test_each_invariant_is_named(self):
        cases = [
            (dict(alpha=0.0), "alpha must be positive"),
            (dict(beta=-1.0), "beta must be positive"),
            (dict(m=-0.5), "m must be nonnegative"),
            (dict(M=float('nan')), "M must be nonnegative"),
            (dict(n=1), "n must be an integer >= 2"),
            (dict(n=2.5), "n must be an integer >= 2"),
            (dict(c1=(1.0, 0.0)), "centers must be points in 3-space"),
            (dict(c1=(0.0, 0.0, 1.0)), "centers must be antipodal"),
        ]
        for override, message in cases:
            fields = dict(alpha=1.0, beta=1.0, m=1.0, M=1.0, n=3)
            fields.update(override)
            with self.subTest(override=override):
                with self.assertRaisesMessage(DomainError, message):
                    validate(ProblemParams(**fields))

    def test_domain_error_is_a_value_error(self):
        with self.assertRaises(ValueError):
            validate(ProblemParams(alpha=-1.0, beta=1.0, m=1.0, M=1.0, n=3))


class FromDictTests(SimpleTestCase):
    def test_builds_and_validates(self):
        params = ProblemParams.from_dict({'alpha': 2, 'beta': '1.5', 'm': 1, 'M': 3, 'n': 4})
        self.assertEqual(params.alpha, 2.0)
        self.assertEqual(params.beta, 1.5)
        self.assertEqual(params.n, 4)
        self.assertEqual(params.as_dict()['c2'], [-1.0, 0.0, 0.0])

    def test_missing_key(self):
        with self.assertRaisesMessage(DomainError, "missing parameter 'M'"):
            ProblemParams.from_dict({'alpha': 1, 'beta': 1, 'm': 1, 'n': 3})

    def test_malformed_value(self):
        with self.assertRaises(DomainError):
            ProblemParams.from_dict({'alpha': 'x', 'beta': 1, 'm': 1, 'M': 1, 'n': 3})


class ConfTests(SimpleTestCase):
    def test_settings_override_defaults(self):
        with self.settings(CHOREO2C_THREADS=4):
            self.assertEqual(setting('CHOREO2C_THREADS'), 4)

    def test_falls_back_to_defaults(self):
        self.assertEqual(setting('CHOREO2C_FORMAT_VERSION'), DEFAULTS['CHOREO2C_FORMAT_VERSION'])


class ExceptionTests(SimpleTestCase):
    def test_collision_carries_separation(self):
        error = CollisionError("too close", separation=1e-12, family='chord')
        self.assertEqual(error.separation, 1e-12)
        self.assertEqual(error.family, 'chord')
        self.assertEqual(str(error), "too close")
