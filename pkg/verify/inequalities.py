"""
Numerical verdicts on the inequalities behind the minimality argument.

Parseval-backed checks are exact to rounding (tolerance 1e-10 relative for
equality); quadrature-backed checks use 1e-8.
"""
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np

from action.functionals import action_reduced, checked_distances, split_action
from action.quadrature import QuadratureSpec, sample_shifted, shifted_basis
from analytic.formulas import lower_bound_from, nu, phi_minimum, psi_minimum
from analytic.solver import one_plus_minus, solve_lambda
from core.conf import setting
from core.exceptions import DomainError
from trajectory.choreography import CENTER, CHORD
from trajectory.paths import (
    TWO_PI,
    FourierPath,
    chord_integral,
    coefficient_norm,
    evaluate,
    kinetic_integral,
    l2_integral,
    negate,
    shift,
)

from verify.geometry import CHORD_VARIATION_TOL

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-10
QUADRATURE_TOL = 1e-8
HOLDS_TOL = 1e-12


@dataclass(frozen=True)
class InequalityCheck:
    """Verdict on lhs >= rhs."""
    lhs: float
    rhs: float
    margin: float
    holds: bool
    equality_case: bool
    tolerance: float
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
            'holds': self.holds,
            'equality_case': self.equality_case,
            **self.detail,
        }


def make_check(lhs, rhs, equality_tol, holds_tol=HOLDS_TOL, **detail):
    """Tolerances are relative to max(1, |lhs|, |rhs|)."""
    scale = max(1.0, abs(lhs), abs(rhs))
    margin = lhs - rhs
    return InequalityCheck(
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        holds=bool(margin >= -holds_tol * scale),
        equality_case=bool(abs(margin) <= equality_tol * scale),
        tolerance=holds_tol * scale,
        detail=detail,
    )


def _require_zero_mean(path):
    if np.max(np.abs(path.mean)) > 1e-12 * max(1.0, coefficient_norm(path)):
        raise DomainError("path must have zero mean")


def _require_angle(theta):
    if not 0.0 < theta < TWO_PI:
        raise DomainError("theta must lie in (0, 2pi)")


def mu_theta(theta):
    return 1.0 / (2.0 * math.sin(0.5 * theta))


def check_pw(path, theta):
    """int |x'|^2 >= mu_theta^2 int |x(t) - x(t + theta)|^2, both sides by Parseval."""
    _require_angle(theta)
    _require_zero_mean(path)
    return make_check(kinetic_integral(path), mu_theta(theta) ** 2 * chord_integral(path, theta), EXACT_TOL)


def check_weighted(path, n, alpha):
    """int |x'|^2 >= sum_j nu_j int |x(t) - x(t + 2 pi j/n)|^2 with the weights mu_j^alpha."""
    if n < 2:
        raise DomainError("n must be >= 2")
    _require_zero_mean(path)
    rhs = sum(nu(j, n, alpha) * chord_integral(path, j * TWO_PI / n) for j in range(1, n))
    return make_check(kinetic_integral(path), rhs, EXACT_TOL)


def pw_averaging_check(path):
    """The classical inequality int |x'|^2 >= int |x|^2 for zero-mean loops."""
    _require_zero_mean(path)
    return make_check(kinetic_integral(path), l2_integral(path), EXACT_TOL)


def _jensen(samples_of_distance, l2, exponent, weight):
    lhs = weight * float(np.sum(samples_of_distance ** -exponent))
    rhs = TWO_PI ** (1.0 + 0.5 * exponent) * l2 ** (-0.5 * exponent)
    return lhs, rhs


def check_jensen(path, theta, exponent, quad=None, floor=None):
    """
    int |x(t) - x(t+theta)|^-e >= (2pi)^(1+e/2) [int |x(t) - x(t+theta)|^2]^(-e/2).

    The left side is quadrature; the right side is Parseval. Equality iff the
    chord modulus is constant; its relative variation is reported.
    """
    _require_angle(theta)
    if not exponent > 0:
        raise DomainError("exponent must be positive")
    quad = quad or QuadratureSpec()
    t = quad.times()
    chord = checked_distances(evaluate(path, t) - evaluate(shift(path, theta), t), CHORD, _floor(floor))
    lhs, rhs = _jensen(chord, chord_integral(path, theta), exponent, quad.weight)
    variation = float((chord.max() - chord.min()) / chord.mean())
    check = make_check(lhs, rhs, QUADRATURE_TOL, chord_variation=variation)
    # equality only for a constant chord modulus, whatever the margin
    return replace(check, equality_case=check.equality_case and variation <= CHORD_VARIATION_TOL)


def check_center_jensen(path, params, quad=None, floor=None):
    """Jensen for the center terms: sum_k int |x - c_k|^-beta >= sum_k (2pi)^(1+beta/2) [int |x - c_k|^2]^(-beta/2)."""
    quad = quad or QuadratureSpec()
    basis = shifted_basis(path.order, quad.nodes, 1)
    x = sample_shifted(path, basis)[0]
    lhs = rhs = 0.0
    for center in params.centers:
        distance = checked_distances(x - center, CENTER, _floor(floor))
        moved = FourierPath(np.vstack([path.mean - center, path.cos_coeffs[1:]]), path.sin_coeffs)
        part_lhs, part_rhs = _jensen(distance, l2_integral(moved), params.beta, quad.weight)
        lhs += part_lhs
        rhs += part_rhs
    return make_check(lhs, rhs, QUADRATURE_TOL)


def _floor(floor):
    return setting('CHOREO2C_COLLISION_FLOOR') if floor is None else floor


def check_split_bounds(path, params, quad=None, report=None):
    """
    A~1(x) >= Psi(s0) and A~2(x) >= sum_j Phi_j(s_bar_j) at lambda = lambda~.

    Both become equalities exactly on the circle of radius R*.
    """
    if not (params.m > 0 and params.M > 0):
        raise DomainError("the split bounds need m > 0 and M > 0")
    report = report or solve_lambda(params)
    onep, onem = one_plus_minus(report)
    a1, a2 = split_action(path, params, report.lambda_tilde, quad)
    return (
        make_check(a1, psi_minimum(onep, params.beta, params.M), QUADRATURE_TOL),
        make_check(a2, phi_minimum(onem, params), QUADRATURE_TOL),
    )


def check_lower_bound(path, params, quad=None, report=None, slack=1e-8):
    """A~(x) >= Psi(s0) + sum_j Phi_j(s_bar_j) at lambda~ (the whole chain)."""
    report = report or solve_lambda(params)
    onep, onem = one_plus_minus(report)
    total = action_reduced(path, params, quad).total
    return make_check(total, lower_bound_from(onep, onem, params), QUADRATURE_TOL, holds_tol=slack)


def check_symmetry(path, params, quad=None):
    """
    The action is unchanged by the cyclic relabeling (t -> t + 2pi/n) and by
    x -> -x composed with t -> t + pi. lhs is A~(x), rhs the generator image
    farthest from it.
    """
    quad = quad or QuadratureSpec()
    base = action_reduced(path, params, quad).total
    images = [
        action_reduced(shift(path, TWO_PI / params.n), params, quad).total,
        action_reduced(negate(shift(path, math.pi)), params, quad).total,
    ]
    worst = max(images, key=lambda value: abs(value - base))
    check = make_check(base, worst, QUADRATURE_TOL)
    if not check.equality_case:
        logger.warning(f"⚠️ Simetría rota: A={base:.12g} vs {worst:.12g}")
    return check
