"""
Lagrangian action of the choreography.

Reduced functional (per unit m n), on a loop x(t):

    A~(x) = int 1/2 |x'|^2 + M/|x - c1|^beta + M/|x - c2|^beta
                + 1/2 sum_j m/|x(t) - x(t + 2 pi j/n)|^alpha  dt

The kinetic part is exact (Parseval); the potentials use the uniform rule.
A family of separations (center or chord) is only checked against the
collision floor when its mass is positive.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from core.conf import setting
from core.exceptions import CollisionError
from trajectory.choreography import CENTER, CHORD
from trajectory.paths import FourierPath, kinetic_integral, to_vector

from action.quadrature import QuadratureSpec, sample_shifted, shifted_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionBreakdown:
    kinetic: float
    center_potential: float
    mutual_potential: float

    @property
    def total(self):
        return self.kinetic + self.center_potential + self.mutual_potential

    def as_dict(self):
        return {
            'kinetic': self.kinetic,
            'center_potential': self.center_potential,
            'mutual_potential': self.mutual_potential,
            'total': self.total,
        }


def _floor(floor):
    return setting('CHOREO2C_COLLISION_FLOOR') if floor is None else floor


def checked_distances(offsets, family, floor):
    distances = np.linalg.norm(offsets, axis=-1)
    worst = float(np.min(distances))
    if worst < floor:
        logger.error(f"❌ Colisión ({family}): separación {worst:.3e} < {floor:.1e}")
        raise CollisionError(
            f"{family} separation {worst:.3e} is below the collision floor {floor:.1e}",
            separation=worst,
            family=family,
        )
    return distances


def _evaluate(path, params, quad, floor, with_gradient):
    quad = quad or QuadratureSpec()
    floor = _floor(floor)
    quad.check_resolution(path.order)
    w = quad.weight

    basis = shifted_basis(path.order, quad.nodes, params.n)
    X = sample_shifted(path, basis)
    x = X[0]

    # dA~/dx at each slot, shape (n, nodes, 3): slot 0 is x(t_i), slot j is x(t_i + theta_j)
    slots = np.zeros((params.n, quad.nodes, 3)) if with_gradient else None

    center = 0.0
    if params.M > 0:
        offsets = x[None, :, :] - params.centers[:, None, :]
        r = checked_distances(offsets, CENTER, floor)
        center = w * params.M * float(np.sum(r ** -params.beta))
        if with_gradient:
            slots[0] -= params.beta * params.M * np.sum(offsets * r[..., None] ** (-params.beta - 2.0), axis=0)

    mutual = 0.0
    if params.m > 0:
        offsets = x[None, :, :] - X[1:]
        r = checked_distances(offsets, CHORD, floor)
        mutual = 0.5 * w * params.m * float(np.sum(r ** -params.alpha))
        if with_gradient:
            pull = -0.5 * params.alpha * params.m * offsets * r[..., None] ** (-params.alpha - 2.0)
            slots[0] += np.sum(pull, axis=0)
            slots[1:] -= pull

    breakdown = ActionBreakdown(0.5 * kinetic_integral(path), center, mutual)
    if not with_gradient:
        return breakdown, None

    k2 = (path.harmonics ** 2)[:, None]
    grad_mean = w * np.sum(slots, axis=(0, 1))
    grad_a = math.pi * k2 * path.cos_coeffs[1:]
    grad_b = math.pi * k2 * path.sin_coeffs
    for (C, S), slot in zip(basis, slots):
        grad_a = grad_a + w * (C.T @ slot)
        grad_b = grad_b + w * (S.T @ slot)
    return breakdown, to_vector(FourierPath(np.vstack([grad_mean, grad_a]), grad_b))


def action_reduced(path, params, quad=None, floor=None):
    """
    Reduced action A~ of the loop, split into its three integrals.

    Raises:
        CollisionError if a sampled separation falls below the collision floor.
    """
    return _evaluate(path, params, quad, floor, with_gradient=False)[0]


def action_gradient(path, params, quad=None, floor=None):
    """
    Gradient of A~ with respect to the flat coefficient vector (trajectory.paths.to_vector layout).

    Kinetic part analytic: d/da_k of (pi/2) k^2 |a_k|^2 is pi k^2 a_k. Potential
    parts by the chain rule through the quadrature samples; the mutual term
    depends on x(t) and on x(t + theta_j), and both occurrences are included.
    """
    return _evaluate(path, params, quad, floor, with_gradient=True)[1]


def action_and_gradient(path, params, quad=None, floor=None):
    """(ActionBreakdown, gradient) from one pass over the samples."""
    return _evaluate(path, params, quad, floor, with_gradient=True)


def split_action(path, params, lam, quad=None, floor=None):
    """
    (A~1, A~2) with A~1 = int (1+lam)/4 |x'|^2 + center terms and
    A~2 = int (1-lam)/4 |x'|^2 + mutual term; they add up to A~.
    """
    breakdown = action_reduced(path, params, quad, floor)
    kinetic = kinetic_integral(path)
    a1 = 0.25 * (1.0 + lam) * kinetic + breakdown.center_potential
    a2 = 0.25 * (1.0 - lam) * kinetic + breakdown.mutual_potential
    return a1, a2


def action_full(system, params, quad=None, floor=None):
    """
    Full action A of all n bodies, summed body by body and pair by pair.

    On a choreography A = m n A~ (up to quadrature error).
    """
    quad = quad or QuadratureSpec()
    floor = _floor(floor)
    quad.check_resolution(system.base.order)
    bodies = system.bodies()
    basis = shifted_basis(system.base.order, quad.nodes, 1)
    X = np.stack([sample_shifted(body, basis)[0] for body in bodies])

    kinetic = 0.5 * params.m * sum(kinetic_integral(body) for body in bodies)

    potential = 0.0
    if params.M > 0:
        offsets = X[:, None, :, :] - params.centers[None, :, None, :]
        r = checked_distances(offsets, CENTER, floor)
        potential += quad.weight * params.m * params.M * float(np.sum(r ** -params.beta))
    if params.m > 0:
        for i in range(system.n):
            for j in range(i + 1, system.n):
                r = checked_distances(X[i] - X[j], CHORD, floor)
                potential += quad.weight * params.m ** 2 * float(np.sum(r ** -params.alpha))

    return kinetic + potential
