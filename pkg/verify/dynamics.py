"""
Residual of the equations of motion along a choreography.

Body 1 follows the loop; its acceleration is the second spectral derivative
and the force side uses the attractive convention

    q1'' = -alpha m sum_j D_j |D_j|^(-alpha-2) - beta M sum_k (q1 - c_k) |q1 - c_k|^(-beta-2)

with D_j = q1(t) - q1(t + 2 pi j/n). Circles at the analytic radius balance it.
"""
import logging

import numpy as np

from action.functionals import checked_distances
from action.quadrature import QuadratureSpec, sample_shifted, shifted_basis
from core.conf import setting
from trajectory.choreography import CENTER, CHORD
from trajectory.paths import derivative, sample

logger = logging.getLogger(__name__)


def acceleration_field(path, params, nodes, floor=None):
    """Right-hand side for body 1 at the uniform nodes, shape (nodes, 3)."""
    floor = setting('CHOREO2C_COLLISION_FLOOR') if floor is None else floor
    X = sample_shifted(path, shifted_basis(path.order, nodes, params.n))
    x = X[0]
    accel = np.zeros_like(x)
    if params.M > 0:
        offsets = x[None, :, :] - params.centers[:, None, :]
        r = checked_distances(offsets, CENTER, floor)
        accel -= params.beta * params.M * np.sum(offsets * r[..., None] ** (-params.beta - 2.0), axis=0)
    if params.m > 0:
        offsets = x[None, :, :] - X[1:]
        r = checked_distances(offsets, CHORD, floor)
        accel -= params.alpha * params.m * np.sum(offsets * r[..., None] ** (-params.alpha - 2.0), axis=0)
    return accel


def ode_residual(path, params, nodes=None, floor=None):
    """
    sup |q1'' - force| / max(1, sup |q1''|) over the quadrature nodes.

    Raises:
        CollisionError if a body meets a partner or a center on the grid.
    """
    nodes = QuadratureSpec(nodes or setting('CHOREO2C_NODES')).nodes
    qdd = sample(derivative(derivative(path)), nodes)
    gap = np.linalg.norm(qdd - acceleration_field(path, params, nodes, floor), axis=1)
    scale = max(1.0, float(np.max(np.linalg.norm(qdd, axis=1))))
    residual = float(np.max(gap)) / scale
    logger.debug(f"🔍 Residuo de la ecuación de movimiento: {residual:.3e}")
    return residual
