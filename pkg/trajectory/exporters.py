"""
Serialización de trayectorias: JSON de coeficientes y filas CSV muestreadas.
"""
import numpy as np

from core.exceptions import DomainError
from trajectory.paths import FourierPath, evaluate, uniform_nodes


def path_to_json(path):
    """Raw coefficients as {order, cos: [[...]], sin: [[...]]}."""
    return {
        'order': path.order,
        'cos': path.cos_coeffs.tolist(),
        'sin': path.sin_coeffs.tolist(),
    }


def path_from_json(data):
    try:
        path = FourierPath(np.array(data['cos'], dtype=float), np.array(data['sin'], dtype=float))
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError(f"malformed path JSON: {e}") from e
    if 'order' in data and int(data['order']) != path.order:
        raise DomainError(f"declared order {data['order']} does not match coefficients ({path.order})")
    return path


def path_to_rows(path, nodes):
    """Rows (t, x, y, z) at uniform nodes."""
    t = uniform_nodes(nodes)
    points = evaluate(path, t)
    return [(float(ti), *map(float, p)) for ti, p in zip(t, points)]


def choreography_to_rows(system, nodes):
    """Rows (body_index, t, x, y, z) for body 1 and its n - 1 shifted companions."""
    rows = []
    for i, body in enumerate(system.bodies(), start=1):
        rows.extend((i, *row) for row in path_to_rows(body, nodes))
    return rows
