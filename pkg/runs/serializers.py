import numpy as np

from trajectory.exporters import path_to_json


def to_builtin(value):
    """json.dumps default= hook for numpy values."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def serialize_predict(report):
    """Serializar el resultado analítico (lambda~, R1, R2, R*)"""
    return report.as_dict()


def serialize_minimize(report, circle=None, ode=None, analytic=None):
    """Serializar el mejor minimizador y sus diagnósticos"""
    return {
        'path': path_to_json(report.path),
        'action': report.action.as_dict(),
        'grad_norm': report.grad_norm,
        'iters': report.iters,
        'converged': report.converged,
        'min_sep': report.min_sep,
        'seed': report.seed,
        'basin_actions': list(report.basin_actions),
        'trace': [list(row) for row in report.trace],
        'circle_fit': None if circle is None else circle.as_dict(),
        'ode_residual': ode,
        'analytic': None if analytic is None else analytic.as_dict(),
    }


def serialize_suite(summary):
    return summary.as_dict()


SWEEP_COLUMNS = ('m', 'lambda_tilde', 'radius', 'f_residual')
EXPORT_COLUMNS = ('body_index', 't', 'x', 'y', 'z')


def sweep_rows(points):
    return [(p.m, p.lambda_tilde, p.radius, p.f_residual) for p in points]


def serialize_sweep(points):
    return [dict(zip(SWEEP_COLUMNS, row)) for row in sweep_rows(points)]


def serialize_export(rows):
    return [dict(zip(EXPORT_COLUMNS, row)) for row in rows]
