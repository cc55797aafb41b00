"""
Direct minimization of the reduced action over the constrained Fourier space.

Every iterate is projected onto the zero-mean subspace (odd harmonics only when
the antiperiodic flag is set). Steps come from a BFGS inverse-Hessian estimate
started at the kinetic preconditioner 1/(pi k^2); the Armijo backtracking line
search rejects any trial whose samples cross the collision floor. The objective
is never regularized.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from action.functionals import action_and_gradient
from action.quadrature import QuadratureSpec
from analytic.solver import solve_lambda
from core.conf import setting
from core.exceptions import Choreo2cError, CollisionError, DomainError, StalledError
from trajectory.choreography import ChoreographySystem, min_separation
from trajectory.paths import (
    constraint_mask,
    from_vector,
    project_antiperiodic,
    project_zero_mean,
    random_path,
    resize,
    sample,
    to_vector,
)

logger = logging.getLogger(__name__)

ARMIJO_C1 = 1e-4
BACKTRACK = 0.5
MAX_BACKTRACKS = 60
START_ORDER = 3
START_TRIES = 200
# Holgura relativa al comparar acciones que solo difieren por redondeo
NOISE = 16.0 * np.finfo(float).eps
SETTING_DEFAULTS = (
    ('max_iters', 'CHOREO2C_MAX_ITERS'),
    ('order', 'CHOREO2C_ORDER'),
    ('nodes', 'CHOREO2C_NODES'),
)


@dataclass(frozen=True)
class MinimizeOptions:
    """max_iters, order and nodes left as None take the CHOREO2C_* settings."""
    max_iters: int = None
    grad_tol: float = 1e-8
    step_init: float = 1.0
    use_antiperiodic: bool = False
    seed: int = 0
    order: int = None
    nodes: int = None

    def __post_init__(self):
        for name, key in SETTING_DEFAULTS:
            if getattr(self, name) is None:
                object.__setattr__(self, name, setting(key))
        if self.order < 1:
            raise DomainError("order must be >= 1")
        if self.max_iters < 1:
            raise DomainError("max_iters must be >= 1")
        if not self.grad_tol > 0:
            raise DomainError("grad_tol must be positive")
        if not self.step_init > 0:
            raise DomainError("step_init must be positive")

    @property
    def quadrature(self):
        return QuadratureSpec(self.nodes)

    def as_dict(self):
        return {
            'max_iters': self.max_iters,
            'grad_tol': self.grad_tol,
            'step_init': self.step_init,
            'use_antiperiodic': self.use_antiperiodic,
            'seed': self.seed,
            'order': self.order,
            'nodes': self.nodes,
        }


@dataclass(frozen=True)
class MinimizeReport:
    path: object
    action: object
    grad_norm: float
    iters: int
    trace: tuple
    min_sep: float
    converged: bool
    seed: int = None
    basin_actions: tuple = field(default=())


def project(path, antiperiodic=False):
    path = project_zero_mean(path)
    return project_antiperiodic(path) if antiperiodic else path


def _preconditioner(order):
    """Inverse of the kinetic Hessian pi k^2 on each coefficient (1 on the mean)."""
    k = np.arange(1, order + 1, dtype=float)
    diag_k = np.repeat(1.0 / (math.pi * k ** 2), 3)
    return np.concatenate([np.ones(3), diag_k, diag_k])


class _Objective:
    """Caches the last evaluation; raises CollisionError on inadmissible vectors."""

    def __init__(self, params, order, mask, quad):
        self.params = params
        self.order = order
        self.mask = mask
        self.quad = quad
        self.evaluations = 0

    def __call__(self, vector):
        self.evaluations += 1
        breakdown, grad = action_and_gradient(from_vector(vector, self.order), self.params, self.quad)
        return breakdown, grad * self.mask


def _line_search(objective, x, f, g, direction, step):
    """
    Armijo backtracking. A trial inside the collision floor is rejected like a
    non-decreasing one. When the decrease sits at rounding level, a trial that
    does not raise the action and shrinks the gradient is accepted.
    """
    slope = float(g @ direction)
    gnorm = float(np.linalg.norm(g))
    noise = NOISE * max(1.0, abs(f))
    for _ in range(MAX_BACKTRACKS):
        trial = x + step * direction
        try:
            breakdown, g_trial = objective(trial)
        except CollisionError:
            step *= BACKTRACK
            continue
        f_trial = breakdown.total
        if f_trial <= f + ARMIJO_C1 * step * slope and f_trial < f:
            return trial, breakdown, g_trial
        if f_trial <= f and f - f_trial <= noise and np.linalg.norm(g_trial) < gnorm:
            return trial, breakdown, g_trial
        step *= BACKTRACK
    return None


def minimize(start, params, opts=None):
    """
    Minimize A~ from start.

    Raises:
        CollisionError if the projected start is inadmissible.
        StalledError if no admissible decreasing step exists (report attached).
    """
    opts = opts or MinimizeOptions()
    quad = opts.quadrature
    order = max(opts.order, start.order)
    mask = constraint_mask(order, opts.use_antiperiodic).astype(float)
    objective = _Objective(params, order, mask, quad)

    x = to_vector(project(resize(start, order), opts.use_antiperiodic))
    breakdown, g = objective(x)
    f = breakdown.total
    h0 = _preconditioner(order) * mask
    H = np.diag(h0)

    trace = [(0, f, float(np.linalg.norm(g)))]
    iters = 0
    while iters < opts.max_iters:
        gnorm = float(np.linalg.norm(g))
        if gnorm <= opts.grad_tol:
            break

        direction = -(H @ g)
        if not float(g @ direction) < 0:
            H = np.diag(h0)
            direction = -(H @ g)

        accepted = _line_search(objective, x, f, g, direction, opts.step_init)
        if accepted is None and not np.allclose(H, np.diag(h0)):
            logger.warning(f"⚠️ Búsqueda lineal fallida en iteración {iters}; reiniciando la métrica BFGS")
            H = np.diag(h0)
            direction = -(H @ g)
            accepted = _line_search(objective, x, f, g, direction, opts.step_init)
        if accepted is None:
            report = _report(x, order, breakdown, gnorm, iters, trace, params, quad, converged=False, seed=opts.seed)
            logger.error(f"❌ Minimización estancada en iteración {iters} (|g|={gnorm:.3e})")
            raise StalledError(f"line search found no admissible decreasing step at iteration {iters}", report=report)

        x_new, breakdown, g_new = accepted
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-12 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
            rho = 1.0 / sy
            V = np.eye(len(x)) - rho * np.outer(s, y)
            H = V @ H @ V.T + rho * np.outer(s, s)

        x, g, f = x_new, g_new, breakdown.total
        iters += 1
        trace.append((iters, f, float(np.linalg.norm(g))))

    gnorm = float(np.linalg.norm(g))
    converged = gnorm <= opts.grad_tol
    if converged:
        logger.info(f"✅ Convergió en {iters} iteraciones: acción={f:.12g}, |g|={gnorm:.2e}")
    else:
        logger.warning(f"⚠️ Se agotaron {opts.max_iters} iteraciones con |g|={gnorm:.2e}")
    return _report(x, order, breakdown, gnorm, iters, trace, params, quad, converged, opts.seed)


def _report(x, order, breakdown, gnorm, iters, trace, params, quad, converged, seed):
    path = from_vector(x, order)
    separation = min_separation(ChoreographySystem(path, params.n), quad.nodes, params.centers)
    return MinimizeReport(
        path=path,
        action=breakdown,
        grad_norm=gnorm,
        iters=iters,
        trace=tuple(trace),
        min_sep=separation.distance,
        converged=converged,
        seed=seed,
    )


def reference_radius(params):
    """Radius scale for random starts: the analytic R* when available."""
    try:
        return solve_lambda(params).radius
    except Choreo2cError as e:
        logger.warning(f"⚠️ Sin radio analítico ({e}); se usa escala 1")
        return 1.0


def random_start(params, opts, seed, radius=None):
    """
    Seeded admissible start: random harmonics up to order 3, projected, with
    RMS radius drawn in [0.5 R*, 2 R*]; redrawn while closer than 0.1 R* to a
    collision.
    """
    radius = reference_radius(params) if radius is None else radius
    rng = np.random.default_rng(seed)
    for _ in range(START_TRIES):
        path = project(random_path(rng, min(START_ORDER, opts.order), decay=1.5), opts.use_antiperiodic)
        rms = float(np.sqrt(np.mean(np.sum(sample(path, 64) ** 2, axis=1))))
        if rms == 0.0:
            continue
        path = path.scaled(rng.uniform(0.5, 2.0) * radius / rms)
        separation = min_separation(ChoreographySystem(path, params.n), opts.nodes, params.centers)
        if separation.distance > 0.1 * radius:
            return resize(path, opts.order)
    raise DomainError(f"no collision-free random start found for seed {seed}")


def multistart(params, opts=None, n_starts=8):
    """
    Run minimize from n_starts seeded random starts (seeds opts.seed, opts.seed + 1, ...).

    Returns the lowest-action report with basin_actions holding every final
    action, sorted. Per-start failures are logged; fails only if all fail.
    """
    if n_starts < 1:
        raise DomainError("n_starts must be >= 1")
    opts = opts or MinimizeOptions()
    radius = reference_radius(params)
    seeds = [opts.seed + i for i in range(n_starts)]

    def run(seed):
        try:
            start = random_start(params, opts, seed, radius)
            return minimize(start, params, replace(opts, seed=seed)), None
        except Choreo2cError as e:
            logger.warning(f"⚠️ Arranque con semilla {seed} falló: {e}")
            return None, e

    threads = max(1, int(setting('CHOREO2C_THREADS')))
    logger.info(f"🚀 Multistart: {n_starts} arranques, {threads} hilo(s)")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        outcomes = list(pool.map(run, seeds))

    reports = [report for report, _ in outcomes if report is not None]
    failures = [error for _, error in outcomes if error is not None]
    if not reports:
        first = failures[0]
        logger.error(f"❌ Los {n_starts} arranques fallaron")
        raise type(first)(f"all {n_starts} starts failed; first failure: {first}")

    best = min(reports, key=lambda r: (r.action.total, r.seed))
    basin = tuple(sorted(r.action.total for r in reports))
    logger.info(f"✅ Mejor acción {best.action.total:.12g} (semilla {best.seed}); {len(failures)} fallo(s)")
    return replace(best, basin_actions=basin)
