import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import expit

from core.conf import setting
from core.exceptions import ConvergenceError, DomainError
from core.params import validate

from analytic.formulas import (
    _mismatch,
    _mismatch_slope,
    _r1,
    _r2,
    choreography_radius,
    radius_r1,
)

logger = logging.getLogger(__name__)

MAX_BISECTIONS = 200
BRACKET_WIDTH = 1e-13
# |tau| beyond this makes expit(-2 tau) underflow
TAU_LIMIT = 350.0
UNIT_CENTER_TOL = 1e-12


@dataclass(frozen=True)
class PredictReport:
    """Analytic minimizer: the root lambda~ of F and the common radius R* = R1 = R2."""
    lambda_tilde: float
    r1: float
    r2: float
    radius: float
    f_residual: float
    iterations: int
    tau: float = 0.0

    def as_dict(self):
        return {
            'lambda_tilde': self.lambda_tilde,
            'r1': self.r1,
            'r2': self.r2,
            'radius': self.radius,
            'f_residual': self.f_residual,
            'iterations': self.iterations,
        }


@dataclass(frozen=True)
class SweepPoint:
    m: float
    lambda_tilde: float
    radius: float
    f_residual: float


def _one_plus_minus(tau):
    """(1 + tanh tau, 1 - tanh tau) without cancellation."""
    return 2.0 * float(expit(2.0 * tau)), 2.0 * float(expit(-2.0 * tau))


def require_unit_centers(params):
    """The closed forms assume |c1| = |c2| = 1 (centers at distance 1 from the circle plane)."""
    if abs(float(np.linalg.norm(params.c1)) - 1.0) > UNIT_CENTER_TOL:
        raise DomainError("analytic formulas require |c1| = |c2| = 1")


def _f_tau(tau, params):
    onep, onem = _one_plus_minus(tau)
    return _mismatch(onep, onem, params)


def _bracket(params):
    """Expand [-1, 1] in tau until F changes sign."""
    lo, hi = -1.0, 1.0
    while _f_tau(lo, params) > 0:
        lo *= 2.0
        if lo < -TAU_LIMIT:
            raise ConvergenceError("F stays positive as lambda -> -1: no bracket")
    while _f_tau(hi, params) < 0:
        hi *= 2.0
        if hi > TAU_LIMIT:
            raise ConvergenceError("F stays negative as lambda -> 1: no bracket")
    return lo, hi


def _limit_report(lam, radius):
    return PredictReport(
        lambda_tilde=lam, r1=radius, r2=radius, radius=radius,
        f_residual=0.0, iterations=0, tau=math.copysign(math.inf, lam),
    )


def solve_lambda(params, tol=None, max_bisections=MAX_BISECTIONS, polish=True):
    """
    Root lambda~ of F(lambda) = R2 - R1 on (-1, 1).

    Bisection runs in tau with lambda = tanh(tau) to a 1e-13 bracket, then one
    Newton step with the analytic slope is kept only if it lowers |F|.
    Limiting cases: M = 0 gives lambda~ = -1 and the pure choreography radius;
    m = 0 gives lambda~ = 1 and R1(1) (needs 2 beta M > 1).

    Raises:
        ConvergenceError if |F| > tol after the iteration budget.
    """
    params = validate(params)
    require_unit_centers(params)
    tol = setting('CHOREO2C_ROOT_TOL') if tol is None else tol

    if params.M == 0 and params.m == 0:
        raise DomainError("m and M cannot both vanish: there is no circular orbit")
    if params.M == 0:
        return _limit_report(-1.0, choreography_radius(params.alpha, params.m, params.n))
    if params.m == 0:
        if not 2.0 * params.beta * params.M > 1.0:
            raise DomainError("single particle limit needs 2 beta M > 1")
        return _limit_report(1.0, radius_r1(1.0, params.beta, params.M))

    logger.debug(f"🚀 Resolviendo F(lambda)=0 para alpha={params.alpha}, beta={params.beta}, m={params.m}, M={params.M}, n={params.n}")
    lo, hi = _bracket(params)
    iterations = 0
    while hi - lo > BRACKET_WIDTH and iterations < max_bisections:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        value = _f_tau(mid, params)
        iterations += 1
        if value == 0.0:
            lo = hi = mid
            break
        if value < 0:
            lo = mid
        else:
            hi = mid

    tau = lo if abs(_f_tau(lo, params)) <= abs(_f_tau(hi, params)) else hi
    residual = abs(_f_tau(tau, params))

    if polish and residual > 0:
        onep, onem = _one_plus_minus(tau)
        slope = _mismatch_slope(onep, onem, params)
        if slope > 0:
            candidate = tau - _f_tau(tau, params) / slope
            if lo - BRACKET_WIDTH <= candidate <= hi + BRACKET_WIDTH:
                candidate_residual = abs(_f_tau(candidate, params))
                if candidate_residual < residual:
                    tau, residual = candidate, candidate_residual

    if residual > tol:
        logger.error(f"❌ F no convergió: |F|={residual:.3e} > {tol:.1e} tras {iterations} bisecciones")
        raise ConvergenceError(
            f"|F(lambda)| = {residual:.3e} above tolerance {tol:.1e} after {iterations} bisections",
            iterations=iterations,
            residual=residual,
        )

    onep, onem = _one_plus_minus(tau)
    r1 = _r1(onep, params.beta, params.M)
    r2 = _r2(onem, params.alpha, params.m, params.n)
    report = PredictReport(
        lambda_tilde=math.tanh(tau),
        r1=r1,
        r2=r2,
        radius=r2,
        f_residual=residual,
        iterations=iterations,
        tau=tau,
    )
    logger.info(f"✅ lambda~={report.lambda_tilde:.15g}, R*={report.radius:.15g}, |F|={residual:.2e}")
    return report


def one_plus_minus(report):
    """(1 + lambda~, 1 - lambda~) of a report, exact near the ends of (-1, 1)."""
    if math.isinf(report.tau):
        return 1.0 + report.lambda_tilde, 1.0 - report.lambda_tilde
    return _one_plus_minus(report.tau)


def radius_sweep(params, m_values, tol=None):
    """
    solve_lambda for each m, in input order.

    Along increasing m, R* should increase and lambda~ decrease; a violation is
    logged, not raised.
    """
    points = []
    for m in m_values:
        if not m > 0:
            raise DomainError(f"sweep masses must be positive (got m={m})")
        try:
            report = solve_lambda(_with_mass(params, m), tol=tol)
        except ConvergenceError as e:
            raise ConvergenceError(f"m={m}: {e}", iterations=e.iterations, residual=e.residual) from e
        points.append(SweepPoint(m, report.lambda_tilde, report.radius, report.f_residual))

    ordered = sorted(points, key=lambda p: p.m)
    for before, after in zip(ordered, ordered[1:]):
        if after.m > before.m and not (after.radius > before.radius and after.lambda_tilde < before.lambda_tilde):
            logger.warning(f"⚠️ Monotonía violada entre m={before.m} y m={after.m}")
    return points


def _with_mass(params, m):
    return replace(params, m=float(m))
