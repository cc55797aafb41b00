"""
Seeded random campaigns over the checks of this app.

Every path (or parameter set) gets its own generator spawned from the master
seed, so results do not depend on the number of worker threads.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from analytic.formulas import force_balance_residual
from analytic.solver import solve_lambda
from core.conf import setting
from core.exceptions import CollisionError, DomainError
from core.params import ProblemParams
from trajectory.paths import TWO_PI, circle_path, random_path, resize

from verify.dynamics import ode_residual
from verify.inequalities import (
    check_center_jensen,
    check_jensen,
    check_lower_bound,
    check_pw,
    check_split_bounds,
    check_symmetry,
    check_weighted,
    make_check,
    pw_averaging_check,
)

logger = logging.getLogger(__name__)

SUITES = ('inequalities', 'ode', 'chain', 'all')

MAX_ORDER = 8
EXPONENTS = (0.5, 1.0, 2.0)
ODE_TOL = 1e-8
FORCE_TOL = 1e-8
# Perturbaciones de la cadena: radio relativo a R*
CHAIN_ORDER = 4
CHAIN_SCALE = 0.1


@dataclass
class CheckTally:
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    worst_margin: float = math.inf

    def add(self, check, expect_equality=False):
        self.checked += 1
        scale = max(1.0, abs(check.lhs), abs(check.rhs))
        self.worst_margin = min(self.worst_margin, check.margin / scale)
        if not check.holds or (expect_equality and not check.equality_case):
            self.failed += 1
            return False
        return True

    def as_dict(self):
        return {
            'checked': self.checked,
            'failed': self.failed,
            'skipped': self.skipped,
            'worst_margin': None if math.isinf(self.worst_margin) else self.worst_margin,
        }


@dataclass
class SuiteSummary:
    suite: str
    paths: int
    seed: int
    details: dict = field(default_factory=dict)

    @property
    def checked(self):
        return sum(tally.checked for tally in self.details.values())

    @property
    def failed(self):
        return sum(tally.failed for tally in self.details.values())

    @property
    def worst_margin(self):
        margins = [tally.worst_margin for tally in self.details.values() if not math.isinf(tally.worst_margin)]
        return min(margins) if margins else None

    @property
    def ok(self):
        return self.failed == 0

    def tally(self, name):
        return self.details.setdefault(name, CheckTally())

    def as_dict(self):
        return {
            'suite': self.suite,
            'paths': self.paths,
            'seed': self.seed,
            'checked': self.checked,
            'failed': self.failed,
            'worst_margin': self.worst_margin,
            'details': {name: self.details[name].as_dict() for name in sorted(self.details)},
        }


def random_params(rng):
    """alpha, beta in {0.5, 1, 2}; m, M in [0.1, 10]; n in 2..6."""
    return ProblemParams(
        alpha=float(rng.choice(EXPONENTS)),
        beta=float(rng.choice(EXPONENTS)),
        m=float(rng.uniform(0.1, 10.0)),
        M=float(rng.uniform(0.1, 10.0)),
        n=int(rng.integers(2, 7)),
    )


def _first_harmonic(path):
    return resize(path, 1)


def inequality_outcomes(rng):
    """One random zero-mean path through every inequality, plus the equality cases."""
    order = int(rng.integers(1, MAX_ORDER + 1))
    path = random_path(rng, order)
    theta = float(rng.uniform(1e-3, TWO_PI - 1e-3))
    n = int(rng.integers(2, 9))
    alpha = float(rng.choice(EXPONENTS))
    ellipse = _first_harmonic(path)
    circle = circle_path(float(rng.uniform(0.5, 2.0)), phase=float(rng.uniform(0.0, TWO_PI)))

    outcomes = [
        ('pw', check_pw(path, theta), False),
        ('weighted', check_weighted(path, n, alpha), False),
        ('pw_averaging', pw_averaging_check(path), False),
        ('pw_equality', check_pw(ellipse, theta), True),
        ('weighted_equality', check_weighted(ellipse, n, alpha), True),
        ('pw_averaging_equality', pw_averaging_check(ellipse), True),
        ('jensen_equality', check_jensen(circle, theta, alpha), True),
    ]
    try:
        outcomes.append(('jensen', check_jensen(path, theta, alpha), False))
    except CollisionError:
        outcomes.append(('jensen', None, False))
    return outcomes


def ode_outcomes(rng, params=None):
    """The circle at the analytic radius solves the equations of motion."""
    params = params or random_params(rng)
    report = solve_lambda(params)
    circle = circle_path(report.radius)
    residual = ode_residual(circle, params)
    balance = abs(force_balance_residual(report.radius, params)) / report.radius
    return [
        ('ode_residual', make_check(ODE_TOL, residual, 0.0), False),
        ('force_balance', make_check(FORCE_TOL, balance, 0.0), False),
    ]


def chain_outcomes(rng, params=None):
    """
    A~ >= lower bound for a perturbed circle, with equality on the circle itself.

    The same perturbed circle also goes through the center Jensen step and the
    symmetry of the action.
    """
    params = params or random_params(rng)
    report = solve_lambda(params)
    circle = circle_path(report.radius)
    bump = random_path(rng, CHAIN_ORDER, scale=CHAIN_SCALE * report.radius)
    outcomes = [('chain_equality', check_lower_bound(circle, params, report=report), True)]
    if params.M > 0:
        outcomes.append(('center_jensen_equality', check_center_jensen(circle, params), True))
    try:
        moved = resize(circle, CHAIN_ORDER) + bump
        outcomes.append(('chain', check_lower_bound(moved, params, report=report), False))
        outcomes.append(('symmetry', check_symmetry(moved, params), True))
        if params.M > 0:
            outcomes.append(('center_jensen', check_center_jensen(moved, params), False))
        if params.m > 0 and params.M > 0:
            split_1, split_2 = check_split_bounds(moved, params, report=report)
            outcomes.append(('split_center', split_1, False))
            outcomes.append(('split_mutual', split_2, False))
    except CollisionError:
        outcomes.append(('chain', None, False))
    return outcomes


def _runners(suite, params):
    inequalities = [inequality_outcomes]
    ode = [lambda rng: ode_outcomes(rng, params)]
    chain = [lambda rng: chain_outcomes(rng, params)]
    return {
        'inequalities': inequalities,
        'ode': ode,
        'chain': chain,
        'all': inequalities + ode + chain,
    }[suite]


def run_suite(suite, paths, seed, params=None):
    """
    Run `paths` seeded cases of a suite.

    A case whose random path comes within the collision floor is counted as
    skipped for that check. With params given, the ode and chain suites use
    them instead of random parameter sets.

    Raises:
        DomainError on an unknown suite or paths < 1.
    """
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r} (choose from {', '.join(SUITES)})")
    if int(paths) != paths or paths < 1:
        raise DomainError("paths must be a positive integer")

    runners = _runners(suite, params)
    children = np.random.SeedSequence(seed).spawn(paths)

    def run_case(child):
        outcomes = []
        for runner, stream in zip(runners, child.spawn(len(runners))):
            outcomes.extend(runner(np.random.default_rng(stream)))
        return outcomes

    threads = max(1, int(setting('CHOREO2C_THREADS')))
    logger.info(f"🚀 Suite '{suite}': {paths} caso(s), semilla {seed}, {threads} hilo(s)")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        cases = list(pool.map(run_case, children))

    summary = SuiteSummary(suite=suite, paths=int(paths), seed=seed)
    for outcomes in cases:
        for name, check, expect_equality in outcomes:
            tally = summary.tally(name)
            if check is None:
                tally.skipped += 1
            elif not tally.add(check, expect_equality):
                logger.warning(f"⚠️ {name}: margen {check.margin:.3e} (igualdad={check.equality_case})")

    if summary.ok:
        logger.info(f"✅ Suite '{suite}': {summary.checked} comprobaciones sin fallos")
    else:
        logger.error(f"❌ Suite '{suite}': {summary.failed} de {summary.checked} comprobaciones fallaron")
    return summary
