"""
Closed formulas of the lambda-splitting argument.

The reduced action is split as A~ = A~1 + A~2 with a parameter lambda:
A~1 keeps (1+lambda)/4 |x'|^2 and the center terms, A~2 keeps (1-lambda)/4 |x'|^2
and the mutual term. Each part is bounded below and minimized by a circle in
the yoz-plane, of radius R1(lambda) and R2(lambda) respectively; the root of
F = R2 - R1 picks the lambda where both circles coincide.

Functions taking `onep`/`onem` receive 1 + lambda and 1 - lambda directly, so
callers near lambda = +-1 keep full relative precision.
"""
import math

import numpy as np

from action.functionals import ActionBreakdown
from core.exceptions import DomainError

TWO_PI = 2.0 * math.pi

# Radicandos negativos de este orden se tratan como cero (redondeo en el borde del dominio)
RADICAND_SLACK = 1e-14


def _check_index(j, n):
    if int(j) != j or not 1 <= j <= n - 1:
        raise DomainError(f"index j={j} must satisfy 1 <= j <= n-1 (n={n})")


def sin_sum(alpha, n):
    """sum_{j=1}^{n-1} sin^-alpha(j pi / n)."""
    j = np.arange(1, n)
    return float(np.sum(np.sin(j * math.pi / n) ** -alpha))


def mu(j, n):
    """mu_j = (2 sin(j pi / n))^-1."""
    _check_index(j, n)
    return 1.0 / (2.0 * math.sin(j * math.pi / n))


def nu(j, n, alpha):
    """nu_j = mu_j^(2+alpha) / sum_k mu_k^alpha."""
    _check_index(j, n)
    total = sum(mu(k, n) ** alpha for k in range(1, n))
    return mu(j, n) ** (2.0 + alpha) / total


def _check_psi_domain(lam, M):
    if not lam > -1.0:
        raise DomainError("lambda must be > -1 (Psi has no minimum otherwise)")
    if not M > 0:
        raise DomainError("M must be positive for Psi")


def psi(s, lam, beta, M):
    """Psi(s) = (1+lambda) s^2/4 + 2M (2pi)^(beta/2+1) s^-beta - (1+lambda) pi/2."""
    _check_psi_domain(lam, M)
    if not s > 0:
        raise DomainError("s must be positive")
    return _psi(s, 1.0 + lam, beta, M)


def _psi(s, onep, beta, M):
    return 0.25 * onep * s * s + 2.0 * M * TWO_PI ** (0.5 * beta + 1.0) * s ** -beta - 0.5 * onep * math.pi


def psi_argmin(lam, beta, M):
    """s0 = sqrt(2pi) (4 beta M / (1+lambda))^(1/(beta+2))."""
    _check_psi_domain(lam, M)
    return _psi_argmin(1.0 + lam, beta, M)


def _psi_argmin(onep, beta, M):
    return math.sqrt(TWO_PI) * (4.0 * beta * M / onep) ** (1.0 / (beta + 2.0))


def _check_phi_domain(lam, params):
    if not lam < 1.0:
        raise DomainError("lambda must be < 1 for Phi_j")
    if not params.m > 0:
        raise DomainError("m must be positive for Phi_j")


def phi(s, lam, j, params):
    """Phi_j(s) = (1-lambda) nu_j s/4 + (2pi)^(1+alpha/2) m s^(-alpha/2) / 2."""
    _check_phi_domain(lam, params)
    if not s > 0:
        raise DomainError("s must be positive")
    return _phi(s, 1.0 - lam, j, params)


def _phi(s, onem, j, params):
    alpha = params.alpha
    return (
        0.25 * onem * nu(j, params.n, alpha) * s
        + 0.5 * TWO_PI ** (1.0 + 0.5 * alpha) * params.m * s ** (-0.5 * alpha)
    )


def phi_argmin(lam, j, params):
    """s_bar_j = 2pi [alpha m / (nu_j (1-lambda))]^(2/(alpha+2))."""
    _check_phi_domain(lam, params)
    return _phi_argmin(1.0 - lam, j, params)


def _phi_argmin(onem, j, params):
    alpha = params.alpha
    return TWO_PI * (alpha * params.m / (nu(j, params.n, alpha) * onem)) ** (2.0 / (alpha + 2.0))


def radius_r1(lam, beta, M):
    """R1(lambda) = sqrt((4 beta M/(1+lambda))^(2/(beta+2)) - 1) on (-1, 4 beta M - 1] n (-1, 1]."""
    if not -1.0 < lam <= 1.0:
        raise DomainError("lambda must lie in (-1, 1] for R1")
    radicand = _r1_radicand(1.0 + lam, beta, M)
    if radicand < -RADICAND_SLACK:
        raise DomainError("R1 radicand is negative: 4 beta M / (1 + lambda) < 1")
    return math.sqrt(max(radicand, 0.0))


def _r1_radicand(onep, beta, M):
    return (4.0 * beta * M / onep) ** (2.0 / (beta + 2.0)) - 1.0


def _r1(onep, beta, M):
    """R1, set to 0 where the radicand goes negative."""
    return math.sqrt(max(_r1_radicand(onep, beta, M), 0.0))


def radius_r2(lam, alpha, m, n):
    """R2(lambda) = 2^(-alpha/(alpha+2)) (alpha m/(1-lambda) sum_j sin^-alpha(j pi/n))^(1/(alpha+2))."""
    if not lam < 1.0:
        raise DomainError("lambda must be < 1 for R2")
    if not m > 0:
        raise DomainError("m must be positive for R2")
    return _r2(1.0 - lam, alpha, m, n)


def _r2(onem, alpha, m, n):
    return 2.0 ** (-alpha / (alpha + 2.0)) * (alpha * m * sin_sum(alpha, n) / onem) ** (1.0 / (alpha + 2.0))


def choreography_radius(alpha, m, n):
    """Radius of the pure n-body choreography (M = 0): 2^(-(alpha+1)/(alpha+2)) (alpha m sum)^(1/(alpha+2))."""
    if not m > 0:
        raise DomainError("m must be positive")
    return 2.0 ** (-(alpha + 1.0) / (alpha + 2.0)) * (alpha * m * sin_sum(alpha, n)) ** (1.0 / (alpha + 2.0))


def mismatch_f(lam, params):
    """
    F(lambda) = R2(lambda) - R1(lambda) on (-1, 1), strictly increasing.

    Where 4 beta M / (1 + lambda) < 1 the radicand of R1 is negative and R1 is
    taken as 0, so F stays continuous and monotone.
    """
    if not -1.0 < lam < 1.0:
        raise DomainError("lambda must lie in (-1, 1)")
    return _mismatch(1.0 + lam, 1.0 - lam, params)


def _mismatch(onep, onem, params):
    r2 = _r2(onem, params.alpha, params.m, params.n) if params.m > 0 else 0.0
    return r2 - _r1(onep, params.beta, params.M)


def _mismatch_slope(onep, onem, params):
    """dF/dtau for lambda = tanh(tau): both 1 +- lambda carry a factor onep * onem."""
    slope = 0.0
    if params.m > 0:
        slope += _r2(onem, params.alpha, params.m, params.n) * onep / (params.alpha + 2.0)
    radicand = _r1_radicand(onep, params.beta, params.M)
    if radicand > 0:
        slope += (radicand + 1.0) * onem / ((params.beta + 2.0) * math.sqrt(radicand))
    return slope


def lower_bound(lam, params):
    """
    Psi(s0) + sum_j Phi_j(s_bar_j): the bound A~ >= A~1 + A~2 >= lower_bound.

    At lambda = lambda~ it equals the reduced action of the circle of radius R*.
    """
    return lower_bound_from(1.0 + lam, 1.0 - lam, params)


def lower_bound_from(onep, onem, params):
    total = 0.0
    if params.M > 0:
        if not onep > 0:
            raise DomainError("lambda must be > -1 when M > 0")
        total += psi_minimum(onep, params.beta, params.M)
    if params.m > 0:
        if not onem > 0:
            raise DomainError("lambda must be < 1 when m > 0")
        total += phi_minimum(onem, params)
    return total


def circle_action(R, params):
    """Reduced action of circle_path(R): every integrand is constant on the circle."""
    if not R > 0:
        raise DomainError("circle radius must be positive")
    kinetic = math.pi * R * R
    center = 4.0 * math.pi * params.M * (R * R + 1.0) ** (-0.5 * params.beta)
    mutual = math.pi * params.m * (2.0 * R) ** -params.alpha * sin_sum(params.alpha, params.n)
    return ActionBreakdown(kinetic, center, mutual)


def force_balance_residual(R, params):
    """
    R - [alpha m (2R)^-(alpha+1) sum_j sin^-alpha(j pi/n) + 2 beta M R (R^2+1)^-((beta+2)/2)].

    Zero iff the unit-angular-speed circle of radius R balances centripetal
    acceleration against the mutual and center attraction.
    """
    if not R > 0:
        raise DomainError("circle radius must be positive")
    mutual = params.alpha * params.m * (2.0 * R) ** -(params.alpha + 1.0) * sin_sum(params.alpha, params.n)
    center = 2.0 * params.beta * params.M * R * (R * R + 1.0) ** (-0.5 * (params.beta + 2.0))
    return R - (mutual + center)


def psi_minimum(onep, beta, M):
    """Psi(s0) given 1 + lambda."""
    return _psi(_psi_argmin(onep, beta, M), onep, beta, M)


def phi_minimum(onem, params):
    """sum_j Phi_j(s_bar_j) given 1 - lambda."""
    return sum(_phi(_phi_argmin(onem, j, params), onem, j, params) for j in range(1, params.n))
