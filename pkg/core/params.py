import logging
import math
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import DomainError

logger = logging.getLogger(__name__)

DEFAULT_C1 = (1.0, 0.0, 0.0)
DEFAULT_C2 = (-1.0, 0.0, 0.0)

# Tolerancia para c1 == -c2
ANTIPODAL_TOL = 1e-12


@dataclass(frozen=True)
class ProblemParams:
    """
    Physical constants of the 2 fixed centers + n body problem.

    alpha: exponent of the mutual potential 1/r^alpha
    beta:  exponent of the center potential 1/r^beta
    m:     mass of each moving body (0 allowed for the single-particle limit)
    M:     mass of each fixed center (0 reproduces the pure choreography limit)
    n:     number of moving bodies
    c1/c2: fixed centers, antipodal
    """
    alpha: float
    beta: float
    m: float
    M: float
    n: int
    c1: tuple = field(default=DEFAULT_C1)
    c2: tuple = field(default=DEFAULT_C2)

    @property
    def centers(self):
        return np.array([self.c1, self.c2], dtype=float)

    def as_dict(self):
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'm': self.m,
            'M': self.M,
            'n': self.n,
            'c1': list(self.c1),
            'c2': list(self.c2),
        }

    @classmethod
    def from_dict(cls, data):
        """Build (and validate) params from the JSON object accepted by the CLI."""
        try:
            params = cls(
                alpha=float(data['alpha']),
                beta=float(data['beta']),
                m=float(data['m']),
                M=float(data['M']),
                n=int(data['n']),
                c1=tuple(float(v) for v in data.get('c1', DEFAULT_C1)),
                c2=tuple(float(v) for v in data.get('c2', DEFAULT_C2)),
            )
        except KeyError as e:
            raise DomainError(f"missing parameter {e.args[0]!r}") from e
        except (TypeError, ValueError) as e:
            raise DomainError(f"malformed parameter: {e}") from e
        return validate(params)


def validate(params):
    """
    Return params unchanged iff every invariant holds.

    Raises:
        DomainError naming the first violated invariant.
    """
    if not (params.alpha > 0 and math.isfinite(params.alpha)):
        raise DomainError("alpha must be positive")
    if not (params.beta > 0 and math.isfinite(params.beta)):
        raise DomainError("beta must be positive")
    if not (params.m >= 0 and math.isfinite(params.m)):
        raise DomainError("m must be nonnegative")
    if not (params.M >= 0 and math.isfinite(params.M)):
        raise DomainError("M must be nonnegative")
    if isinstance(params.n, bool) or int(params.n) != params.n or params.n < 2:
        raise DomainError("n must be an integer >= 2")

    c1 = np.asarray(params.c1, dtype=float)
    c2 = np.asarray(params.c2, dtype=float)
    if c1.shape != (3,) or c2.shape != (3,):
        raise DomainError("centers must be points in 3-space")
    if not (np.all(np.isfinite(c1)) and np.all(np.isfinite(c2))):
        raise DomainError("centers must be finite")
    if np.max(np.abs(c1 + c2)) > ANTIPODAL_TOL * max(1.0, float(np.max(np.abs(c1)))):
        raise DomainError("centers must be antipodal")

    return params
