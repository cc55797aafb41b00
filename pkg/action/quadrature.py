import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.conf import setting
from core.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Uniform rectangle rule on [0, 2pi): spectrally accurate for smooth periodic integrands.

    nodes defaults to the CHOREO2C_NODES setting.
    """
    nodes: int = None

    def __post_init__(self):
        if self.nodes is None:
            object.__setattr__(self, 'nodes', setting('CHOREO2C_NODES'))
        if int(self.nodes) != self.nodes or self.nodes < 4:
            raise DomainError("quadrature needs at least 4 nodes")

    @property
    def weight(self):
        return 2.0 * math.pi / self.nodes

    def times(self):
        return 2.0 * math.pi * np.arange(self.nodes) / self.nodes

    def check_resolution(self, order):
        """Warn (never fail) when N < 8K."""
        if self.nodes < 8 * order:
            logger.warning(f"⚠️ Cuadratura sub-resuelta: {self.nodes} nodos para orden {order} (se recomienda >= {8 * order})")
            return False
        return True


@lru_cache(maxsize=64)
def shifted_basis(order, nodes, n):
    """
    cos/sin tables at the nodes shifted by j 2pi/n, j = 0..n-1.

    Returns a tuple of (C_j, S_j) pairs, each of shape (nodes, order) with
    C_j[i, k-1] = cos(k (t_i + 2 pi j / n)).
    """
    t = 2.0 * math.pi * np.arange(nodes) / nodes
    k = np.arange(1, order + 1)
    tables = []
    for j in range(n):
        phases = np.outer(t + 2.0 * math.pi * j / n, k)
        C = np.cos(phases)
        S = np.sin(phases)
        C.setflags(write=False)
        S.setflags(write=False)
        tables.append((C, S))
    return tuple(tables)


def sample_shifted(path, basis):
    """Points x(t_i + theta_j) for every table in basis, shape (len(basis), nodes, 3)."""
    a = path.cos_coeffs[1:]
    b = path.sin_coeffs
    return np.stack([path.mean + C @ a + S @ b for C, S in basis])
