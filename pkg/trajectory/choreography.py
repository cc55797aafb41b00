import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError
from core.params import DEFAULT_C1, DEFAULT_C2
from trajectory.paths import TWO_PI, evaluate, shift, uniform_nodes

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1024

CHORD = 'chord'
CENTER = 'center'


@dataclass(frozen=True)
class ChoreographySystem:
    """n bodies on one loop: body i follows base shifted by (i - 1) 2pi/n."""
    base: object
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("n must be an integer >= 2")

    def phase(self, i):
        """Time offset of body i (0-based)."""
        return i * TWO_PI / self.n

    def body(self, i):
        return shift(self.base, self.phase(i))

    def bodies(self):
        return [self.body(i) for i in range(self.n)]


@dataclass(frozen=True)
class SeparationReport:
    distance: float
    family: str
    time: float
    index: int

    def __float__(self):
        return self.distance


def min_separation(system, samples=DEFAULT_SAMPLES, centers=(DEFAULT_C1, DEFAULT_C2)):
    """
    Smallest sampled distance between body 1 and its partners or the centers.

    Uniform sampling of a band-limited loop of order K at >= 8K nodes keeps the
    error on the minimum at the interpolation level; exact minima are not chased.

    Returns:
        SeparationReport with the attaining family ('chord' or 'center'), the
        sample time and the partner shift j (or center index, 1-based).
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    t = uniform_nodes(samples)
    x = evaluate(system.base, t)

    best = SeparationReport(math.inf, CHORD, 0.0, 0)
    for j in range(1, system.n):
        gaps = np.linalg.norm(x - evaluate(system.base, t + system.phase(j)), axis=1)
        i = int(np.argmin(gaps))
        if gaps[i] < best.distance:
            best = SeparationReport(float(gaps[i]), CHORD, float(t[i]), j)

    for index, center in enumerate(np.asarray(centers, dtype=float), start=1):
        gaps = np.linalg.norm(x - center, axis=1)
        i = int(np.argmin(gaps))
        if gaps[i] < best.distance:
            best = SeparationReport(float(gaps[i]), CENTER, float(t[i]), index)

    return best
