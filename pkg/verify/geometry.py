"""
Shape diagnostics: is a loop a uniform circular motion, and where does it live.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from core.conf import setting
from core.exceptions import DegenerateError, DomainError
from trajectory.paths import derivative, evaluate, sample, shift, uniform_nodes

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-10
CHORD_VARIATION_TOL = 1e-10
CIRCLE_TOL = 1e-6
# Valores singulares por debajo de esto (relativo al mayor) cuentan como cero
RANK_TOL = 1e-12


def _canonical(normal):
    """Flip the normal so its largest component is positive."""
    return -normal if normal[np.argmax(np.abs(normal))] < 0 else normal


@dataclass(frozen=True)
class ChordCircleDiagnostic:
    chord_variation: float
    hypothesis_met: bool
    equal_lengths: bool = False
    orthogonal: bool = False
    normal: tuple = None
    radius: float = None

    @property
    def is_circle(self):
        return self.hypothesis_met and self.equal_lengths and self.orthogonal

    def as_dict(self):
        data = {
            'chord_variation': self.chord_variation,
            'hypothesis_met': self.hypothesis_met,
            'equal_lengths': self.equal_lengths,
            'orthogonal': self.orthogonal,
        }
        if not self.hypothesis_met:
            data['status'] = 'hypothesis not met'
        if self.normal is not None:
            data['normal'] = list(self.normal)
            data['radius'] = self.radius
        return data


def constant_chord_implies_circle(path, theta, nodes=256):
    """
    For x = a cos t + b sin t with a constant chord |x(t) - x(t + theta)|:
    check |a| = |b| and a . b = 0 and return the circle they span.

    Raises:
        DomainError if the path carries harmonics above the first.
    """
    if np.any(path.cos_coeffs[2:]) or np.any(path.sin_coeffs[1:]):
        raise DomainError("constant_chord_implies_circle needs a first-harmonic-only path")

    t = uniform_nodes(nodes)
    chord = np.linalg.norm(evaluate(path, t) - evaluate(shift(path, theta), t), axis=1)
    scale = max(float(chord.mean()), np.finfo(float).tiny)
    variation = float((chord.max() - chord.min()) / scale)
    if variation > CHORD_VARIATION_TOL:
        logger.info(f"🔍 Cuerda no constante (variación {variation:.3e}): hipótesis no satisfecha")
        return ChordCircleDiagnostic(chord_variation=variation, hypothesis_met=False)

    a = path.cos_coeffs[1]
    b = path.sin_coeffs[0]
    size = max(float(np.linalg.norm(a)), float(np.linalg.norm(b)), 1.0)
    equal_lengths = abs(np.linalg.norm(a) - np.linalg.norm(b)) <= ORTHOGONALITY_TOL * size
    orthogonal = abs(float(a @ b)) <= ORTHOGONALITY_TOL * size ** 2
    cross = np.cross(a, b)
    normal = None
    if np.linalg.norm(cross) > 0:
        normal = tuple(float(v) for v in _canonical(cross / np.linalg.norm(cross)))
    return ChordCircleDiagnostic(
        chord_variation=variation,
        hypothesis_met=True,
        equal_lengths=bool(equal_lengths),
        orthogonal=bool(orthogonal),
        normal=normal,
        radius=float(np.linalg.norm(a)),
    )


@dataclass(frozen=True)
class CircleFit:
    """
    Least-squares plane and circle through the samples of a loop.

    planarity_dev: largest distance of a sample from the plane.
    speed_dev: (max |x'| - min |x'|) / mean |x'|.
    radial_dev: largest | |x - center| - radius | over the samples, relative to radius.
    """
    center: np.ndarray
    radius: float
    normal: np.ndarray
    planarity_dev: float
    speed_dev: float
    radial_dev: float

    @property
    def uniform(self):
        """Uniform circular motion verdict."""
        return (
            self.planarity_dev < CIRCLE_TOL * self.radius
            and self.speed_dev < CIRCLE_TOL
            and self.radial_dev < CIRCLE_TOL
        )

    def as_dict(self):
        return {
            'center': self.center.tolist(),
            'radius': self.radius,
            'normal': self.normal.tolist(),
            'planarity_dev': self.planarity_dev,
            'speed_dev': self.speed_dev,
            'radial_dev': self.radial_dev,
            'uniform_circular_motion': self.uniform,
        }


def circle_fit(path, nodes=None):
    """
    Fit a plane by SVD of the centered samples, then a circle inside it by the
    algebraic (Kasa) least-squares fit.

    Raises:
        DegenerateError if the samples span less than a plane.
    """
    nodes = nodes or setting('CHOREO2C_NODES')
    points = sample(path, nodes)
    centroid = points.mean(axis=0)
    centered = points - centroid

    _, singular, axes = linalg.svd(centered, full_matrices=False)
    if singular[0] == 0.0 or singular[1] <= RANK_TOL * singular[0]:
        raise DegenerateError("sampled points span less than a plane")
    e1, e2, normal = axes[0], axes[1], axes[2]

    planarity = float(np.max(np.abs(centered @ normal)))
    u = centered @ e1
    v = centered @ e2
    design = np.column_stack([2.0 * u, 2.0 * v, np.ones_like(u)])
    (cu, cv, c), *_ = linalg.lstsq(design, u * u + v * v)
    radius = float(np.sqrt(c + cu * cu + cv * cv))
    center = centroid + cu * e1 + cv * e2

    radial = np.linalg.norm(points - center, axis=1)
    speed = np.linalg.norm(sample(derivative(path), nodes), axis=1)
    fit = CircleFit(
        center=center,
        radius=radius,
        normal=_canonical(normal),
        planarity_dev=planarity,
        speed_dev=float((speed.max() - speed.min()) / speed.mean()),
        radial_dev=float(np.max(np.abs(radial - radius)) / radius),
    )
    logger.debug(f"🔍 Ajuste circular: R={radius:.12g}, uniforme={fit.uniform}")
    return fit
