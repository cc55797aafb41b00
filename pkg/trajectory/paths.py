"""
Truncated Fourier loops x(t) = a_0 + sum_k a_k cos kt + b_k sin kt, t in [0, 2pi).

Real (a_k, b_k) storage makes the reality condition of the complex expansion
structural. a_0 is the mean of the loop.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import DomainError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FourierPath:
    """
    One 2pi-periodic loop in 3-space.

    cos_coeffs has shape (K+1, 3): row 0 is the mean a_0, row k is a_k.
    sin_coeffs has shape (K, 3): row k-1 is b_k.
    """
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        cos_coeffs = _frozen(self.cos_coeffs)
        sin_coeffs = _frozen(self.sin_coeffs)
        if cos_coeffs.ndim != 2 or cos_coeffs.shape[1] != 3 or cos_coeffs.shape[0] < 2:
            raise DomainError("cos_coeffs must have shape (K+1, 3) with K >= 1")
        if sin_coeffs.shape != (cos_coeffs.shape[0] - 1, 3):
            raise DomainError("sin_coeffs must have shape (K, 3)")
        if not (np.all(np.isfinite(cos_coeffs)) and np.all(np.isfinite(sin_coeffs))):
            raise DomainError("coefficients must be finite")
        object.__setattr__(self, 'cos_coeffs', cos_coeffs)
        object.__setattr__(self, 'sin_coeffs', sin_coeffs)

    @property
    def order(self):
        return self.sin_coeffs.shape[0]

    @property
    def mean(self):
        return self.cos_coeffs[0]

    @property
    def harmonics(self):
        return np.arange(1, self.order + 1)

    @classmethod
    def zeros(cls, order):
        if order < 1:
            raise DomainError("order must be >= 1")
        return cls(np.zeros((order + 1, 3)), np.zeros((order, 3)))

    @classmethod
    def from_harmonics(cls, order, cos=None, sin=None, mean=None):
        """Build a path from sparse dicts {k: vector}."""
        cos_coeffs = np.zeros((order + 1, 3))
        sin_coeffs = np.zeros((order, 3))
        if mean is not None:
            cos_coeffs[0] = mean
        for k, vec in (cos or {}).items():
            cos_coeffs[k] = vec
        for k, vec in (sin or {}).items():
            sin_coeffs[k - 1] = vec
        return cls(cos_coeffs, sin_coeffs)

    def __add__(self, other):
        return FourierPath(self.cos_coeffs + other.cos_coeffs, self.sin_coeffs + other.sin_coeffs)

    def __sub__(self, other):
        return FourierPath(self.cos_coeffs - other.cos_coeffs, self.sin_coeffs - other.sin_coeffs)

    def __neg__(self):
        return FourierPath(-self.cos_coeffs, -self.sin_coeffs)

    def scaled(self, factor):
        return FourierPath(factor * self.cos_coeffs, factor * self.sin_coeffs)

    def allclose(self, other, atol=1e-12):
        return (
            self.order == other.order
            and np.allclose(self.cos_coeffs, other.cos_coeffs, rtol=0.0, atol=atol)
            and np.allclose(self.sin_coeffs, other.sin_coeffs, rtol=0.0, atol=atol)
        )


def evaluate(path, t):
    """
    Sum the series at t.

    Scalar t gives a point of shape (3,); an array of times gives shape (len(t), 3).
    """
    scalar = np.ndim(t) == 0
    times = np.atleast_1d(np.asarray(t, dtype=float))
    phases = np.outer(times, path.harmonics)
    points = path.mean + np.cos(phases) @ path.cos_coeffs[1:] + np.sin(phases) @ path.sin_coeffs
    return points[0] if scalar else points


def sample(path, nodes):
    """Points at the uniform grid t_i = 2 pi i / nodes, shape (nodes, 3)."""
    return evaluate(path, uniform_nodes(nodes))


def uniform_nodes(nodes):
    if nodes < 1:
        raise DomainError("nodes must be >= 1")
    return TWO_PI * np.arange(nodes) / nodes


def shift(path, theta):
    """The path t -> x(t + theta), by exact phase rotation of each harmonic."""
    k_theta = path.harmonics * theta
    c = np.cos(k_theta)[:, None]
    s = np.sin(k_theta)[:, None]
    a = path.cos_coeffs[1:]
    b = path.sin_coeffs
    cos_coeffs = np.vstack([path.mean, a * c + b * s])
    return FourierPath(cos_coeffs, -a * s + b * c)


def derivative(path):
    """Term-wise d/dt: (a_k, b_k) -> (k b_k, -k a_k); the mean drops."""
    k = path.harmonics[:, None]
    cos_coeffs = np.vstack([np.zeros(3), k * path.sin_coeffs])
    return FourierPath(cos_coeffs, -k * path.cos_coeffs[1:])


def negate(path):
    """x -> -x."""
    return -path


def project_zero_mean(path):
    cos_coeffs = path.cos_coeffs.copy()
    cos_coeffs[0] = 0.0
    return FourierPath(cos_coeffs, path.sin_coeffs)


def project_antiperiodic(path):
    """Keep only odd harmonics: x(t) = -x(t + pi). The mean is even (k = 0) and drops too."""
    cos_coeffs = path.cos_coeffs.copy()
    sin_coeffs = path.sin_coeffs.copy()
    cos_coeffs[0::2] = 0.0
    sin_coeffs[1::2] = 0.0
    return FourierPath(cos_coeffs, sin_coeffs)


def rotate(path, matrix):
    """Apply a linear map of 3-space to every coefficient."""
    matrix = np.asarray(matrix, dtype=float)
    return FourierPath(path.cos_coeffs @ matrix.T, path.sin_coeffs @ matrix.T)


def circle_path(R, phase=0.0, order=1):
    """x(t) = (0, R cos(t + phase), R sin(t + phase)): uniform circle in the yoz-plane."""
    if not R > 0:
        raise DomainError("circle radius must be positive")
    return FourierPath.from_harmonics(
        order,
        cos={1: (0.0, R * math.cos(phase), R * math.sin(phase))},
        sin={1: (0.0, -R * math.sin(phase), R * math.cos(phase))},
    )


def resize(path, order):
    """Truncate or zero-pad to a new order."""
    cos_coeffs = np.zeros((order + 1, 3))
    sin_coeffs = np.zeros((order, 3))
    keep = min(order, path.order)
    cos_coeffs[:keep + 1] = path.cos_coeffs[:keep + 1]
    sin_coeffs[:keep] = path.sin_coeffs[:keep]
    return FourierPath(cos_coeffs, sin_coeffs)


def l2_integral(path):
    """Parseval: integral over [0, 2pi] of |x|^2."""
    return TWO_PI * float(path.mean @ path.mean) + math.pi * (
        float(np.sum(path.cos_coeffs[1:] ** 2)) + float(np.sum(path.sin_coeffs ** 2))
    )


def kinetic_integral(path):
    """Parseval: integral over [0, 2pi] of |x'|^2 = pi sum k^2 (|a_k|^2 + |b_k|^2)."""
    k2 = path.harmonics ** 2
    energy = np.sum(path.cos_coeffs[1:] ** 2, axis=1) + np.sum(path.sin_coeffs ** 2, axis=1)
    return math.pi * float(k2 @ energy)


def chord_integral(path, theta):
    """Parseval: integral over [0, 2pi] of |x(t) - x(t + theta)|^2."""
    weights = 4.0 * np.sin(0.5 * path.harmonics * theta) ** 2
    energy = np.sum(path.cos_coeffs[1:] ** 2, axis=1) + np.sum(path.sin_coeffs ** 2, axis=1)
    return math.pi * float(weights @ energy)


def coefficient_norm(path):
    return float(np.sqrt(np.sum(path.cos_coeffs ** 2) + np.sum(path.sin_coeffs ** 2)))


def to_vector(path):
    """Flat coefficient vector [a_0..a_K, b_1..b_K], length 3 (2K + 1)."""
    return np.concatenate([path.cos_coeffs.ravel(), path.sin_coeffs.ravel()])


def from_vector(vector, order):
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (3 * (2 * order + 1),):
        raise DomainError(f"coefficient vector of order {order} must have length {3 * (2 * order + 1)}")
    split = 3 * (order + 1)
    return FourierPath(vector[:split].reshape(order + 1, 3), vector[split:].reshape(order, 3))


def constraint_mask(order, antiperiodic=False):
    """Boolean mask over to_vector entries that stay free after projection."""
    free = to_vector(FourierPath(np.ones((order + 1, 3)), np.ones((order, 3))))
    template = from_vector(free, order)
    template = project_antiperiodic(template) if antiperiodic else project_zero_mean(template)
    return to_vector(template) != 0.0


def random_path(rng, order, scale=1.0, decay=2.0):
    """
    Zero-mean random loop with harmonics damped as k^-decay.

    Args:
        rng: numpy Generator
        order: truncation order
        scale: multiplies every coefficient
    """
    damp = (np.arange(1, order + 1, dtype=float) ** -decay)[:, None]
    cos_coeffs = np.vstack([np.zeros(3), damp * rng.standard_normal((order, 3))])
    sin_coeffs = damp * rng.standard_normal((order, 3))
    return FourierPath(scale * cos_coeffs, scale * sin_coeffs)
