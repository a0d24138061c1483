"""Nonsmooth losses and their closed-form smooth surrogates.

Each loss is the maximum of u * residual - gamma * u**2 / 2 over a dual
interval (hinge: u in [0, 1], residual = 1 - l*<s, x>; absolute:
u in [-1, 1], residual = l - <s, x>).  The quadratic penalty makes the
surrogate differentiable with a (||s||^2 * l^2 / gamma)-Lipschitz gradient
while staying within gamma/2 of the exact loss from below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Sample

HINGE = "hinge"
ABSOLUTE = "absolute"

# peak of the dual penalty u**2/2 over either dual interval
MAX_DUAL_PENALTY = 0.5

# strong-convexity modulus of the dual penalty
DUAL_PENALTY_MODULUS = 1.0


def _check_family(family: str) -> None:
    if family not in (HINGE, ABSOLUTE):
        raise ValueError(f"unknown loss family {family!r}")


def residual(family: str, x: np.ndarray, sample: Sample) -> float:
    """Scalar the dual variable multiplies: 1 - l*<s,x> (hinge), l - <s,x> (absolute)."""
    _check_family(family)
    sx = sample.features.dot(x)
    if family == HINGE:
        return 1.0 - sample.label * sx
    return sample.label - sx


@dataclass(frozen=True)
class SmoothedLoss:
    """A loss family together with its current smoothness parameter."""

    family: str
    gamma: float

    def __post_init__(self):
        _check_family(self.family)

    def _require_gamma(self) -> None:
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def maximizer(self, res: float) -> float:
        """Exact argmax of u*res - gamma*u**2/2 over the dual interval."""
        self._require_gamma()
        u = res / self.gamma
        lo = 0.0 if self.family == HINGE else -1.0
        return min(1.0, max(lo, u))

    def value(self, x: np.ndarray, sample: Sample) -> float:
        """Surrogate loss at x; equals the dual maximum in closed form."""
        self._require_gamma()
        res = residual(self.family, x, sample)
        g = self.gamma
        if self.family == HINGE:
            if res <= 0.0:
                return 0.0
            if res < g:
                return res * res / (2.0 * g)
            return res - g / 2.0
        a = abs(res)
        if a < g:
            return res * res / (2.0 * g)
        return a - g / 2.0

    def gradient_coef(self, x: np.ndarray, sample: Sample) -> float:
        """Scalar c with gradient = c * s (sparse on the sample's support)."""
        self._require_gamma()
        u = self.maximizer(residual(self.family, x, sample))
        if self.family == HINGE:
            return -u * sample.label
        return -u

    def gradient(self, x: np.ndarray, sample: Sample) -> np.ndarray:
        """Dense surrogate gradient; zero off the sample's support."""
        out = np.zeros_like(x)
        c = self.gradient_coef(x, sample)
        if c != 0.0:
            out[sample.features.positions] = c * sample.features.values
        return out

    def gradient_lipschitz(self, sample: Sample) -> float:
        """Lipschitz constant of the surrogate gradient: ||l*s||^2 / gamma."""
        self._require_gamma()
        scale = sample.label ** 2 if self.family == HINGE else 1.0
        return scale * sample.features.norm_sq() / self.gamma


def exact_loss(family: str, x: np.ndarray, sample: Sample) -> float:
    """The underlying nonsmooth loss (reported objective for all algorithms)."""
    res = residual(family, x, sample)
    if family == HINGE:
        return max(0.0, res)
    return abs(res)


def exact_subgradient_coef(family: str, x: np.ndarray, sample: Sample) -> float:
    """Scalar c with subgradient = c * s; ties at kinks resolve to 0."""
    res = residual(family, x, sample)
    if family == HINGE:
        return -sample.label if res > 0.0 else 0.0
    if res > 0.0:
        return -1.0
    if res < 0.0:
        return 1.0
    return 0.0


def exact_subgradient(family: str, x: np.ndarray, sample: Sample) -> np.ndarray:
    out = np.zeros_like(x)
    c = exact_subgradient_coef(family, x, sample)
    if c != 0.0:
        out[sample.features.positions] = c * sample.features.values
    return out


@dataclass(frozen=True)
class Regularizer:
    """Squared-l2 penalty (lam/2)*||x||^2; lam-smooth and lam-strongly convex."""

    lam: float

    def __post_init__(self):
        if self.lam < 0.0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")

    def value(self, x: np.ndarray) -> float:
        return 0.5 * self.lam * float(x @ x)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.lam * x

    @property
    def grad_lipschitz(self) -> float:
        return self.lam

    @property
    def strong_convexity(self) -> float:
        return self.lam
