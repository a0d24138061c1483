"""Plain and averaged stochastic subgradient descent baselines.

Both minimize the exact nonsmooth composite (no smoothing) with one uniform
draw per step and share the engine's sample-stream contract, so same-seed
runs of any algorithm consume identical data.  The averaged variant reports
the running mean of the iterates instead of the last one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset, RngState, draw
from .engine import CONVEX, STRONGLY_CONVEX
from .errors import ConfigError, DivergenceError
from .losses import Regularizer, exact_subgradient_coef

SGD = "sgd"
AVERAGED_SGD = "averaged_sgd"


def stepsize(variant: str, mode: str, omega: float, mu: float, t: int) -> float:
    """Stepsize for update index t >= 1."""
    if t < 1:
        raise ValueError(f"stepsize index starts at 1, got {t}")
    if mode == CONVEX:
        return omega / math.sqrt(t)
    if variant == SGD:
        return 1.0 / (mu * (t + omega))
    return 1.0 / (omega * (1.0 + mu * t / omega) ** 0.75)


@dataclass
class BaselineState:
    x: np.ndarray
    x_avg: np.ndarray
    t: int
    rng: RngState
    variant: str
    mode: str
    omega: float
    mu: float

    def __post_init__(self):
        if self.variant not in (SGD, AVERAGED_SGD):
            raise ConfigError(f"unknown variant {self.variant!r}")
        if self.mode not in (CONVEX, STRONGLY_CONVEX):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.mode == STRONGLY_CONVEX and not self.mu > 0.0:
            raise ConfigError(f"strongly convex mode requires mu > 0, got mu={self.mu}")
        if not self.omega > 0.0:
            raise ConfigError(f"omega must be positive, got {self.omega}")


def init_baseline(dim: int, rng: RngState, variant: str, mode: str, omega: float, mu: float) -> BaselineState:
    return BaselineState(
        x=np.zeros(dim), x_avg=np.zeros(dim), t=0, rng=rng,
        variant=variant, mode=mode, omega=omega, mu=mu,
    )


def baseline_step(state: BaselineState, reg: Regularizer, family: str, ds: Dataset) -> BaselineState:
    """One composite-subgradient update plus incremental averaging."""
    t = state.t + 1
    eta = stepsize(state.variant, state.mode, state.omega, state.mu, t)

    sample = draw(ds, state.rng)
    grad = reg.lam * state.x
    coef = exact_subgradient_coef(family, state.x, sample)
    if coef != 0.0:
        grad[sample.features.positions] += coef * sample.features.values

    x_next = state.x - eta * grad
    if not math.isfinite(float(x_next.sum())):
        raise DivergenceError(t, "non-finite iterate (check omega)")

    state.x = x_next
    state.x_avg = state.x_avg + (x_next - state.x_avg) / t
    state.t = t
    return state


def evaluation_point(state: BaselineState) -> np.ndarray:
    """Last iterate for sgd, running mean for averaged_sgd."""
    if state.t < 1:
        raise ValueError("no iterate produced yet")
    return state.x if state.variant == SGD else state.x_avg
