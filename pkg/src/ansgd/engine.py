"""Accelerated stochastic descent for smoothed nonsmooth composites.

Each step forms a lookahead point y from the iterate pair (x, v), draws one
sample, re-smooths the loss with the scheduled smoothness parameter, and
moves both x and v against the composite gradient at y:

    y      = [(1-alpha)(mu+theta) x + alpha theta v] / [mu(1-alpha) + theta]
    x_next = y - eta * G(y)
    v_next = [theta v + mu y - G(y)] / (mu + theta)

where G(y) is the surrogate-loss gradient at the drawn sample plus the
regularizer gradient.  The per-step tuple (alpha, gamma_next, theta, eta)
comes from one of two schedules: a convex one with alpha = 2/(t+2) and a
strongly convex one with alpha = min(1, 2/(t+1)), both tying the smoothness
parameter to alpha so the surrogate tightens as the run progresses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset, RngState, draw
from .errors import ConfigError, DivergenceError
from .losses import Regularizer, SmoothedLoss

CONVEX = "convex"
STRONGLY_CONVEX = "strongly_convex"


@dataclass(frozen=True)
class Schedule:
    """Stepsize policy parameters.

    grad_lipschitz is the smoothness constant of the regularizer, mu its
    strong-convexity modulus (0 in convex mode), op_norm_sq an estimate of
    the mean squared norm of the loss operator (see
    data.estimate_operator_norm_sq), omega the tuning constant, and zeta
    the strong-convexity modulus of the dual penalty (1 for the quadratic
    penalty used by both built-in losses).
    """

    mode: str
    grad_lipschitz: float
    mu: float
    op_norm_sq: float
    omega: float
    zeta: float = 1.0

    def __post_init__(self):
        if self.mode not in (CONVEX, STRONGLY_CONVEX):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.mode == STRONGLY_CONVEX and not self.mu > 0.0:
            raise ConfigError(f"strongly convex mode requires mu > 0, got mu={self.mu}")
        if self.mode == CONVEX and self.mu != 0.0:
            raise ConfigError(f"convex mode requires mu = 0, got mu={self.mu}")
        if not self.omega > 0.0:
            raise ConfigError(f"omega must be positive, got {self.omega}")
        if self.grad_lipschitz < 0.0 or self.op_norm_sq < 0.0:
            raise ConfigError("grad_lipschitz and op_norm_sq must be nonnegative")
        if not self.zeta > 0.0:
            raise ConfigError(f"zeta must be positive, got {self.zeta}")


@dataclass(frozen=True)
class StepCoefficients:
    alpha: float
    gamma_next: float
    theta: float
    eta: float


def coefficients(sched: Schedule, t: int) -> StepCoefficients:
    """Per-iteration tuple (alpha, gamma_next, theta, eta) at step t >= 0."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if sched.mode == CONVEX:
        alpha = 2.0 / (t + 2)
        theta = (
            sched.grad_lipschitz * alpha
            + sched.omega / math.sqrt(alpha)
            + sched.op_norm_sq / sched.zeta
        )
        eta = alpha / theta
    else:
        alpha = min(1.0, 2.0 / (t + 1))
        theta = (
            sched.grad_lipschitz * alpha
            + sched.mu / (2.0 * alpha)
            + sched.op_norm_sq / (sched.omega * sched.zeta)
            - sched.mu
        )
        if theta <= 0.0:
            raise ConfigError(
                f"theta = {theta} <= 0 at t={t}: mu={sched.mu}, omega={sched.omega}, "
                f"op_norm_sq={sched.op_norm_sq}, grad_lipschitz={sched.grad_lipschitz}"
            )
        eta = alpha / (sched.mu + theta)
    return StepCoefficients(alpha=alpha, gamma_next=alpha, theta=theta, eta=eta)


def theta_default_strongly_convex(sched: Schedule, t: int) -> float:
    """Parameter-free theta: omega chosen so op_norm_sq/(omega*zeta) = 1."""
    if sched.mode != STRONGLY_CONVEX:
        raise ConfigError("parameter-free theta applies to strongly convex mode only")
    alpha = min(1.0, 2.0 / (t + 1))
    theta = sched.grad_lipschitz * alpha + sched.mu / (2.0 * alpha) + 1.0 - sched.mu
    if theta <= 0.0:
        raise ConfigError(f"default theta = {theta} <= 0 at t={t}: mu={sched.mu}")
    return theta


def smallest_fast_rate_index(sched: Schedule) -> float:
    """Iteration index beyond which the operator-norm error term decays
    quadratically: max(4*op_norm_sq/(zeta*mu), 2*(grad_lipschitz/mu)^(1/3)).
    Diagnostic only."""
    if not sched.mu > 0.0:
        raise ValueError("requires mu > 0")
    return max(
        4.0 * sched.op_norm_sq / (sched.zeta * sched.mu),
        2.0 * (sched.grad_lipschitz / sched.mu) ** (1.0 / 3.0),
    )


@dataclass
class OptimizerState:
    """Iterate pair plus step counter and private sample stream."""

    x: np.ndarray
    v: np.ndarray
    t: int
    rng: RngState


def init_state(dim: int, rng: RngState) -> OptimizerState:
    return OptimizerState(x=np.zeros(dim), v=np.zeros(dim), t=0, rng=rng)


def step(
    state: OptimizerState,
    sched: Schedule,
    family: str,
    reg: Regularizer,
    ds: Dataset,
) -> OptimizerState:
    """Advance one iteration in place; draws exactly one sample."""
    co = coefficients(sched, state.t)
    alpha, theta, eta, mu = co.alpha, co.theta, co.eta, sched.mu

    den = mu * (1.0 - alpha) + theta
    y = ((1.0 - alpha) * (mu + theta) / den) * state.x
    y += (alpha * theta / den) * state.v

    sample = draw(ds, state.rng)
    loss = SmoothedLoss(family, co.gamma_next)
    coef = loss.gradient_coef(y, sample)

    grad = reg.lam * y
    if coef != 0.0:
        grad[sample.features.positions] += coef * sample.features.values

    x_next = y - eta * grad

    v_next = theta * state.v
    if mu != 0.0:
        v_next += mu * y
    v_next -= grad
    v_next /= mu + theta

    if not math.isfinite(float(x_next.sum()) + float(v_next.sum())):
        raise DivergenceError(state.t, "non-finite iterate (check omega/lambda)")

    state.x = x_next
    state.v = v_next
    state.t += 1
    return state
