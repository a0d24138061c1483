"""High-accuracy deterministic reference solutions.

solve_reference minimizes the composite objective (mean exact loss plus
squared-l2 penalty) by full-gradient descent on the smoothed surrogate,
annealing the smoothness parameter down to 1e-6, then polishing on the
exact objective with an averaged subgradient pass that keeps the best
point seen.  Every phase is deterministic, so the returned minimum is a
stable oracle for convergence and regret measurements.
"""

from __future__ import annotations

import math

import numpy as np

from .data import Dataset
from .errors import OracleError
from .losses import ABSOLUTE, HINGE

ANNEAL_GAMMAS = tuple(10.0 ** -k for k in range(7))  # 1 down to 1e-6
STALL_REL_TOL = 1e-9
CHECK_EVERY = 25


def weighted_rows(ds: Dataset) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense rows of the distinct samples with their empirical weights.

    Streams drawn with replacement repeat samples;  collapsing duplicates
    keeps the objective identical while shrinking the matrices.
    """
    slots: dict[tuple, int] = {}
    counts: list[int] = []
    reps: list[int] = []
    for i, s in enumerate(ds.samples):
        key = (float(s.label), s.features.indices.tobytes(), s.features.values.tobytes())
        slot = slots.get(key)
        if slot is None:
            slots[key] = len(reps)
            reps.append(i)
            counts.append(1)
        else:
            counts[slot] += 1
    X = np.zeros((len(reps), ds.dim))
    y = np.empty(len(reps))
    for row, i in enumerate(reps):
        s = ds.samples[i]
        X[row, s.features.positions] = s.features.values
        y[row] = s.label
    w = np.asarray(counts, dtype=float) / len(ds)
    return X, y, w


def _residuals(X: np.ndarray, y: np.ndarray, family: str, x: np.ndarray) -> np.ndarray:
    sx = X @ x
    return 1.0 - y * sx if family == HINGE else y - sx


def exact_composite(
    X: np.ndarray, y: np.ndarray, w: np.ndarray, family: str, lam: float, x: np.ndarray
) -> float:
    r = _residuals(X, y, family, x)
    loss = np.maximum(r, 0.0) if family == HINGE else np.abs(r)
    return float(w @ loss) + 0.5 * lam * float(x @ x)


def _exact_subgradient(
    X: np.ndarray, y: np.ndarray, w: np.ndarray, family: str, lam: float, x: np.ndarray
) -> np.ndarray:
    r = _residuals(X, y, family, x)
    if family == HINGE:
        coef = np.where(r > 0.0, -y, 0.0)
    else:
        coef = -np.sign(r)
    return X.T @ (w * coef) + lam * x


def _smoothed_value_grad(
    X: np.ndarray, y: np.ndarray, w: np.ndarray,
    family: str, lam: float, gamma: float, x: np.ndarray,
) -> tuple[float, np.ndarray]:
    r = _residuals(X, y, family, x)
    lo = 0.0 if family == HINGE else -1.0
    u = np.clip(r / gamma, lo, 1.0)
    vals = u * r - 0.5 * gamma * u * u
    coef = -u * y if family == HINGE else -u
    value = float(w @ vals) + 0.5 * lam * float(x @ x)
    grad = X.T @ (w * coef) + lam * x
    return value, grad


def _minimize_smoothed(
    X, y, w, family: str, lam: float, gamma: float,
    x0: np.ndarray, max_iters: int,
) -> tuple[np.ndarray, int]:
    """Accelerated full-gradient descent until consecutive objective checks
    agree to STALL_REL_TOL relative; returns (x, iterations spent)."""
    scale = np.ones_like(y) if family == ABSOLUTE else y * y
    lips = float(w @ (scale * (X * X).sum(axis=1))) / gamma + lam
    inv_l = 1.0 / lips
    if lam > 0.0:
        sq = math.sqrt(lam / lips)
        beta = (1.0 - sq) / (1.0 + sq)
    else:
        beta = None  # FISTA momentum below
    x_prev = x0.copy()
    x = x0.copy()
    tk = 1.0
    prev_val = _smoothed_value_grad(X, y, w, family, lam, gamma, x)[0]
    for it in range(1, max_iters + 1):
        if beta is None:
            tk_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * tk * tk))
            mom = (tk - 1.0) / tk_next
            tk = tk_next
        else:
            mom = beta
        z = x + mom * (x - x_prev)
        _, grad = _smoothed_value_grad(X, y, w, family, lam, gamma, z)
        x_prev = x
        x = z - inv_l * grad
        if it % CHECK_EVERY == 0:
            val = _smoothed_value_grad(X, y, w, family, lam, gamma, x)[0]
            if abs(val - prev_val) <= STALL_REL_TOL * max(1.0, abs(val)):
                return x, it
            prev_val = val
    raise OracleError(
        f"no convergence certificate within {max_iters} iterations at gamma={gamma}; "
        "enlarge the budget"
    )


def solve_reference(
    ds: Dataset,
    family: str,
    lam: float,
    budget: int = 400_000,
    x0: np.ndarray | None = None,
    polish_steps: int = 200,
) -> tuple[np.ndarray, float]:
    """Minimizer and minimum of the exact composite objective on ds."""
    X, y, w = weighted_rows(ds)
    x = np.zeros(ds.dim) if x0 is None else np.asarray(x0, dtype=float).copy()

    remaining = budget
    for gamma in ANNEAL_GAMMAS:
        x, spent = _minimize_smoothed(X, y, w, family, lam, gamma, x, remaining)
        remaining -= spent

    best_x = x
    best_val = exact_composite(X, y, w, family, lam, x)

    # polish: averaged subgradient descent on the exact objective, keeping
    # the best point seen (the anneal result is never discarded)
    norms = (X * X).sum(axis=1)
    eta0 = 1e-3 / max(1.0, math.sqrt(float(w @ norms)))
    avg = x.copy()
    cur = x.copy()
    for k in range(1, polish_steps + 1):
        eta = eta0 / k if lam > 0.0 else eta0 / math.sqrt(k)
        cur = cur - eta * _exact_subgradient(X, y, w, family, lam, cur)
        avg = avg + (cur - avg) / (k + 1)
        for cand in (cur, avg):
            val = exact_composite(X, y, w, family, lam, cand)
            if val < best_val:
                best_val = val
                best_x = cand.copy()

    return best_x, best_val
