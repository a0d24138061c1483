"""Experiment runner: repeated seeded trials with test-set curves.

A run optimizes the regularized training objective and, on a fixed
iteration cadence, evaluates the exact (unsmoothed) composite objective
and, for classification, the accuracy on the held-out split.  Repeats use
seeds seed+0 .. seed+repeats-1 and emit one CSV row per evaluation.

Rows are byte-reproducible: the wall_clock_s column is read from the
harness clock, which defaults to a null clock (always 0.0) so identical
configurations yield identical CSV files.  Pass clock=time.perf_counter
to run_experiment for real timings at the cost of that guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import baselines, engine
from .data import (
    CLASSIFICATION,
    REGRESSION,
    Dataset,
    RngState,
    Sample,
    dense_matrix,
    estimate_operator_norm_sq,
    parse_libsvm,
    split,
)
from .engine import CONVEX, STRONGLY_CONVEX
from .errors import ConfigError, DivergenceError
from .losses import ABSOLUTE, HINGE, Regularizer, exact_loss
from .reference import solve_reference

ALGORITHMS = ("ansgd", "sgd", "averaged_sgd")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_path: str
    task: str
    algorithm: str
    mode: str
    lam: float
    omega: float
    iterations: int
    repeats: int = 10
    seed: int = 0
    eval_every: int = 100
    train_fraction: float = 0.6
    norm_sample_k: int = 100
    output_path: str = ""

    def __post_init__(self):
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise ConfigError(f"unknown task {self.task!r}")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.mode not in (CONVEX, STRONGLY_CONVEX):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.lam < 0.0:
            raise ConfigError(f"lambda must be nonnegative, got {self.lam}")
        if self.mode == STRONGLY_CONVEX and not self.lam > 0.0:
            raise ConfigError("strongly convex mode requires lambda > 0")
        if not self.omega > 0.0:
            raise ConfigError(f"omega must be positive, got {self.omega}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be positive, got {self.iterations}")
        if self.repeats < 1:
            raise ConfigError(f"repeats must be positive, got {self.repeats}")
        if self.eval_every < 1:
            raise ConfigError(f"eval_every must be positive, got {self.eval_every}")
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction {self.train_fraction} outside (0, 1)")
        if self.norm_sample_k < 1:
            raise ConfigError(f"norm_sample_k must be positive, got {self.norm_sample_k}")


@dataclass(frozen=True)
class MetricRow:
    run_id: int
    iteration: int
    test_objective: float
    test_accuracy: float | None
    wall_clock_s: float


class Evaluator:
    """Exact composite objective and accuracy on a fixed sample set."""

    def __init__(self, samples: Sequence[Sample], dim: int, task: str, lam: float):
        self.X, self.y = dense_matrix(samples, dim)
        self.task = task
        self.lam = lam
        self.family = HINGE if task == CLASSIFICATION else ABSOLUTE

    def objective(self, x: np.ndarray) -> float:
        sx = self.X @ x
        if self.family == HINGE:
            loss = np.maximum(1.0 - self.y * sx, 0.0)
        else:
            loss = np.abs(self.y - sx)
        return float(loss.mean()) + 0.5 * self.lam * float(x @ x)

    def accuracy(self, x: np.ndarray) -> float:
        # sign(0) counts as +1
        pred = np.where(self.X @ x >= 0.0, 1.0, -1.0)
        return float(np.mean(pred == self.y))


def _eval_iterations(iterations: int, eval_every: int) -> list[int]:
    pts = list(range(eval_every, iterations + 1, eval_every))
    if iterations % eval_every != 0:
        pts.append(iterations)
    return pts


def _null_clock() -> float:
    return 0.0


def run_experiment(
    cfg: ExperimentConfig, clock: Callable[[], float] = _null_clock
) -> list[MetricRow]:
    """Run repeats seeded trials and return rows ordered by (run_id, iteration)."""
    with open(cfg.dataset_path, "r", encoding="ascii") as fh:
        ds = parse_libsvm(fh, task=cfg.task)
    train, test = split(ds, cfg.train_fraction, cfg.seed)

    family = HINGE if cfg.task == CLASSIFICATION else ABSOLUTE
    reg = Regularizer(cfg.lam)
    mu = cfg.lam if cfg.mode == STRONGLY_CONVEX else 0.0
    op_norm_sq = estimate_operator_norm_sq(train, cfg.norm_sample_k, RngState(cfg.seed))

    evaluator = Evaluator(test.samples, ds.dim, cfg.task, cfg.lam)
    eval_at = _eval_iterations(cfg.iterations, cfg.eval_every)
    eval_set = set(eval_at)

    rows: list[MetricRow] = []
    for run_id in range(cfg.repeats):
        rng = RngState(cfg.seed + run_id)
        t0 = clock()
        try:
            if cfg.algorithm == "ansgd":
                sched = engine.Schedule(
                    mode=cfg.mode, grad_lipschitz=cfg.lam, mu=mu,
                    op_norm_sq=op_norm_sq, omega=cfg.omega,
                )
                state = engine.init_state(ds.dim, rng)
                for t in range(cfg.iterations):
                    engine.step(state, sched, family, reg, train)
                    if state.t in eval_set:
                        rows.append(_measure(run_id, state.t, state.x, evaluator, clock() - t0, cfg.task))
            else:
                variant = baselines.SGD if cfg.algorithm == "sgd" else baselines.AVERAGED_SGD
                state_b = baselines.init_baseline(ds.dim, rng, variant, cfg.mode, cfg.omega, mu)
                for t in range(cfg.iterations):
                    baselines.baseline_step(state_b, reg, family, train)
                    if state_b.t in eval_set:
                        point = baselines.evaluation_point(state_b)
                        rows.append(_measure(run_id, state_b.t, point, evaluator, clock() - t0, cfg.task))
        except DivergenceError as err:
            raise DivergenceError(err.iteration, str(err), run_id=run_id) from err
    return rows


def _measure(run_id, iteration, x, evaluator, elapsed, task):
    acc = evaluator.accuracy(x) if task == CLASSIFICATION else None
    return MetricRow(run_id, iteration, evaluator.objective(x), acc, elapsed)


CSV_HEADER = "run_id,iteration,test_objective,test_accuracy,wall_clock_s"


def write_csv(rows: Sequence[MetricRow], path: str) -> None:
    """17-significant-digit CSV with LF endings; accuracy blank for regression."""
    if not rows:
        raise ValueError("no rows to write")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            acc = "" if r.test_accuracy is None else f"{r.test_accuracy:.17g}"
            fh.write(
                f"{r.run_id},{r.iteration},{r.test_objective:.17g},{acc},{r.wall_clock_s:.17g}\n"
            )


def read_csv(path: str) -> list[MetricRow]:
    """Inverse of write_csv."""
    rows: list[MetricRow] = []
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        for line in fh:
            run_id, iteration, obj, acc, wall = line.rstrip("\n").split(",")
            rows.append(
                MetricRow(
                    int(run_id), int(iteration), float(obj),
                    None if acc == "" else float(acc), float(wall),
                )
            )
    return rows


@dataclass(frozen=True)
class IterationSummary:
    iteration: int
    objective_mean: float
    objective_std: float
    accuracy_mean: float | None
    accuracy_std: float | None


def aggregate(rows: Sequence[MetricRow]) -> list[IterationSummary]:
    """Mean and std across repeats, per evaluation iteration."""
    if not rows:
        raise ValueError("no rows to aggregate")
    by_iter: dict[int, list[MetricRow]] = {}
    for r in rows:
        by_iter.setdefault(r.iteration, []).append(r)
    out = []
    for iteration in sorted(by_iter):
        group = by_iter[iteration]
        objs = np.array([r.test_objective for r in group])
        accs = [r.test_accuracy for r in group]
        if any(a is None for a in accs):
            acc_mean = acc_std = None
        else:
            arr = np.array(accs, dtype=float)
            acc_mean, acc_std = float(arr.mean()), float(arr.std())
        out.append(
            IterationSummary(iteration, float(objs.mean()), float(objs.std()), acc_mean, acc_std)
        )
    return out


def empirical_regret(
    trajectory: Sequence[np.ndarray],
    stream: Sequence[Sample],
    family: str,
    lam: float,
    budget: int = 400_000,
    comparator_x0: np.ndarray | None = None,
) -> float:
    """Cumulative excess loss of the played iterates against the best fixed
    point in hindsight over the observed stream.

    trajectory holds x_0 .. x_{t-1}, stream the samples revealed after each
    play; the comparator is solved on the stream prefix via solve_reference.
    """
    if len(trajectory) != len(stream):
        raise ValueError(
            f"trajectory length {len(trajectory)} != stream length {len(stream)}"
        )
    if not trajectory:
        raise ValueError("empty trajectory")
    dim = len(trajectory[0])
    task = CLASSIFICATION if family == HINGE else REGRESSION
    prefix = Dataset(list(stream), dim, task)
    _, phi_star = solve_reference(prefix, family, lam, budget=budget, x0=comparator_x0)

    played = 0.0
    for x, sample in zip(trajectory, stream):
        played += exact_loss(family, x, sample) + 0.5 * lam * float(x @ x)
    return played - len(stream) * phi_star
