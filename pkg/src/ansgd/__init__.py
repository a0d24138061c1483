"""Stochastic optimization of nonsmooth regularized losses.

The engine runs an accelerated stochastic gradient method on smooth
surrogates of the hinge or absolute loss whose smoothness parameter decays
with the iteration count; plain and averaged subgradient descent baselines
share the data oracle, and the harness turns repeated seeded runs into
test-set convergence curves.
"""

from .baselines import AVERAGED_SGD, SGD, BaselineState, baseline_step, evaluation_point, init_baseline, stepsize
from .data import (
    CLASSIFICATION,
    REGRESSION,
    Dataset,
    RngState,
    Sample,
    SparseVector,
    draw,
    estimate_operator_norm_sq,
    parse_libsvm,
    serialize_libsvm,
    split,
)
from .engine import (
    CONVEX,
    STRONGLY_CONVEX,
    OptimizerState,
    Schedule,
    StepCoefficients,
    coefficients,
    init_state,
    smallest_fast_rate_index,
    step,
    theta_default_strongly_convex,
)
from .errors import ConfigError, DivergenceError, OracleError, ParseError
from .harness import (
    ExperimentConfig,
    IterationSummary,
    MetricRow,
    aggregate,
    empirical_regret,
    read_csv,
    run_experiment,
    write_csv,
)
from .losses import (
    ABSOLUTE,
    HINGE,
    MAX_DUAL_PENALTY,
    Regularizer,
    SmoothedLoss,
    exact_loss,
    exact_subgradient,
    residual,
)
from .reference import solve_reference
