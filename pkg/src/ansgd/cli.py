"""Benchmark command line.

Example:
    ansgd --data data.txt --task classification --algo ansgd --mode strong \
          --lambda 0.01 --omega 1.0 --iters 10000 --seed 0 --out curves.csv

Exit codes: 0 success, 1 configuration or input error, 2 divergence.
"""

from __future__ import annotations

import argparse
import sys

from .errors import DivergenceError
from .harness import ExperimentConfig, run_experiment, write_csv

_TASKS = {"classification": "classification", "regression": "regression"}
_ALGOS = {"ansgd": "ansgd", "sgd": "sgd", "avg-sgd": "averaged_sgd"}
_MODES = {"convex": "convex", "strong": "strongly_convex"}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for divergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ansgd", description=__doc__.splitlines()[0])
    p.add_argument("--data", required=True, help="LIBSVM-format dataset path")
    p.add_argument("--task", required=True, choices=sorted(_TASKS))
    p.add_argument("--algo", required=True, choices=sorted(_ALGOS))
    p.add_argument("--mode", required=True, choices=sorted(_MODES))
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="l2 regularization weight")
    p.add_argument("--omega", type=float, required=True, help="stepsize tuning constant")
    p.add_argument("--iters", type=int, required=True, help="iterations per run")
    p.add_argument("--repeats", type=int, default=10, help="seeded repeat runs")
    p.add_argument("--seed", type=int, required=True, help="base seed; run r uses seed+r")
    p.add_argument("--eval-every", type=int, default=100, help="evaluation cadence")
    p.add_argument("--train-frac", type=float, default=0.6, help="train split fraction")
    p.add_argument("--norm-k", type=int, default=100,
                   help="draws for the squared-norm estimate")
    p.add_argument("--out", required=True, help="output CSV path")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig(
            dataset_path=args.data,
            task=_TASKS[args.task],
            algorithm=_ALGOS[args.algo],
            mode=_MODES[args.mode],
            lam=args.lam,
            omega=args.omega,
            iterations=args.iters,
            repeats=args.repeats,
            seed=args.seed,
            eval_every=args.eval_every,
            train_fraction=args.train_frac,
            norm_sample_k=args.norm_k,
            output_path=args.out,
        )
        rows = run_experiment(cfg)
        write_csv(rows, cfg.output_path)
    except DivergenceError as err:
        print(f"ansgd: divergence: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"ansgd: error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
