"""Sparse datasets in LIBSVM text format and the stochastic sample oracle.

Feature vectors are stored sparsely as (1-based index, value) pairs with
strictly increasing indices and no explicit zeros.  Datasets are immutable
after construction and safe to share across concurrent runs; every run owns
its private RngState.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Union

import numpy as np

from .errors import ParseError

CLASSIFICATION = "classification"
REGRESSION = "regression"


class RngState:
    """Deterministic random stream; equal seeds yield equal draw sequences."""

    def __init__(self, seed: int):
        self.seed = seed
        self._gen = np.random.default_rng(seed)

    def next_index(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self._gen.integers(0, n))

    def index_block(self, n: int, count: int) -> np.ndarray:
        """`count` uniform integers in [0, n); bitwise-identical to repeated
        next_index calls on the same state."""
        return self._gen.integers(0, n, size=count)


@dataclass(frozen=True)
class SparseVector:
    """Sparse feature vector with 1-based, strictly increasing indices."""

    indices: np.ndarray  # int64, 1-based
    values: np.ndarray   # float64, no zeros
    dim: int

    # 0-based positions for dense indexing, derived once
    positions: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "positions", self.indices - 1)

    def dot(self, x: np.ndarray) -> float:
        return float(x[self.positions] @ self.values)

    def norm_sq(self) -> float:
        return float(self.values @ self.values)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim)
        out[self.positions] = self.values
        return out


@dataclass(frozen=True)
class Sample:
    features: SparseVector
    label: float


@dataclass(frozen=True)
class Dataset:
    samples: list[Sample]
    dim: int
    task: str

    def __post_init__(self):
        if not self.samples:
            raise ValueError("dataset is empty")
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise ValueError(f"unknown task {self.task!r}")

    def __len__(self) -> int:
        return len(self.samples)


def _canonical_label(raw: float, line: int) -> float:
    """Map classification labels onto {-1, +1}: 0 becomes -1."""
    if raw in (-1.0, 1.0):
        return raw
    if raw == 0.0:
        return -1.0
    raise ParseError(line, f"classification label {raw:g} not in {{-1, 0, +1}}")


def parse_libsvm(source: Union[str, bytes, IO], task: str = CLASSIFICATION) -> Dataset:
    """Parse LIBSVM text: one "label idx:val idx:val ..." record per line.

    Indices are 1-based and must be strictly increasing within a line.
    Explicit zero values are dropped (canonical sparse form).  Blank lines
    are skipped.  dim is the largest index seen anywhere.
    """
    if isinstance(source, bytes):
        text = source.decode("ascii")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("ascii")

    records: list[tuple[float, list[int], list[float]]] = []
    dim = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        try:
            label = float(parts[0])
        except ValueError:
            raise ParseError(line_no, f"invalid label {parts[0]!r}") from None
        if task == CLASSIFICATION:
            label = _canonical_label(label, line_no)

        idxs: list[int] = []
        vals: list[float] = []
        prev = 0
        for tok in parts[1:]:
            idx_s, sep, val_s = tok.partition(":")
            if not sep:
                raise ParseError(line_no, f"invalid token {tok!r}")
            try:
                idx = int(idx_s)
                val = float(val_s)
            except ValueError:
                raise ParseError(line_no, f"invalid token {tok!r}") from None
            if idx < 1:
                raise ParseError(line_no, f"index {idx} < 1")
            if idx <= prev:
                raise ParseError(line_no, f"index {idx} not increasing")
            prev = idx
            if val != 0.0:
                idxs.append(idx)
                vals.append(val)
        dim = max(dim, prev)
        records.append((label, idxs, vals))

    if not records:
        raise ValueError("empty dataset")

    samples = [
        Sample(SparseVector(np.array(idxs, dtype=np.int64), np.array(vals), dim), label)
        for label, idxs, vals in records
    ]
    return Dataset(samples, dim, task)


def serialize_libsvm(ds: Dataset) -> str:
    """Inverse of parse_libsvm on canonical datasets (exact round-trip)."""
    lines = []
    for s in ds.samples:
        toks = [repr(s.label) if s.label not in (-1.0, 1.0) else ("%+d" % int(s.label))]
        for idx, val in zip(s.features.indices, s.features.values):
            toks.append(f"{idx}:{val!r}")
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def split(ds: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic shuffled partition into ceil(n*frac) train / rest test."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction {train_fraction} outside (0, 1)")
    n = len(ds)
    n_train = math.ceil(n * train_fraction)
    if n_train >= n:
        raise ValueError(f"train_fraction {train_fraction} leaves an empty test split (n={n})")
    order = np.random.default_rng(seed).permutation(n)
    train = Dataset([ds.samples[i] for i in order[:n_train]], ds.dim, ds.task)
    test = Dataset([ds.samples[i] for i in order[n_train:]], ds.dim, ds.task)
    return train, test


def draw(ds: Dataset, rng: RngState) -> Sample:
    """One sample, uniform with replacement."""
    return ds.samples[rng.next_index(len(ds))]


def estimate_operator_norm_sq(ds: Dataset, k: int | None = None, rng: RngState | None = None) -> float:
    """Sample average of squared feature norms over k uniform draws.

    k defaults to min(100, n); estimates the mean squared norm of the loss
    operator that the stepsize schedules consume.
    """
    n = len(ds)
    if k is None:
        k = min(100, n)
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if rng is None:
        rng = RngState(0)
    total = 0.0
    for _ in range(k):
        total += draw(ds, rng).features.norm_sq()
    return total / k


def dense_matrix(samples: Iterable[Sample], dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Materialize samples as a dense (n, dim) matrix plus label vector."""
    rows = list(samples)
    X = np.zeros((len(rows), dim))
    y = np.empty(len(rows))
    for i, s in enumerate(rows):
        X[i, s.features.positions] = s.features.values
        y[i] = s.label
    return X, y
