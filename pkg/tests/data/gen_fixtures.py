"""Regenerate the committed dataset fixtures (deterministic, seed-pinned).

Usage: python gen_fixtures.py [outdir]

- libsvm_100.txt: 100 canonical sparse lines for exact round-trip checks.
- svmguide_like.txt: 3000-sample, 4-feature binary classification set with
  {0,1} labels and heterogeneous feature scales, shaped like the public
  svmguide1 data for the algorithm-comparison benchmark.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np


def write_roundtrip_fixture(path: Path) -> None:
    rng = np.random.default_rng(20240817)
    lines = []
    for _ in range(100):
        label = "+1" if rng.random() < 0.5 else "-1"
        nnz = int(rng.integers(1, 9))
        idxs = np.sort(rng.choice(np.arange(1, 26), size=nnz, replace=False))
        toks = [label]
        for idx in idxs:
            val = 0.0
            while val == 0.0:
                val = round(float(rng.normal()) * 10 ** int(rng.integers(-2, 3)), 6)
            toks.append(f"{idx}:{val!r}")
        lines.append(" ".join(toks))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


def write_svmguide_like(path: Path) -> None:
    rng = np.random.default_rng(31415926)
    n = 3000
    labels = (rng.random(n) < 0.52).astype(int)  # 1 vs 0, mild imbalance
    pos_mean = np.array([2.4, 0.8, 6.0, 3.0])
    pos_std = np.array([0.8, 0.3, 2.0, 1.0])
    neg_mean = np.array([1.2, 1.6, 10.0, 5.5])
    neg_std = np.array([0.6, 0.5, 2.5, 1.5])
    lines = []
    for lab in labels:
        mean, std = (pos_mean, pos_std) if lab == 1 else (neg_mean, neg_std)
        feats = np.abs(rng.normal(mean, std))
        toks = [str(lab)] + [f"{j + 1}:{feats[j]:.6g}" for j in range(4)]
        lines.append(" ".join(toks))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")


if __name__ == "__main__":
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    write_roundtrip_fixture(outdir / "libsvm_100.txt")
    write_svmguide_like(outdir / "svmguide_like.txt")
    print("fixtures written to", outdir)
