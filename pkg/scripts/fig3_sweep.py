"""Estimators C, C_c, C_r and the retro ratios against T (3+1 and 1+1).

    python3 scripts/fig3_sweep.py --out results/
"""
import argparse
from pathlib import Path

import numpy as np

from qcc.cli import ESTIMATE_COLUMNS, to_csv
from qcc.estimators import estimator_split
from qcc.geometry import standard_setup


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--L", type=float, default=1.0)
    ap.add_argument("--T-max", dest="T_max", type=float, default=10.0)
    ap.add_argument("--steps", type=int, default=201)
    ap.add_argument("--S", type=float, nargs="*", default=[0.0, 1.0, 5.0])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    Ts = np.linspace(0.0, args.T_max, args.steps)
    rows = [estimator_split(standard_setup("fig2", args.L, T)).row() for T in Ts]
    (args.out / "estimators_3p1.csv").write_text(to_csv(ESTIMATE_COLUMNS, rows))
    plateau = [r[3] for r in rows if r[0] >= 2 * args.L]

    for S in args.S:
        rows = [estimator_split(standard_setup("fig4", args.L, T, S)).row() for T in Ts]
        (args.out / f"estimators_1p1_S{S:g}.csv").write_text(to_csv(ESTIMATE_COLUMNS, rows))

    print(f"wrote {len(args.S) + 1} files to {args.out}; 3+1 C_retro for T >= 2L spans {min(plateau):.12g}..{max(plateau):.12g}")


if __name__ == "__main__":
    main()
