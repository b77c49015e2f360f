"""H_diff against the switching time scale for a charge-neutral source.

Expect hdiff(2T)/hdiff(T) -> 1/4; a charged source is shown for contrast.
"""
import argparse
from pathlib import Path

from qcc.cli import HDIFF_COLUMNS, to_csv
from qcc.fields import hdiff, neutral_source
from qcc.smearing import GaussianSwitching, Pointlike, Smearing


def scan(src, Ts):
    rows, prev = [], None
    for T in Ts:
        h = hdiff(T, src).value
        rows.append((T, h, T * T * h, h / prev if prev else float("nan")))
        prev = h
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--T", type=float, nargs="*", default=[5, 10, 20, 40, 80, 160, 320])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    neutral = scan(neutral_source(), args.T)
    charged = scan(Smearing(Pointlike((0.0,)), GaussianSwitching(0.0, 1.0)), args.T)
    (args.out / "hdiff_neutral.csv").write_text(to_csv(HDIFF_COLUMNS, neutral))
    (args.out / "hdiff_charged.csv").write_text(to_csv(HDIFF_COLUMNS, charged))
    for (T, _, _, rn), (_, _, _, rc) in zip(neutral[1:], charged[1:]):
        print(f"T={T:>6g}  neutral ratio {rn:.4f}  charged ratio {rc:.4f}")


if __name__ == "__main__":
    main()
