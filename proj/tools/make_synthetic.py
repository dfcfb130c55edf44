"""Regenerate data/synthetic.csv: 200 rows, 3 numeric features, linear target plus noise."""

import argparse

import numpy as np


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/synthetic.csv")
    parser.add_argument("--seed", type=int, default=20240101)
    parser.add_argument("--rows", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    x = rng.uniform(0.0, 10.0, size=(args.rows, 3))
    y = 3.0 * x[:, 0] - 2.0 * x[:, 1] + 0.5 * x[:, 2] + 5.0 + rng.normal(0.0, 1.0, size=args.rows)

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("x1,x2,x3,y\n")
        for row, target in zip(x, y):
            fh.write(",".join(f"{v:.6f}" for v in row) + f",{target:.6f}\n")


if __name__ == "__main__":
    main()
