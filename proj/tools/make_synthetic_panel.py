"""Writes data/synthetic_panel.csv: a 7-feature two-class expression-like panel.

Features are log-normal and heavy-tailed with class-dependent location and
correlation, so the marginals are far from Gaussian. Labels: 1 = case,
0 = control.
"""
import csv
import pathlib

import numpy as np

N_PER_CLASS = 90
GENES = [f"gene{i}" for i in range(1, 8)]


def draw(rng, n, shift, rho):
    d = len(GENES)
    idx = np.arange(d)
    corr = rho ** np.abs(idx[:, None] - idx[None, :])
    base = rng.multivariate_normal(np.zeros(d), corr, size=n)
    # heavy tails from a shared chi-square(3) mixing variable per row
    w = np.sqrt(rng.chisquare(3, size=(n, 1)) / 3.0)
    t = base / w
    loc = np.array([shift, -shift, 0.5 * shift, 0.0, shift, 0.0, -0.5 * shift])
    return np.exp(0.6 * (t + loc)) * 100.0


def main():
    rng = np.random.default_rng(20240611)
    cases = draw(rng, N_PER_CLASS, 0.9, 0.5)
    controls = draw(rng, N_PER_CLASS, 0.0, 0.2)
    rows = [(*r, 1) for r in cases] + [(*r, 0) for r in controls]
    order = rng.permutation(len(rows))
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic_panel.csv"
    with out.open("w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([*GENES, "label"])
        for i in order:
            *values, label = rows[i]
            writer.writerow([f"{v:.6g}" for v in values] + [label])


if __name__ == "__main__":
    main()
