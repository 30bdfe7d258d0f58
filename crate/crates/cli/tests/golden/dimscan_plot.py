#!/usr/bin/env python3
"""Riesz transform norm estimates against dimension.

Usage: python3 plot.py [output.png]
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# p -> [(d, lower, upper or None), ...]
DATA = {
    "1.3333333333333333": [
        (1, 1.5049577958657514e0, 1.5196713713031853e0),
        (2, 1.5049577958657510e0, 1.5196713713031857e0),
        (3, 1.5049577958657792e0, 1.5196713713031860e0),
    ],
    "2": [
        (1, 1.4142135623730956e0, 1.4142135623730956e0),
        (2, 1.4142135623730951e0, 1.4142135623730954e0),
        (3, 1.4142135623730954e0, 1.4142135623730954e0),
    ],
    "inf": [
        (1, 1.6329931618554525e0, 1.6329931618554525e0),
        (2, 1.6329931618554527e0, 1.6329931618554530e0),
        (3, 1.6329931618554530e0, 1.6329931618554534e0),
    ],
}

def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "dimscan.png"
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, points in DATA.items():
        ds = [pt[0] for pt in points]
        (line,) = ax.plot(ds, [pt[1] for pt in points], marker="o", label=f"p = {label}")
        upper = [(pt[0], pt[2]) for pt in points if pt[2] is not None]
        if upper:
            ax.plot(
                [u[0] for u in upper],
                [u[1] for u in upper],
                linestyle="--",
                color=line.get_color(),
            )
    ax.set_xlabel("d")
    ax.set_ylabel("norm estimate")
    if DATA:
        ax.legend()
    fig.savefig(out, dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    main()
