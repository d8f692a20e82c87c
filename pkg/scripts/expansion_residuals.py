"""Residual of the truncated expansion of Theta^{sigma/2} against the order N.

For even integer sigma the kernel is a trigonometric polynomial, so the
residual drops to roundoff at a finite order; other degrees decay
geometrically.

    python scripts/expansion_residuals.py --p 2 --q 2 --alpha 0.3
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from sopq.cli import parse_complex
from sopq.oracle import expansion_residual
from sopq.orthopoly import Signature
from sopq.sfcore import RepParam


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--alpha", type=float, default=0.3)
    ap.add_argument("--sigmas", default="2,4,4.5,3+1j,6.5")
    ap.add_argument("--orders", default="0,1,2,4,8,16")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    sig = Signature(args.p, args.q)
    samples = np.random.default_rng(args.seed).uniform(0, 2 * math.pi, size=(64, 2))
    orders = [int(n) for n in args.orders.split(",")]
    print(f"{'sigma':>10} " + " ".join(f"{'N=' + str(n):>10}" for n in orders))
    for text in args.sigmas.split(","):
        rep = RepParam(parse_complex(text))
        res = [expansion_residual(sig, rep, args.alpha, n, samples) for n in orders]
        print(f"{text:>10} " + " ".join(f"{r:10.2e}" for r in res))


if __name__ == "__main__":
    main()
