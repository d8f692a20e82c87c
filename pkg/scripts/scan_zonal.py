"""Scan zonal functions over a degree grid and compare series with quadrature.

    python scripts/scan_zonal.py --p 3 --q 2 --alpha 0.5
"""

from __future__ import annotations

import argparse

import numpy as np

from sopq.oracle import quad_zonal
from sopq.orthopoly import Signature
from sopq.sfcore import RepParam, zonal_horn, zonal_series


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--re", type=float, nargs=3, default=(-4.0, 2.0, 1.0), metavar=("START", "STOP", "STEP"))
    ap.add_argument("--im", type=float, nargs=3, default=(0.0, 3.0, 1.0), metavar=("START", "STOP", "STEP"))
    args = ap.parse_args()

    sig = Signature(args.p, args.q)
    re = np.arange(args.re[0], args.re[1] + args.re[2] / 2, args.re[2])
    im = np.arange(args.im[0], args.im[1] + args.im[2] / 2, args.im[2])
    print(f"{'sigma':>16} {'Z (series)':>40} {'terms':>6} {'rel horn':>10} {'rel quad':>10}")
    for x in re:
        for y in im:
            rep = RepParam(complex(x, y))
            s = zonal_series(sig, rep, args.alpha)
            h = zonal_horn(sig, rep, args.alpha).value
            qd = quad_zonal(sig, rep, args.alpha)
            scale = max(abs(s.value), 1e-300)
            print(f"{complex(x, y)!s:>16} {s.value!s:>40} {s.terms_used:>6} "
                  f"{abs(h - s.value) / scale:10.2e} {abs(qd - s.value) / scale:10.2e}")


if __name__ == "__main__":
    main()
