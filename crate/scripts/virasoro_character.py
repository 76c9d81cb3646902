#!/usr/bin/env python3
"""Vacuum character coefficients of the Virasoro minimal model M(p, p').

Uses the Rocha-Caridi formula

    chi_{r,s}(q) = q^{-h} / phi(q) * sum_n (q^{pp'n^2 + n(p'r - ps)} - q^{(pn + s)(p'n + r)})

with phi(q) = prod_{m>=1} (1 - q^m). For r = s = 1 the conformal weight h is 0.
Defaults give the Ising model (c = 1/2), whose vacuum module is the
parafermion algebra K(sl2, 2).

    python3 scripts/virasoro_character.py --p 3 --pp 4 --max-weight 6
"""

import argparse
import json
from fractions import Fraction


def series_mul(a, b, top):
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b[: top + 1 - i]):
            out[i + j] += x * y
    return out


def inverse_euler(top):
    """Coefficients of 1/phi(q), i.e. partition numbers."""
    p = [1] + [0] * top
    for m in range(1, top + 1):
        for n in range(m, top + 1):
            p[n] += p[n - m]
    return p


def vacuum_character(p, pp, top, r=1, s=1):
    numer = [0] * (top + 1)
    bound = top + 2
    for n in range(-bound, bound + 1):
        e1 = p * pp * n * n + n * (pp * r - p * s)
        e2 = (p * n + s) * (pp * n + r)
        # for r = s = 1 the vacuum has h = 0, so no shift is needed
        if 0 <= e1 <= top:
            numer[e1] += 1
        if 0 <= e2 <= top:
            numer[e2] -= 1
    return series_mul(numer, inverse_euler(top), top)


def central_charge(p, pp):
    return 1 - Fraction(6 * (p - pp) ** 2, p * pp)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--pp", type=int, default=4)
    ap.add_argument("--max-weight", type=int, default=6)
    ap.add_argument("--json", action="store_true", help="print a JSON object")
    args = ap.parse_args()
    coeffs = vacuum_character(args.p, args.pp, args.max_weight)
    c = central_charge(args.p, args.pp)
    if args.json:
        print(json.dumps({"p": args.p, "pp": args.pp, "central_charge": str(c), "dims": coeffs}))
    else:
        print(f"c = {c}")
        print(" ".join(str(x) for x in coeffs))


if __name__ == "__main__":
    main()
