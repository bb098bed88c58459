#!/usr/bin/env python3
"""Measure preimage norm exponents against the predicted Q^e.

For each (method, n) it selects polynomials at a configurable prime size,
reduces a batch of random targets, and reports mean and spread of
norm_bits / log2(Q) next to the theoretical exponent.

Usage: python3 scripts/exponent_survey.py [--bits 60] [--targets 100]
"""

import argparse
import random
import statistics

from nfsboot.fields import make_monic
from nfsboot.polyselect import select_conjugation, select_gjl, select_jlsv1
from nfsboot.preimage import monic_reduce
from nfsboot.smooth import CONJ, GJL, JLSV1, next_prime, norm_exponent

SELECT = {JLSV1: select_jlsv1, GJL: select_gjl, CONJ: select_conjugation}


def survey(method: str, n: int, p: int, targets: int, seed: int) -> tuple:
    sel = SELECT[method](p, n, seed=seed)
    ctx = sel.field_ctx()
    r = random.Random(seed + 1)
    ratios = []
    while len(ratios) < targets:
        s = ctx.element([r.randrange(p) for _ in range(n)])
        if s.rep.degree != n - 1:
            continue
        s, _ = make_monic(s)
        report = monic_reduce(s, sel)
        ratios.append(report.best.norm_bits / sel.log2_q)
    return statistics.fmean(ratios), statistics.pstdev(ratios)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=60, help="bit length of p")
    ap.add_argument("--targets", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()

    p = next_prime(1 << args.bits)
    print(f"p = next_prime(2^{args.bits}), {args.targets} targets per cell\n")
    print(f"{'method':<8}{'n':>3}{'theory e':>10}{'measured':>10}{'stdev':>8}")
    for method in (JLSV1, GJL, CONJ):
        for n in range(2, args.max_n + 1):
            e = float(norm_exponent(method, n))
            mean, sd = survey(method, n, p, args.targets, args.seed)
            print(f"{method:<8}{n:>3}{e:>10.4f}{mean:>10.4f}{sd:>8.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
