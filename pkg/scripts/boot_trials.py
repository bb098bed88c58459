#!/usr/bin/env python3
"""Boot-search statistics: observed smoothness-test counts vs Dickman rho.

Runs the booting search over several seeds on a fresh conjugation field
and compares the mean number of smoothness tests per certificate with the
1/rho(u) prediction at the chosen bound.

Usage: python3 scripts/boot_trials.py [--bits 80] [--B-bits 30] [--seeds 5]
"""

import argparse
import statistics
import time

from nfsboot.boot import BootConfig, find_boot, predict, verify_boot
from nfsboot.fields import find_ell
from nfsboot.polyselect import select_conjugation
from nfsboot.smooth import next_prime


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=80, help="bit length of p")
    ap.add_argument("--B-bits", type=int, default=30, dest="B_bits")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--n", type=int, default=2)
    args = ap.parse_args()

    p = next_prime(1 << args.bits)
    sel = select_conjugation(p, args.n, seed=1)
    ell = find_ell(p, args.n)
    ctx = sel.field_ctx(ell)
    s = ctx.element(list(range(12345, 12345 + args.n)))
    B = 1 << args.B_bits

    pred = predict(sel, B=B)
    print(
        f"p ~ 2^{args.bits}, n={args.n}, B = 2^{args.B_bits}:"
        f" predicted norm {pred.norm_bits:.0f} bits,"
        f" expected {pred.expected_trials:.1f} tests per certificate\n"
    )

    tested = []
    for seed in range(args.seeds):
        t0 = time.monotonic()
        cert = find_boot(
            ctx, sel, s, B,
            config=BootConfig(seed=seed, radius=0, effort=1 << 18),
        )
        dt = time.monotonic() - t0
        ok = verify_boot(cert).ok
        tested.append(cert.tested)
        print(
            f"seed {seed}: t={cert.t} after {cert.tested} tests"
            f" ({cert.trials} trials, {dt:.2f}s, verify={'ok' if ok else 'FAIL'})"
        )

    mean = statistics.fmean(tested)
    print(
        f"\nmean {mean:.1f} tests vs {pred.expected_trials:.1f} predicted"
        f" (ratio {mean / pred.expected_trials:.2f})"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
