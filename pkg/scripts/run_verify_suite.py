#!/usr/bin/env python3
"""Run the randomized verification battery and print one line per property.

Exit status is nonzero if any property fails. Equivalent to
`latmed repro verify` but handy when working from a source checkout.
"""

import argparse
import sys

from latmed.verify import RNG_ALGORITHM, VerifyConfig, verify_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--instances", type=int, default=200,
                    help="stable-matching instances; other batteries scale")
    ap.add_argument("--trials", type=int, default=20,
                    help="median subsets sampled per instance")
    args = ap.parse_args()

    scale = args.instances / 200
    cfg = VerifyConfig(
        seed=args.seed,
        smp_instances=args.instances,
        subsets_per_instance=args.trials,
        market_instances=max(1, round(100 * scale)),
        constrained_instances=max(1, round(50 * scale)),
        median_families=max(1, round(1000 * scale)),
        gate_trials=max(1, round(200 * scale)),
    )
    results = verify_suite(cfg)
    if not results:
        return 0
    print(f"rng: {RNG_ALGORITHM}")
    print(f"seed: {args.seed}")
    failed = False
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        gated = f" gated={r.gated}" if r.gated else ""
        print(f"{r.name}: {mark} checked={r.checked}{gated}")
        for f in r.failures:
            print(f"  {f}")
            failed = True
    print("FAIL" if failed else "PASS")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
