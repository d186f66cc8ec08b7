#!/usr/bin/env python3
"""Random property suites on the Galois-module layer: the lattice
dimension law, the constructive theorem on semisimple configurations, and
the single-generator rank law."""

import argparse
import sys

from isogeny_lab.verify import (
    cyclic_law_trial,
    lemma42_trial,
    run_trials,
    theorem2_trial,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    bad = 0
    for name, fn in [
        ("lattice-dimension-law", lemma42_trial),
        ("semisimple-construction", theorem2_trial),
        ("cyclic-rank-law", cyclic_law_trial),
    ]:
        failures = run_trials(fn, args.trials, seed=args.seed)
        print(f"{name}: {args.trials - len(failures)}/{args.trials} ok")
        for w in failures[:5]:
            print("  failure:", w)
        bad += len(failures)
    return 0 if bad == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
