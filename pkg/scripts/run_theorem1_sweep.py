#!/usr/bin/env python3
"""Full theorem-1 + lemma sweep over prime fields.

Defaults match the acceptance configuration (ell in {3, 5, 7}, primes
5 <= q < 200); pass --threads to parallelize over (q, ell) tasks.
"""

import argparse
import sys

from isogeny_lab.verify import run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell-list", default="3,5,7")
    ap.add_argument("--q-min", type=int, default=5)
    ap.add_argument("--q-max", type=int, default=200)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--output", default=None)
    args = ap.parse_args()
    ells = [int(x) for x in args.ell_list.split(",")]
    rep = run_sweep(ells, q_max=args.q_max, q_min=args.q_min, threads=args.threads)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rep.to_json(indent=2) + "\n")
    print(rep.text_summary())
    return 0 if rep.clean else 2


if __name__ == "__main__":
    sys.exit(main())
