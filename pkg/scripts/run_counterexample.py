#!/usr/bin/env python3
"""Reproduce the exact-rational counterexample and its abstract twin."""

import sys

from isogeny_lab.verify import abstract_necessity_witness, reproduce_paper_counterexample


def main() -> int:
    paper = reproduce_paper_counterexample()
    print(paper.text_summary())
    print()
    witness = abstract_necessity_witness()
    print(witness.text_summary())
    return 0 if (paper.clean and witness.clean) else 2


if __name__ == "__main__":
    sys.exit(main())
