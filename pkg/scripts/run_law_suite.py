#!/usr/bin/env python3
"""Run the full law suite over every builtin base and print one line per check.

The 2-bounded instance is expected to fail (that is its role as the broken
fixture); any other failure makes the script exit nonzero.
"""

import argparse
import sys

from pcmcat.category import BUILTIN_BASES, resolve_base
from pcmcat.laws import run_category_suite, run_pcm_suite
from pcmcat.pcm import Pcm


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--family-size", type=int, default=4)
    parser.add_argument("--trials", type=int, default=200)
    args = parser.parse_args()

    unexpected = 0
    for descriptor in BUILTIN_BASES:
        print(f"== {descriptor} ==")
        target = resolve_base(descriptor)
        if isinstance(target, Pcm):
            reports = run_pcm_suite(target, family_size=args.family_size,
                                    trials=args.trials, seed=args.seed)
        else:
            reports = run_category_suite(target, family_size=args.family_size,
                                         trials=args.trials, seed=args.seed)
        for report in reports:
            print(report.line())
            if not report.passed and descriptor != "kbounded:2":
                unexpected += 1
    print(f"== done: {unexpected} unexpected failing checks ==")
    return 1 if unexpected else 0


if __name__ == "__main__":
    sys.exit(main())
