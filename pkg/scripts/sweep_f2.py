#!/usr/bin/env python3
"""Sweep the two-generator odd-a family: minimum sufficient s at the
smallest admissible socle parameter, for odd a up to a limit.

Prints one line per a with the threshold i and the minimum s; the minimum
type of the resulting algebra is s + 2.
"""

import argparse

from levelalg.families import f2_threshold, min_sufficient_s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-a", type=int, default=220)
    ap.add_argument("--only-s", type=int, default=None,
                    help="print only values of a whose minimum s equals this")
    args = ap.parse_args()
    for a in range(7, args.max_a + 1, 2):
        i = f2_threshold(a)
        s = min_sufficient_s("F2", a, i=i)
        if args.only_s is None or s == args.only_s:
            print("a=%-4d i=%-5d min_s=%-3d min_type=%d" % (a, i, s, s + 2))


if __name__ == "__main__":
    main()
