#!/usr/bin/env python3
"""Verify the six reference family instances and print their drop reports.

Each instance is constructed with random generators from the given seed and
its Hilbert values on the critical range are compared against the predicted
non-unimodal pattern.
"""

import argparse
import json
import time

from levelalg import families

GOLDEN = [
    ("F1", dict(a=21, i=42, s=4)),
    ("F2", dict(a=21, i=36, s=14)),
    ("G1", dict(a=3, b=4, i=13, s=2)),
    ("G2", dict(a=4, b=6, i=14, s=2)),
    ("G3", dict(a=4, b=4, i=8, s=7)),
    ("H1", dict(a=2, b=2, c=3, i=12, s=2)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--retries", type=int, default=3)
    args = ap.parse_args()
    ok = True
    for fam, kw in GOLDEN:
        params = families.require_valid(fam, **kw)
        t0 = time.time()
        rep = families.verify_drop(params, args.seed, args.retries)
        ok &= rep.verdict != "mismatch"
        print("%s %-28s %-11s h(%d..%d) = %s  [%.1fs]"
              % (fam, json.dumps(kw, sort_keys=True), rep.verdict,
                 params.i, params.i_f, ", ".join(map(str, rep.measured)),
                 time.time() - t0))
    raise SystemExit(0 if ok else 2)


if __name__ == "__main__":
    main()
