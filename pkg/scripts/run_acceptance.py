"""Run every property suite and print one line per suite; optional JSON dump."""

import argparse
import json
import sys

from qrt.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--scale", type=float, default=1.0)
    ap.add_argument("--only", nargs="*", choices=sorted(SUITES))
    ap.add_argument("--json", help="write full results here")
    args = ap.parse_args()
    results = [run_suite(name, args.seed, args.scale) for name in (args.only or SUITES)]
    for r in results:
        print(r.line())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2, sort_keys=True, default=str)
    sys.exit(0 if all(r.passed for r in results) else 1)


if __name__ == "__main__":
    main()
