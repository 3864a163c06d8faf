"""Run the hom-order counterexample driver over several fields and seeds."""

import argparse
import json

from qrt.counterexample import CounterexampleConfig, homdeg_counterexample

KEYS = ("field", "lambda", "a", "orbit_dim_R", "orbit_dim_N", "family_dim", "ext1_XX", "ext1_YY", "hom_XY",
        "hom_YX", "battery_size", "hom_order", "hom_order_contravariant", "checks", "ok", "seconds")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", default="F3,Q")
    ap.add_argument("--lambdas", default="2")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--out")
    args = ap.parse_args()
    rows = []
    for fld in args.fields.split(","):
        for lam in args.lambdas.split(","):
            for seed in range(args.seeds):
                rep = homdeg_counterexample(CounterexampleConfig(field=fld, lam=int(lam), seed=seed))
                row = {k: rep[k] for k in KEYS}
                row["seed"] = seed
                rows.append(row)
                print(f"{fld} lambda={lam} seed={seed}: orbit R {rep['orbit_dim_R']}, orbit N {rep['orbit_dim_N']}, "
                      f"family {rep['family_dim']}, a {rep['a']}, hom order {rep['hom_order']['verdict']} "
                      f"({rep['hom_order']['strict']} strict of {rep['battery_size']}), ok={rep['ok']}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True, default=str)


if __name__ == "__main__":
    main()
