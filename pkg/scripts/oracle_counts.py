"""Point counts, orbit censuses and the q^a(d) ratio for small dimension vectors."""

import argparse
import json

from qrt.catalog import catalog
from qrt.exactfield import GF
from qrt.forms import TitsForm
from qrt.oracle import count_points, orbit_census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--algebra", default="CanonicalAlgebra(2,2,2,2)")
    ap.add_argument("--q", type=int, nargs="*", default=[2, 3])
    ap.add_argument("--d", default=None, help="comma separated; default h")
    ap.add_argument("--census", action="store_true")
    args = ap.parse_args()
    for q in args.q:
        lam = [1 if q == 2 else 2] if "2,2,2,2" in args.algebra and ";" not in args.algebra else None
        e = catalog(args.algebra, GF(q), lambdas=lam, strict=q != 2)
        vs = e.bq.vertices
        d = dict(zip(vs, map(int, args.d.split(",")))) if args.d else dict(e.family.h)
        c = count_points(e.bq, d, q)
        a = TitsForm(e.bq).a_const(d)
        row = {"q": q, "d": d, "valid": c["valid"], "q^a": q ** a, "ratio": c["valid"] / q ** a}
        if args.census:
            cen = orbit_census(e.bq, d, q)
            row["orbits"] = len(cen)
            row["sizes_sum"] = sum(o["size"] for o in cen)
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
