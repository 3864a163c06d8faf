"""Look for N of dimension (3;2,2,2,2;1) with dim O(N) = dim O(R) and R <=_hom N.

Two searches: random points with orbit dimension 24, and sums A + B of
bricks with no maps between them (exactly the sums with End of dimension 2).
Prints every candidate and how many battery modules it violates.
"""

import argparse
import itertools
import random

from qrt.catalog import catalog
from qrt.counterexample import SHIFTED_H, SearchStats, find_period_two_pair, hom_battery
from qrt.exactfield import GF
from qrt.geometry import orbit_dim
from qrt.rep import direct_sum, end_dim, hom_dim, iso_check, random_representation


def bricks(bq, dims, rng, tries, limit):
    out = []
    for _ in range(tries):
        m = random_representation(bq, dims, rng, density=rng.choice([0.5, 1.0]))
        if end_dim(m) == 1 and not any(iso_check(m, x) for x in out):
            out.append(m)
            if len(out) >= limit:
                break
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random", type=int, default=3000)
    args = ap.parse_args()
    e = catalog("CanonicalAlgebra(2,2,2,2)", GF(3), lambdas=[2])
    bq, vs = e.bq, e.bq.vertices
    d = dict(zip(vs, SHIFTED_H))
    rng = random.Random(args.seed)
    r1, r2 = find_period_two_pair(bq, SHIFTED_H, rng, 400, SearchStats())
    r = direct_sum([r1, r2])
    target = orbit_dim(r)
    battery = hom_battery(e, [r1, r2], True, 4)
    base = [hom_dim(x, r) for x in battery]

    def violations(n):
        return sum(hom_dim(x, n) < b for x, b in zip(battery, base))

    hits = 0
    for _ in range(args.random):
        m = random_representation(bq, d, rng, density=rng.choice([0.3, 0.5, 0.7, 1.0]))
        if orbit_dim(m) == target and not iso_check(m, r):
            v = violations(m)
            hits += v == 0
    print(f"random points: {hits} hom-order candidates")
    seen = set()
    for ev in itertools.product(*[range(x + 1) for x in SHIFTED_H]):
        fv = tuple(a - b for a, b in zip(SHIFTED_H, ev))
        if not any(ev) or not any(fv) or fv in seen:
            continue
        seen.add(ev)
        for a in bricks(bq, dict(zip(vs, ev)), rng, 40, 6):
            for b in bricks(bq, dict(zip(vs, fv)), rng, 40, 6):
                if hom_dim(a, b) or hom_dim(b, a):
                    continue
                n = direct_sum([a, b])
                if not iso_check(n, r):
                    print(f"{ev} + {fv}: {violations(n)} violations")


if __name__ == "__main__":
    main()
