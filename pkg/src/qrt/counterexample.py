"""A pair R, N at d = (3;2,2,2,2;1) with R <=_hom N on a battery and N outside the closure of O(R).

R = R' + R'' is a tau-orbit of period two made of bricks whose dimension
vectors are not those of X and Y, while N = X + Y with dim X = (2;1,1,1,1;0)
and dim Y = (1;1,1,1,1;1).  Both X and Y move in one-parameter families, so
the modules X + Y sweep out a set of dimension dim O(N) + 2.  When that equals
dim O(R) and no member is isomorphic to R, the closure of O(R) cannot contain
the whole family.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .catalog import catalog
from .exactfield import GF, QQ, FieldSpec
from .forms import TitsForm, classify_singular, singular_witnesses
from .geometry import hom_order_compare, orbit_dim
from .rep import (Representation, direct_sum, end_dim, ext_all, hom_dim, injective, iso_check, projective,
                  random_representation, simple, tau)
from .tubes import TubeModuleId

SHIFTED_H = (3, 2, 2, 2, 2, 1)
DIM_X = (2, 1, 1, 1, 1, 0)
DIM_Y = (1, 1, 1, 1, 1, 1)


class SearchFailed(RuntimeError):
    pass


@dataclass
class CounterexampleConfig:
    field: str = "F3"
    lam: int = 2
    seed: int = 0
    tries: int = 400
    harvest: bool = True
    max_tube_length: int = 4

    def field_spec(self) -> FieldSpec:
        if self.field == "Q":
            return QQ
        if self.field.startswith("F"):
            return GF(int(self.field[1:]))
        raise ValueError(f"unknown field {self.field!r}")


@dataclass
class SearchStats:
    attempts: dict[str, int] = field(default_factory=dict)

    def bump(self, key: str, n: int = 1):
        self.attempts[key] = self.attempts.get(key, 0) + n


def period_two_candidates(form: TitsForm, d) -> list[tuple[int, ...]]:
    """e <= d with q(e) = 1 and Coxeter images swapping e and d - e."""
    out = []
    for e in itertools.product(*[range(x + 1) for x in d]):
        if form.quadratic(e) != 1:
            continue
        rest = [a - b for a, b in zip(d, e)]
        if list(form.apply_coxeter(e)) == rest and list(form.apply_coxeter(rest)) == list(e):
            out.append(e)
    return out


def _brick(bq, dims, rng, tries, stats, key) -> Representation | None:
    for _ in range(tries):
        stats.bump(key)
        m = random_representation(bq, dims, rng)
        if end_dim(m) == 1:
            return m
    return None


def find_period_two_pair(bq, d, rng: random.Random, tries: int, stats: SearchStats):
    """(R', tau R') with both bricks, tau^2 R' = R' and no maps between them."""
    form = TitsForm(bq)
    vs = bq.vertices
    for e in period_two_candidates(form, d):
        for _ in range(tries):
            stats.bump("pair")
            a = random_representation(bq, dict(zip(vs, e)), rng)
            if end_dim(a) != 1:
                continue
            b = tau(a)
            if b.total_dim == 0 or end_dim(b) != 1 or not iso_check(tau(b), a):
                continue
            if hom_dim(a, b) or hom_dim(b, a):
                continue
            return a, b
    return None


def hom_battery(entry, extra: list[Representation], harvest: bool, max_tube_length: int) -> list[Representation]:
    bq, fam = entry.bq, entry.family
    out = []
    for v in bq.vertices:
        out += [projective(bq, v), injective(bq, v), simple(bq, v)]
    for lam in fam.special_points:
        for i in range(fam.rank(lam)):
            for n in range(1, max_tube_length + 1):
                out.append(fam.tube_module(TubeModuleId(lam, i, n)))
    for lam in fam.homogeneous_points(3):
        out.append(fam.homogeneous(lam))
    if harvest and bq.field.kind == "Fp":
        from .oracle import harvest as oracle_harvest

        out += oracle_harvest(bq, {v: 1 for v in bq.vertices}, bq.field.p, max_ambient=6)
    return out + list(extra)


def homdeg_counterexample(cfg: CounterexampleConfig | None = None) -> dict:
    cfg = cfg or CounterexampleConfig()
    start = time.time()
    F = cfg.field_spec()
    entry = catalog("CanonicalAlgebra(2,2,2,2)", F, lambdas=[cfg.lam])
    bq = entry.bq
    vs = bq.vertices
    form = TitsForm(bq)
    d = dict(zip(vs, SHIFTED_H))
    rng = random.Random(cfg.seed)
    stats = SearchStats()

    cert = classify_singular(form, d)
    witnesses = [dict(zip(vs, w)) for w in singular_witnesses(form, d)]

    pair = find_period_two_pair(bq, SHIFTED_H, rng, cfg.tries, stats)
    if pair is None:
        raise SearchFailed(f"no tau-period-2 pair found; attempts {stats.attempts}")
    r1, r2 = pair
    x = _brick(bq, dict(zip(vs, DIM_X)), rng, cfg.tries, stats, "X")
    y = _brick(bq, dict(zip(vs, DIM_Y)), rng, cfg.tries, stats, "Y")
    if x is None or y is None:
        raise SearchFailed(f"no brick X or Y found; attempts {stats.attempts}")
    r = direct_sum([r1, r2])
    n = direct_sum([x, y])

    a = form.a_const(d)
    o_r, o_n = orbit_dim(r), orbit_dim(n)
    ext_x, ext_y = ext_all(x, x)[1], ext_all(y, y)[1]
    family_dim = o_n + ext_x + ext_y
    euler_pair = form.bilinear(DIM_Y, DIM_X)
    summand_dims = {tuple(r1.dims[v] for v in vs), tuple(r2.dims[v] for v in vs)}
    not_iso = not iso_check(r, n) and not summand_dims & {DIM_X, DIM_Y}

    battery = hom_battery(entry, [x, y, r1, r2], cfg.harvest, cfg.max_tube_length)
    cov = hom_order_compare(r, n, battery)
    contra = all(hom_dim(n, t) >= hom_dim(r, t) for t in battery)

    checks = {
        "orbit_R_is_a_minus_2": o_r == a - 2,
        "family_dim_is_a_minus_2": family_dim == a - 2,
        "family_dim_matches_euler": family_dim == a + euler_pair,
        "R_not_iso_N": not_iso,
        "hom_order_consistent": cov.consistent,
        "hom_order_has_strict": cov.strict > 0,
    }
    return {
        "field": str(F),
        "lambda": cfg.lam,
        "d": d,
        "a": a,
        "singular": cert.to_json(vs),
        "witnesses": witnesses,
        "R": [r1.to_json(), r2.to_json()],
        "N": [x.to_json(), y.to_json()],
        "dims": {"R'": r1.dims, "R''": r2.dims, "X": x.dims, "Y": y.dims},
        "orbit_dim_R": o_r,
        "orbit_dim_N": o_n,
        "orbit_dim_N_below_R": o_n < o_r,
        "ext1_XX": ext_x,
        "ext1_YY": ext_y,
        "family_dim": family_dim,
        "a_plus_euler": a + euler_pair,
        "hom_XY": hom_dim(x, y),
        "hom_YX": hom_dim(y, x),
        "hom_order": cov.to_json(),
        "hom_order_contravariant": contra,
        "battery_size": len(battery),
        "attempts": stats.attempts,
        "checks": checks,
        "ok": all(checks.values()),
        "seconds": round(time.time() - start, 2),
    }
