"""Property suites shared by the acceptance tests and ``qrt verify``.

Each suite returns a SuiteResult with a pass flag, a count of checks and a
JSON-ready detail dict.  Sizes default to the acceptance values; ``scale``
shrinks the randomised parts for quick runs.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from .catalog import catalog
from .counterexample import CounterexampleConfig, homdeg_counterexample
from .exactfield import GF
from .forms import TitsForm, classify_singular, singular_witnesses, verify_witness
from .geometry import (anchor_semi_invariants, closure_membership, closure_system, degenerations,
                       differential_matrix, extension_degeneration, maximality_check, orbit_dim,
                       semisimple, singular_closure_system, tangent_space)
from .linalg import rank
from .oracle import (automorphism_count, count_points, gl_order, orbit_census, search_indecomposable, _Layout)
from .rep import (act, direct_sum, dimvec, ext, ext_all, hom_dim, injective, injective_dimension, iso_check,
                  projective, projective_dimension, random_gl, random_representation, simple, tau, tau_minus)
from .semiinv import (evaluate, mult_check_extension, ratio_constant, semi_invariant, transformation_check,
                      vanishing_consistent)
from .tubes import TubeModuleId

# algebras over which the randomised suites run
CORE = ["Kronecker", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,2,2,2;2)"]
# every catalog algebra swept by the exhaustive form checks
SWEEP = ["Kronecker", "EuclideanA(2,1)", "EuclideanA(2,2)", "EuclideanA(3,2)", "CanonicalAlgebra(2,2,2)",
         "CanonicalAlgebra(2,2,3)", "CanonicalAlgebra(2,3,3)", "CanonicalAlgebra(2,3,4)", "CanonicalAlgebra(2,3,5)",
         "CanonicalAlgebra(3,3,3)", "CanonicalAlgebra(2,4,4)", "CanonicalAlgebra(2,3,6)",
         "CanonicalAlgebra(2,2,2,2;2)"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checks} checks, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checks": self.checks, "seconds": round(self.seconds, 2),
                "detail": self.detail}


class _Tally:
    def __init__(self):
        self.checks = 0
        self.failures: list = []

    def check(self, ok: bool, what):
        self.checks += 1
        if not ok and len(self.failures) < 10:
            self.failures.append(what)
        return ok

    @property
    def passed(self) -> bool:
        return self.checks > 0 and not self.failures


def _scaled(n: int, scale: float) -> int:
    return max(1, int(round(n * scale)))


def _random_dims(bq, rng: random.Random, top: int = 2) -> dict:
    return {v: rng.randint(0, top) for v in bq.vertices}


def _tube_modules(fam, max_len_factor: int = 2, homogeneous: int = 1) -> list[TubeModuleId]:
    out = []
    for lam in fam.special_points:
        r = fam.rank(lam)
        for i in range(r):
            for n in range(1, max_len_factor * r + 1):
                out.append(TubeModuleId(lam, i, n))
    for lam in fam.homogeneous_points(homogeneous):
        for n in range(1, max_len_factor + 1):
            out.append(TubeModuleId(lam, 0, n))
    return out


# 1


def euler_identity_suite(seed: int = 0, scale: float = 1.0, pairs: int = 200) -> SuiteResult:
    t = _Tally()
    rng = random.Random(seed)
    per = {}
    for name in CORE:
        e = catalog(name)
        form = TitsForm(e.bq)
        ok = 0
        for _ in range(_scaled(pairs, scale)):
            dens = rng.choice([1.0, 0.6, 0.3])
            m = random_representation(e.bq, _random_dims(e.bq, rng), rng, density=dens)
            n = random_representation(e.bq, _random_dims(e.bq, rng), rng, density=dens)
            h, e1, e2 = ext_all(m, n)
            ok += t.check(form.bilinear(m.dims, n.dims) == h - e1 + e2, (name, m.dims, n.dims))
        per[name] = ok
    return SuiteResult("euler-identity", t.passed, t.checks, {"agreeing": per, "failures": t.failures})


# 2


def ar_formula_suite(seed: int = 0, scale: float = 1.0, partners: int = 20) -> SuiteResult:
    t = _Tally()
    rng = random.Random(seed)
    used = {"pd<=1": 0, "id<=1": 0, "tau-inverse": 0}
    for name in CORE:
        e = catalog(name)
        bq, fam = e.bq, e.family
        others = [random_representation(bq, _random_dims(bq, rng), rng, density=rng.choice([1.0, 0.5]))
                  for _ in range(_scaled(partners, scale))]
        for tid in _tube_modules(fam):
            m = fam.tube_module(tid)
            tm, tmi = tau(m), tau_minus(m)
            t.check(iso_check(tau_minus(tm), m), ("tau^-tau", name, tid))
            used["tau-inverse"] += 1
            pd1 = projective_dimension(m) <= 1
            id1 = injective_dimension(m) <= 1
            for n in others:
                if pd1:
                    used["pd<=1"] += 1
                    t.check(ext(m, n)[0] == hom_dim(n, tm), ("Ext(M,N)=DHom(N,tauM)", name, tid, n.dims))
                if id1:
                    used["id<=1"] += 1
                    t.check(ext(n, m)[0] == hom_dim(tmi, n), ("Ext(N,M)=DHom(tau^-M,N)", name, tid, n.dims))
    return SuiteResult("ar-formula", t.passed, t.checks, {"applied": used, "failures": t.failures})


# 3


def tube_suite(seed: int = 0, scale: float = 1.0) -> SuiteResult:
    t = _Tally()
    detail = {}
    for name in ["Kronecker", "EuclideanA(2,1)", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,3,3)",
                 "CanonicalAlgebra(2,2,2,2;2)"]:
        e = catalog(name)
        fam, form = e.family, TitsForm(e.bq)
        h = fam.h
        hv = [h[v] for v in e.bq.vertices]
        t.check(form.quadratic(h) == 0, (name, "q(h)"))
        t.check(math.gcd(*hv) == 1, (name, "h indivisible"))
        for lam in fam.special_points:
            sims = fam.regular_simples(lam)
            r = len(sims)
            total = {v: sum(s.dims[v] for s in sims) for v in e.bq.vertices}
            t.check(total == h, (name, lam, "sum of regular simples"))
            for i, s in enumerate(sims):
                t.check(iso_check(tau(s), sims[(i - 1) % r]), (name, lam, i, "tau-cyclic"))
        tids = _tube_modules(fam)
        mods = {tid: fam.tube_module(tid) for tid in tids}
        n_pairs = 0
        for a in tids:
            for b in tids:
                n_pairs += 1
                t.check(fam.hom_formula(a, b) == hom_dim(mods[a], mods[b]), (name, a, b))
        detail[name] = {"tube_modules": len(tids), "pairs": n_pairs}
    return SuiteResult("tubes", t.passed, t.checks, {"algebras": detail, "failures": t.failures})


# 4


def tits_suite(seed: int = 0, scale: float = 1.0, bound: int = 3, partners: int = 100) -> SuiteResult:
    t = _Tally()
    rng = np.random.default_rng(seed)
    detail = {}
    for name in SWEEP:
        e = catalog(name)
        form = TitsForm(e.bq)
        E = np.array(form.matrix, dtype=np.int64)
        n = E.shape[0]
        grid = np.array(list(itertools.product(range(bound + 1), repeat=n)), dtype=np.int64)
        q = np.einsum("ki,ij,kj->k", grid, E, grid)
        t.check(bool((q >= 0).all()), (name, "q >= 0"))
        iso = grid[q == 0]
        es = rng.integers(-bound, bound + 1, size=(partners, n))
        S = E + E.T
        sym = iso @ S @ es.T
        t.check(bool((sym == 0).all()), (name, "isotropic vectors in the radical"))
        detail[name] = {"vectors": int(len(grid)), "isotropic": int(len(iso)), "min_q": int(q.min())}
    return SuiteResult("tits", t.passed, t.checks, {"algebras": detail, "failures": t.failures})


# 5


def singular_suite(seed: int = 0, scale: float = 1.0) -> SuiteResult:
    t = _Tally()
    e = catalog("CanonicalAlgebra(2,2,2,2;2)")
    vs = e.bq.vertices
    form = TitsForm(e.bq)
    d = (3, 2, 2, 2, 2, 1)
    cert = classify_singular(form, d)
    t.check(cert.singular, "example vector classified singular")
    wit = list(singular_witnesses(form, d))
    for w in [(1, 1, 1, 1, 1, 1), (2, 1, 1, 1, 1, 0)]:
        t.check(w in wit and verify_witness(form, d, w), ("witness", w))
    clean = {}
    for name in ["Kronecker", "CanonicalAlgebra(2,2,2)"]:
        f = TitsForm(catalog(name).bq)
        found = [dv for dv in itertools.product(range(5), repeat=len(f.vertices))
                 if any(dv) and classify_singular(f, dv).singular]
        t.check(not found, (name, found[:3]))
        clean[name] = len(found)
    return SuiteResult("singular", t.passed, t.checks,
                       {"certificate": cert.to_json(vs), "witnesses": [dict(zip(vs, w)) for w in wit],
                        "singular_found": clean, "failures": t.failures})


# 6


def _structured_point(fam, d, rng: random.Random, tids: list[TubeModuleId]):
    """A tube-module sum of dimension d (or None), moved by a random g."""
    bq = fam.bq
    target = dimvec(bq, d)
    for _ in range(20):
        rest = dict(target)
        parts = []
        pool = list(tids)
        rng.shuffle(pool)
        for tid in pool:
            m = fam.tube_module(tid)
            if all(m.dims[v] <= rest[v] for v in rest):
                parts.append(m)
                rest = {v: rest[v] - m.dims[v] for v in rest}
            if not any(rest.values()):
                break
        if not any(rest.values()):
            s = direct_sum(parts, bq)
            return act(s, random_gl(bq, s.dims, rng))
    return None


def semiinv_suite(seed: int = 0, scale: float = 1.0, pairs: int = 300, laws: int = 100) -> SuiteResult:
    t = _Tally()
    rng = random.Random(seed)
    stats = {"vanishing_pairs": 0, "zero_cases": 0, "laws": 0, "triples": 0}
    setups = []
    for name in CORE:
        e = catalog(name)
        fam = e.family
        tids = _tube_modules(fam, 1, 2)
        for k in (1, 2):
            d = {v: k * fam.h[v] for v in e.bq.vertices}
            setups.append((e, fam, d, tids))
    # vanishing
    per = _scaled(pairs, scale)
    for j in range(per):
        e, fam, d, tids = setups[j % len(setups)]
        v = fam.tube_module(rng.choice(tids))
        c = semi_invariant(v, d)
        if rng.random() < 0.5:
            m = _structured_point(fam, d, rng, _tube_modules(fam, 1, 3))
        else:
            m = None
        if m is None:
            m = random_representation(e.bq, d, rng)
        stats["vanishing_pairs"] += 1
        stats["zero_cases"] += evaluate(c, m) == 0
        t.check(vanishing_consistent(c, m), ("vanishing", e.name, v.dims))
    # transformation law
    for j in range(_scaled(laws, scale)):
        e, fam, d, tids = setups[j % len(setups)]
        c = semi_invariant(fam.tube_module(rng.choice(tids)), d)
        m = random_representation(e.bq, d, rng)
        g = random_gl(e.bq, d, rng)
        stats["laws"] += 1
        t.check(transformation_check(c, m, g), ("transformation", e.name))
    # multiplicativity along tube sequences 0 -> R^(k)_{i-n} -> R^(n+k)_i -> R^(n)_i -> 0
    for name in CORE[1:]:
        e = catalog(name)
        fam = e.family
        d2 = {v: 2 * fam.h[v] for v in e.bq.vertices}
        samples = [random_representation(e.bq, d2, rng) for _ in range(6)]
        for lam in fam.exceptional:
            r = fam.rank(lam)
            for i in range(r):
                for n, k in ((1, 1), (1, r - 1 if r > 1 else 1), (r - 1 if r > 1 else 1, 1)):
                    v = fam.tube_module(TubeModuleId(lam, i, n + k))
                    v2 = fam.tube_module(TubeModuleId(lam, i, n))
                    v1 = fam.tube_module(TubeModuleId(lam, i - n, k))
                    stats["triples"] += 1
                    t.check(mult_check_extension(v1, v, v2, d2, samples), ("multiplicative", name, lam, i, n, k))
    # c_lambda as a product over the regular simples versus c of R^(r)
    e = catalog("CanonicalAlgebra(2,2,2,2;2)")
    fam = e.family
    for k in (1, 2):
        d = {v: k * fam.h[v] for v in e.bq.vertices}
        pts = [random_representation(e.bq, d, rng) for _ in range(20)]
        for lam in fam.exceptional:
            r = fam.rank(lam)
            cs = [semi_invariant(fam.regular_simple(lam, i), d) for i in range(r)]
            big = semi_invariant(fam.tube_module(TubeModuleId(lam, 0, r)), d)
            pairs_ = []
            for m in pts:
                prod = m.field.one
                for c in cs:
                    prod = prod * evaluate(c, m)
                pairs_.append((prod, evaluate(big, m)))
            ok, _ = ratio_constant(pairs_)
            t.check(ok and any(a for a, _ in pairs_), ("c_lambda", lam, k))
    return SuiteResult("semi-invariants", t.passed, t.checks, {"counts": stats, "failures": t.failures})


# 7


def geometry_suite(seed: int = 0, scale: float = 1.0, points: int = 50) -> SuiteResult:
    t = _Tally()
    rng = random.Random(seed)
    algebras = ["Kronecker", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,3,3)", "CanonicalAlgebra(2,2,2,2;2)"]
    entries = [catalog(n) for n in algebras]
    # the tangent identity with Ext^1 taken from the projective resolution
    done = 0
    for j in range(_scaled(points, scale)):
        e = entries[j % len(entries)]
        fam = e.family
        k = rng.choice([1, 1, 2])
        d = {v: k * fam.h[v] for v in e.bq.vertices}
        if fam.exceptional and rng.random() < 0.5:
            lam = rng.choice(fam.exceptional)
            ex = fam.e(lam, rng.randrange(fam.rank(lam)))
            d = {v: d[v] + ex[v] for v in d}
        m = random_representation(e.bq, d, rng, density=rng.choice([1.0, 0.6]))
        if not fam.in_R(m.dims):
            continue
        done += 1
        tdim = tangent_space(m).dimension
        t.check(tdim == orbit_dim(m) + ext(m, m)[0], (e.name, m.dims))
    # maximal orbit witnesses
    witnesses = {}
    for e in entries:
        fam = e.family
        mu, nu = fam.homogeneous_points(2)
        rm, rn = fam.homogeneous(mu), fam.homogeneous(nu)
        cases = {"h": rm, "2h": direct_sum([rm, rn])}
        if fam.exceptional:
            lam = fam.exceptional[0]
            cases["h+e"] = direct_sum([rm, fam.regular_simple(lam, 0)])
        for key, m in cases.items():
            info = maximality_check(fam, m)
            t.check(info["maximal"] and info["orbit"] == info["a"] - info["p"], (e.name, key))
            witnesses[f"{e.name}:{key}"] = info
    return SuiteResult("geometry", t.passed, t.checks,
                       {"tangent_points": done, "maximal": witnesses, "failures": t.failures})


# 8


def closure_suite(seed: int = 0, scale: float = 1.0, translates_count: int = 50) -> SuiteResult:
    t = _Tally()
    e = catalog("Kronecker")
    bq, fam = e.bq, e.family
    r = {lam: fam.homogeneous(lam) for lam in ["0", "1", "2", "3"]}
    m = direct_sum([r["0"], r["1"]])
    sys = closure_system(fam, m)
    t.check(len(sys.equations) == 2 and sys.codim == 2, "two equations")
    t.check(closure_membership(sys, m), "vanishes at m")
    t.check(closure_membership(sys, semisimple(m)), "vanishes at S^d")
    sources = [projective(bq, v) for v in bq.vertices] + [simple(bq, v) for v in bq.vertices] + [r["0"], r["1"]]
    degs = degenerations(m, sources, depth=2)
    for n in degs:
        t.check(closure_membership(sys, n), ("degeneration", n.dims))
    rng = random.Random(seed)
    for k in range(translates_count):
        n = degs[k % len(degs)]
        g = random_gl(bq, n.dims, rng)
        t.check(closure_membership(sys, act(n, g)), ("translate", k))
    t.check(not closure_membership(sys, direct_sum([r["2"], r["3"]])), "R_2 + R_3 outside")
    # a second maximal point with a split degeneration built from an Ext class
    m2 = fam.tube_module(TubeModuleId("0", 0, 2))
    sys2 = closure_system(fam, m2)
    n2 = extension_degeneration(m2, r["0"], r["0"], 0)
    t.check(closure_membership(sys2, n2) and not closure_membership(sys2, m), "R_0^(2) system")
    # differentials of the anchor semi-invariants at a P + Q witness
    witness = direct_sum([projective(bq, "1"), injective(bq, "1")])
    cs = anchor_semi_invariants(fam, m.dims, fam.homogeneous_points(3))
    all_vanish = all(evaluate(c, witness) == 0 for c in cs)
    rk = rank(differential_matrix(cs, witness))
    t.check(all_vanish and rk == 3, ("differential rank", rk))
    return SuiteResult("closure", t.passed, t.checks,
                       {"system": sys.to_json(), "degenerations": len(degs), "differential_rank": rk,
                        "failures": t.failures})


# 9


def singular_closure_suite(seed: int = 0, scale: float = 1.0) -> SuiteResult:
    t = _Tally()
    e = catalog("CanonicalAlgebra(2,2,2,2;2)")
    bq, fam = e.bq, e.family
    lam = "x1"
    m = fam.tube_module(TubeModuleId(lam, 0, 2))
    sys = singular_closure_system(fam, m)
    t.check(len(sys.equations) == 1 and sys.anchor_i == 1, ("single equation c_{x1,1}", sys.to_json()))
    general = closure_system(fam, m, check_singular=False)
    t.check(general.to_json()["equations"] == sys.to_json()["equations"], "agrees with the general recipe")
    sources = [projective(bq, v) for v in bq.vertices] + fam.samples(1)
    degs = degenerations(m, sources, depth=2) + [semisimple(m)]
    for n in degs:
        t.check(closure_membership(sys, n), ("degeneration", n.dims))
    # orbits of dimension >= dim O(m) other than O(m) are not in its closure
    outside = [fam.tube_module(TubeModuleId(l2, i, 2)) for l2 in fam.exceptional for i in range(2)
               if (l2, i) != (lam, 0)]
    outside += [fam.homogeneous(x) for x in fam.homogeneous_points(3)]
    rng = random.Random(seed)
    outside += [random_representation(bq, m.dims, rng) for _ in range(_scaled(5, scale))]
    for n in outside:
        if orbit_dim(n) >= orbit_dim(m) and not iso_check(n, m):
            t.check(not closure_membership(sys, n), ("non-degeneration", n.dims))
    ts = tangent_space(m)
    diff = differential_matrix([sys.anchor], m, ts)
    t.check(rank(diff) == 1, "differential nonzero at m")
    # Hom(V, N) >= 2 forces a vanishing differential
    n2 = direct_sum([m, m])
    v = fam.regular_simple(lam, 1)
    c2 = semi_invariant(v, n2.dims)
    hv = hom_dim(v, n2)
    z = differential_matrix([c2], n2)
    t.check(hv >= 2 and z.is_zero(), ("vanishing differential", hv))
    return SuiteResult("singular-closure", t.passed, t.checks,
                       {"system": sys.to_json(), "degenerations": len(degs), "outside": len(outside),
                        "hom_V_N": hv, "failures": t.failures})


# 10


def counterexample_suite(seed: int = 0, scale: float = 1.0) -> SuiteResult:
    """Driver checks plus the literal requirement orbit_dim(N) = a - 2.

    The literal clause is reported separately: for N = X + Y it cannot hold,
    since hom(X, Y) >= 2 forces dim End(N) >= 4.
    """
    t = _Tally()
    runs = {}
    for fld, lam in (("F3", 2), ("Q", 2)):
        rep = homdeg_counterexample(CounterexampleConfig(field=fld, lam=lam, seed=seed))
        for k, ok in rep["checks"].items():
            t.check(ok, (fld, k))
        literal = rep["orbit_dim_N"] == rep["a"] - 2
        t.check(literal, (fld, "orbit_N_is_a_minus_2", rep["orbit_dim_N"], rep["a"] - 2))
        runs[fld] = {k: rep[k] for k in ("orbit_dim_R", "orbit_dim_N", "family_dim", "a", "hom_order",
                                         "battery_size", "attempts", "seconds", "checks")}
        runs[fld]["driver_ok"] = rep["ok"]
        runs[fld]["orbit_N_is_a_minus_2"] = literal
    return SuiteResult("counterexample", t.passed, t.checks, {"runs": runs, "failures": t.failures})


# 11


def oracle_suite(seed: int = 0, scale: float = 1.0) -> SuiteResult:
    t = _Tally()
    detail = {}
    kb = catalog("Kronecker", GF(2)).bq
    for d in ({"1": 1, "2": 1}, {"1": 2, "2": 1}, {"1": 1, "2": 2}):
        for q in (2, 3):
            kq = catalog("Kronecker", GF(q)).bq
            c = count_points(kq, d, q)
            cen = orbit_census(kq, d, q)
            t.check(sum(o["size"] for o in cen) == c["valid"], ("Kronecker census", d, q))
    t.check(len(search_indecomposable(kb, {"1": 1, "2": 1}, 2)) == 3, "Kronecker (1,1) over F2")
    t.check(len(search_indecomposable(kb, {"1": 2, "2": 1}, 2)) == 1, "Kronecker (2,1) over F2")
    for q, lam in ((2, 1), (3, 2)):
        e = catalog("CanonicalAlgebra(2,2,2,2)", GF(q), lambdas=[lam], strict=q != 2)
        bq = e.bq
        h = {v: 1 for v in bq.vertices}
        form = TitsForm(bq)
        c = count_points(bq, h, q)
        cen = orbit_census(bq, h, q)
        t.check(sum(o["size"] for o in cen) == c["valid"], ("census", q))
        lay = _Layout(bq, h, q)
        g = gl_order(h, q)
        t.check(all(o["size"] * automorphism_count(lay.to_rep(o["matrices"])) == g for o in cen),
                ("orbit-stabilizer", q))
        a = form.a_const(h)
        ratio = c["valid"] / q ** a
        t.check(0.25 <= ratio <= 4, ("point count window", q, ratio))
        detail[f"q={q}"] = {"valid": c["valid"], "q^a": q ** a, "ratio": ratio, "orbits": len(cen),
                            "window": "heuristic factor-4"}
    return SuiteResult("oracle", t.passed, t.checks, {"counts": detail, "failures": t.failures})


SUITES = {
    "euler-identity": euler_identity_suite,
    "ar-formula": ar_formula_suite,
    "tubes": tube_suite,
    "tits": tits_suite,
    "singular": singular_suite,
    "semi-invariants": semiinv_suite,
    "geometry": geometry_suite,
    "closure": closure_suite,
    "singular-closure": singular_closure_suite,
    "counterexample": counterexample_suite,
    "oracle": oracle_suite,
}


def run_suite(name: str, seed: int = 0, scale: float = 1.0) -> SuiteResult:
    start = time.time()
    res = SUITES[name](seed=seed, scale=scale)
    res.seconds = time.time() - start
    return res
