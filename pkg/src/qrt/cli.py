"""``qrt`` command line.  Machine output is JSON on stdout.

Exit codes: 0 success, 1 a checked property failed, 2 usage or input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import CatalogError, catalog
from .exactfield import GF, QQ, FieldError, FieldSpec, parse_scalar, render_scalar
from .forms import SearchTooLarge, TitsForm, classify_singular, singular_witnesses
from .linalg import matrix_from_json
from .quiver import BoundQuiver, QuiverError
from .rep import RepError, Representation, dimvec, ext, hom_dim, tau, tau_minus

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, pretty_lines: list[str] | None = None, pretty: bool = False) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, default=str) + "\n")
    if pretty and pretty_lines:
        for line in pretty_lines:
            sys.stderr.write(line + "\n")


def _load_json(text: str):
    """Inline JSON, or a path to a JSON file."""
    s = text.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    if not os.path.exists(text):
        raise UsageError(f"no such file: {text}")
    with open(text) as fh:
        return json.load(fh)


def parse_field(text: str) -> FieldSpec:
    t = text.strip().upper().replace("GF(", "F").rstrip(")")
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("F"):
        return GF(int(t[1:]))
    raise UsageError(f"unknown field {text!r}")


def _lambdas(args, field):
    if not getattr(args, "lam", None):
        return None
    return [parse_scalar(x, field) for x in args.lam.split(",")]


def load_quiver(args) -> BoundQuiver:
    """``--quiver`` is a JSON file, inline JSON, or a catalog id."""
    text = args.quiver
    field = parse_field(args.field)
    s = text.strip()
    if s.startswith("{") or os.path.exists(text):
        obj = _load_json(text)
        if "field" not in obj:
            obj = dict(obj, field=field.to_json())
        return BoundQuiver.from_json(obj)
    return catalog(text, field, lambdas=_lambdas(args, field)).bq


def load_family(args):
    field = parse_field(args.field)
    return catalog(args.family, field, lambdas=_lambdas(args, field))


def load_rep(bq: BoundQuiver, text: str) -> Representation:
    m = Representation.from_json(bq, _load_json(text))
    if not m.validate():
        raise RepError("matrices do not satisfy the relations")
    return m


def parse_d(bq: BoundQuiver, text: str) -> dict[str, int]:
    s = text.strip()
    if s.startswith("{"):
        return dimvec(bq, json.loads(s))
    vals = [int(x) for x in s.strip("()[]").replace(";", ",").split(",") if x.strip()]
    if len(vals) != len(bq.vertices):
        raise UsageError(f"expected {len(bq.vertices)} entries in the dimension vector")
    return dict(zip(bq.vertices, vals))


# commands


def cmd_validate(args) -> int:
    obj = _load_json(args.file)
    try:
        if "field" not in obj:
            obj = dict(obj, field=parse_field(args.field).to_json())
        bq = BoundQuiver.from_json(obj)
    except (QuiverError, KeyError, FieldError) as e:
        _emit({"valid": False, "error": str(e)})
        return EXIT_FAIL
    out = {"valid": True, "vertices": bq.vertices, "arrows": len(bq.arrows), "relations": len(bq.relations),
           "minimal": bq.check_minimal()}
    if args.m:
        out["representation_valid"] = Representation.from_json(bq, _load_json(args.m)).validate()
    _emit(out)
    return EXIT_OK if out["minimal"] and out.get("representation_valid", True) else EXIT_FAIL


def cmd_form(args) -> int:
    bq = load_quiver(args)
    form = TitsForm(bq)
    d = parse_d(bq, args.d)
    out = {}
    if args.bilinear:
        if not args.e:
            raise UsageError("--bilinear needs --e")
        out["bilinear"] = form.bilinear(d, parse_d(bq, args.e))
    if args.quadratic:
        out["quadratic"] = form.quadratic(d)
    if args.a:
        out["a"] = form.a_const(d)
    if args.coxeter:
        out["coxeter"] = dict(zip(bq.vertices, (render_scalar(x) for x in form.apply_coxeter(d))))
    if not out:
        out["quadratic"] = form.quadratic(d)
    _emit(out if len(out) > 1 else next(iter(out.values())))
    return EXIT_OK


def cmd_hom(args) -> int:
    bq = load_quiver(args)
    m = load_rep(bq, args.m)
    n = load_rep(bq, args.n) if args.n else m
    _emit({"hom": hom_dim(m, n)})
    return EXIT_OK


def cmd_ext(args) -> int:
    bq = load_quiver(args)
    m = load_rep(bq, args.m)
    n = load_rep(bq, args.n) if args.n else m
    e1, e2 = ext(m, n)
    _emit({"ext1": e1, "ext2": e2})
    return EXIT_OK


def cmd_tau(args) -> int:
    bq = load_quiver(args)
    m = load_rep(bq, args.m)
    t = tau_minus(m) if args.inverse else tau(m)
    _emit(t.to_json())
    return EXIT_OK


def cmd_singular(args) -> int:
    bq = load_quiver(args)
    form = TitsForm(bq)
    d = parse_d(bq, args.d)
    cert = classify_singular(form, d)
    out = cert.to_json(bq.vertices)
    out["q"] = form.quadratic(d)
    if cert.singular:
        out["witnesses"] = [dict(zip(bq.vertices, w)) for w in singular_witnesses(form, d)]
    _emit(out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    field = parse_field(args.field)
    e = catalog(args.name, field, lambdas=_lambdas(args, field))
    fam = e.family
    _emit({"name": e.name, "quiver": e.bq.to_json(), "h": fam.h, "ranks": fam.ranks,
           "special_points": {k: render_scalar(v) if v != "inf" else "inf" for k, v in fam.special_values().items()},
           "homogeneous_samples": fam.homogeneous_points(3)})
    return EXIT_OK


def cmd_tube(args) -> int:
    from .tubes import TubeModuleId

    e = load_family(args)
    tid = TubeModuleId.from_json(_load_json(args.id))
    _emit(e.family.tube_module(tid).to_json())
    return EXIT_OK


def cmd_decompose_vector(args) -> int:
    e = load_family(args)
    d = parse_d(e.bq, args.d)
    td = e.family.decompose_vector(d)
    _emit({"in_R": False} if td is None else dict(td.to_json(), in_R=True))
    return EXIT_OK


def cmd_semiinv(args) -> int:
    from .semiinv import differential, distinguished, evaluate, semi_invariant

    e = load_family(args)
    bq, fam = e.bq, e.family
    d = parse_d(bq, args.d)
    if args.v:
        cs = [("V", semi_invariant(load_rep(bq, args.v), d))]
    else:
        cs = [(f"{x.lam},{x.i}", x.c) for entries in distinguished(fam, d).values() for x in entries]
    out = {}
    for label, c in cs:
        row = {}
        if args.weight:
            row["weight"] = c.weight.as_dict()
        if args.eval:
            row["value"] = render_scalar(evaluate(c, load_rep(bq, args.eval)))
        if args.differential:
            if not args.at:
                raise UsageError("--differential needs --at M.json")
            m = load_rep(bq, args.at)
            zobj = _load_json(args.differential)
            z = {a.name: matrix_from_json(zobj[a.name], bq.field, d[a.target], d[a.source])
                 if d[a.target] and d[a.source] else m.mats[a.name].scale(0) for a in bq.arrows}
            row["differential"] = render_scalar(differential(c, m, z))
        if args.emit_presentation:
            row["presentation"] = c.pres.to_json()
        if not row:
            row["weight"] = c.weight.as_dict()
        out[label] = row
    _emit(out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    from .geometry import ext_epi_check, maximality_check, orbit_dim

    e = load_family(args)
    m = load_rep(e.bq, args.m)
    out = {}
    if args.dim or not (args.tangent or args.maximal):
        out["orbit_dim"] = orbit_dim(m)
    if args.tangent:
        out["tangent"] = ext_epi_check(m)
    if args.maximal:
        out["maximal"] = maximality_check(e.family, m)
    _emit(out)
    if args.tangent and not out["tangent"]["holds"]:
        return EXIT_FAIL
    return EXIT_OK


def cmd_closure(args) -> int:
    from .geometry import closure_membership, closure_system, singular_closure_system

    e = load_family(args)
    m = load_rep(e.bq, args.m)
    sys_ = singular_closure_system(e.family, m) if args.singular else closure_system(e.family, m)
    out = {"system": sys_.to_json()}
    if args.member:
        out["member"] = closure_membership(sys_, load_rep(e.bq, args.member))
    _emit(out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    from . import oracle

    q = args.q
    field = GF(q)
    if args.family:
        bq = catalog(args.family, field, lambdas=_lambdas(args, field), strict=not args.loose).bq
    elif args.quiver:
        args.field = f"F{q}"
        bq = load_quiver(args)
    else:
        raise UsageError("oracle needs --family or --quiver")
    d = parse_d(bq, args.d)
    budget = args.budget or oracle.default_budget()
    if args.action == "count":
        res = oracle.count_points(bq, d, q, budget, start=args.resume or 0)
        form = TitsForm(bq)
        a = form.a_const(d)
        res["q^a"] = q ** a
        res["ratio"] = res["valid"] / q ** a
        res["window"] = "heuristic: within a factor 4 of q^a"
        _emit(res)
    elif args.action == "census":
        for o in oracle.orbit_census(bq, d, q, budget):
            sys.stdout.write(json.dumps({"size": o["size"], "representative": o["representative"]}) + "\n")
    else:
        pred = _predicate(args.predicate, bq)
        found = oracle.search_indecomposable(bq, d, q, pred, budget)
        _emit({"count": len(found), "representations": [m.to_json() for m in found]})
    return EXIT_OK


def _predicate(text: str | None, bq):
    from .rep import is_periodic

    if not text or text == "none":
        return None
    kind, _, val = text.partition(":")
    if kind == "periodic":
        period = int(val)
        return lambda m: is_periodic(m, period) == period
    if kind == "class":
        h = {v: 1 for v in bq.vertices}
        form = TitsForm(bq)
        if val == "P":
            return lambda m: form.bilinear(h, m.dims) < 0
        if val == "Q":
            return lambda m: form.bilinear(h, m.dims) > 0
    raise UsageError(f"unknown predicate {text!r}")


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    names = [args.suite] if args.suite else list(SUITES)
    if args.suite and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    results = [run_suite(n, seed=args.seed, scale=args.scale) for n in names]
    for r in results:
        d = r.to_json()
        d.pop("seconds")
        _emit(d, [r.line()], args.pretty)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_example_2222(args) -> int:
    from .counterexample import CounterexampleConfig, homdeg_counterexample

    field = str(parse_field(args.field)).replace("GF(", "F").rstrip(")")
    rep = homdeg_counterexample(CounterexampleConfig(field=field, lam=int(args.lam or 2), seed=args.seed))
    rep.pop("seconds")
    lines = [f"{k}: {v}" for k, v in rep["checks"].items()]
    _emit(rep, lines, args.pretty)
    return EXIT_OK if rep["ok"] else EXIT_FAIL


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qrt", description="Exact computations with bound quiver representations.")
    p.add_argument("--pretty", action="store_true", help="human-readable summary on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field_default="Q"):
        sp.add_argument("--field", default=field_default, help="Q or F<p>")
        sp.add_argument("--lambda", dest="lam", help="canonical algebra parameter(s), comma separated")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)

    sp = sub.add_parser("validate", help="check a bound quiver file")
    sp.add_argument("file")
    sp.add_argument("--m")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("form", help="Tits form values")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--e")
    for flag in ("bilinear", "quadratic", "a", "coxeter"):
        sp.add_argument(f"--{flag}", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_form)

    for name, fn in (("hom", cmd_hom), ("ext", cmd_ext), ("tau", cmd_tau)):
        sp = sub.add_parser(name)
        sp.add_argument("--quiver", required=True)
        sp.add_argument("--m", required=True)
        sp.add_argument("--n")
        if name == "tau":
            sp.add_argument("--inverse", action="store_true")
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("singular")
    sp.add_argument("--quiver", required=True)
    sp.add_argument("--d", required=True)
    common(sp)
    sp.set_defaults(func=cmd_singular)

    sp = sub.add_parser("catalog")
    sp.add_argument("--name", required=True)
    common(sp)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("tube")
    sp.add_argument("--family", required=True)
    sp.add_argument("--id", required=True)
    common(sp)
    sp.set_defaults(func=cmd_tube)

    sp = sub.add_parser("decompose-vector")
    sp.add_argument("--family", required=True)
    sp.add_argument("--d", required=True)
    common(sp)
    sp.set_defaults(func=cmd_decompose_vector)

    sp = sub.add_parser("semiinv")
    sp.add_argument("--family", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--v")
    sp.add_argument("--eval")
    sp.add_argument("--weight", action="store_true")
    sp.add_argument("--differential")
    sp.add_argument("--at")
    sp.add_argument("--emit-presentation", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_semiinv)

    sp = sub.add_parser("orbit")
    sp.add_argument("--family", required=True)
    sp.add_argument("--m", required=True)
    for flag in ("dim", "tangent", "maximal"):
        sp.add_argument(f"--{flag}", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("closure")
    sp.add_argument("--family", required=True)
    sp.add_argument("--m", required=True)
    sp.add_argument("--emit", action="store_true")
    sp.add_argument("--member")
    sp.add_argument("--singular", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("oracle")
    sp.add_argument("action", choices=["count", "census", "search"])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--family")
    sp.add_argument("--quiver")
    sp.add_argument("--predicate")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--resume", type=int)
    sp.add_argument("--loose", action="store_true", help="allow coinciding canonical parameters")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify")
    sp.add_argument("--suite")
    sp.add_argument("--scale", type=float, default=1.0)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("paper-2222", help="the (2,2,2,2) singular vector and hom-order counterexample")
    common(sp, field_default="F3")
    sp.set_defaults(func=cmd_example_2222)
    return p


def run(argv: list[str] | None = None) -> int:
    from .oracle import BudgetExceeded

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (UsageError, CatalogError, QuiverError, FieldError, RepError, SearchTooLarge, ValueError,
            json.JSONDecodeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
