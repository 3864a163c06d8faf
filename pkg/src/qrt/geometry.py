"""Orbits, tangent spaces, closure equations and degenerations in rep(d)."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactfield import render_scalar
from .forms import classify_singular
from .linalg import Matrix, kernel_basis, rank
from .rep import (RepError, Representation, act, cocycle_equations, direct_sum, end_dim, ext1_cocycles,
                  ext1_dim_cocycle, extension_middle, hom, hom_dim, iso_check, quotient, random_gl, restrict,
                  _vec_to_cochain)
from .semiinv import (SemiInvariant, c_lambda, differential, distinguished_at, evaluate)
from .tubes import FamilyError, SeparatingFamily


class GeometryError(ValueError):
    pass


def orbit_dim(m: Representation) -> int:
    return sum(x * x for x in m.dims.values()) - end_dim(m)


def ambient_dim(bq, d: dict) -> int:
    return sum(d[a.source] * d[a.target] for a in bq.arrows)


@dataclass
class TangentSpace:
    base: Representation
    basis: list[dict[str, Matrix]]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def tangent_space(m: Representation) -> TangentSpace:
    """Arrow tuples Z with (M + tZ)(rho) = O(t^2) for every relation."""
    if not m.validate():
        raise RepError("not a representation")
    rows, offs, k = cocycle_equations(m, m)
    F = m.field
    if k == 0:
        return TangentSpace(m, [])
    if rows:
        vecs = kernel_basis(Matrix._raw(rows, F, len(rows), k)).columns()
    else:
        vecs = [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
    return TangentSpace(m, [_vec_to_cochain(v, m, m, offs) for v in vecs])


def ext_epi_check(m: Representation) -> dict:
    t = tangent_space(m).dimension
    o = orbit_dim(m)
    e = ext1_dim_cocycle(m, m)
    return {"tangent": t, "orbit": o, "ext1": e, "holds": t == o + e}


def maximality_check(fam: SeparatingFamily, m: Representation) -> dict:
    td = fam.decompose_vector(m.dims)
    if td is None:
        raise FamilyError("dimension vector is not in the regular cone")
    a = fam.form.a_const(m.dims)
    o = orbit_dim(m)
    return {"orbit": o, "a": a, "p": td.p, "maximal": o == a - td.p}


# closure systems


@dataclass
class Equation:
    lam: str
    i: int
    mu: object
    c: SemiInvariant = field(repr=False)


@dataclass
class ClosureSystem:
    base: Representation
    anchor_lam: str
    anchor_i: int
    anchor: SemiInvariant = field(repr=False)
    equations: list[Equation]
    codim: int

    def values(self, n: Representation) -> list:
        a = evaluate(self.anchor, n)
        return [evaluate(e.c, n) - e.mu * a for e in self.equations]

    def to_json(self) -> dict:
        return {"anchor": {"lambda": self.anchor_lam, "i": self.anchor_i},
                "equations": [{"lambda": e.lam, "i": e.i, "mu": render_scalar(e.mu)} for e in self.equations],
                "codim": self.codim}


def _points_of(fam: SeparatingFamily, m: Representation) -> tuple[list[str], dict]:
    """Special points plus homogeneous points carrying a summand of m."""
    table = fam.s_equivalence_class(m)
    out = list(fam.special_points)
    out += [lam for lam in table if lam not in fam.ranks]
    return out, table


def closure_system(fam: SeparatingFamily, m: Representation, check_singular: bool = True) -> ClosureSystem:
    d = m.dims
    td = fam.decompose_vector(d)
    if td is None:
        raise FamilyError("dimension vector is not in the regular cone")
    if td.p == 0:
        raise GeometryError("p = 0: the orbit closure is all of rep(d)")
    if not maximality_check(fam, m)["maximal"]:
        raise GeometryError("m does not have a maximal orbit")
    if check_singular and classify_singular(fam.form, d).singular:
        raise GeometryError("singular dimension vector; use singular_closure_system")
    points, table = _points_of(fam, m)
    hat = []
    for lam in points:
        for ent in distinguished_at(fam, d, lam, td):
            if not evaluate(ent.c, m):
                hat.append(ent)
    q = len(hat)
    if q > td.p:
        raise GeometryError("more vanishing distinguished semi-invariants than p")
    need = td.p - q + 1
    anchors = []
    for lam in fam.homogeneous_points(need + len(table) + 2):
        if lam not in table and len(anchors) < need:
            anchors.append(lam)
    if len(anchors) < need:
        raise GeometryError("the field has too few homogeneous points for the anchors")
    anc = distinguished_at(fam, d, anchors[0], td)[0]
    a0 = evaluate(anc.c, m)
    if not a0:
        raise GeometryError("anchor semi-invariant vanishes at m")
    eqs = [Equation(e.lam, e.i, m.field.zero, e.c) for e in hat]
    for lam in anchors[1:]:
        ent = distinguished_at(fam, d, lam, td)[0]
        eqs.append(Equation(lam, 0, evaluate(ent.c, m) / a0, ent.c))
    sys = ClosureSystem(m, anc.lam, 0, anc.c, eqs, td.p)
    assert not any(sys.values(m))
    return sys


def singular_closure_system(fam: SeparatingFamily, m: Representation) -> ClosureSystem:
    """One-equation system (c_{lam,j}) for m = R^{(r)}_{lam,i} at d = h."""
    d = m.dims
    td = fam.decompose_vector(d)
    if td is None or td.p != 1 or any(any(c) for c in td.coords.values()):
        raise GeometryError("needs d = h")
    tid = fam.locate(m)
    if tid is None or tid.lam not in fam.exceptional or tid.n != fam.rank(tid.lam):
        raise GeometryError("m must be R^{(r)} in an exceptional tube")
    vanish = [e for e in distinguished_at(fam, d, tid.lam, td) if not evaluate(e.c, m)]
    if len(vanish) != 1:
        raise GeometryError("expected exactly one vanishing c_{lam,j}")
    e = vanish[0]
    return ClosureSystem(m, e.lam, e.i, e.c, [Equation(e.lam, e.i, m.field.zero, e.c)], 1)


def closure_membership(sys: ClosureSystem, n: Representation) -> bool:
    if n.dims != sys.base.dims:
        raise RepError("dimension vector mismatch")
    return not any(sys.values(n))


# degenerations


def extension_degeneration(m: Representation, sub: Representation, quot: Representation, cls) -> Representation:
    """sub + quot, after checking that the class ``cls`` of Ext^1(quot, sub) has middle term m.

    ``cls`` is an index into the Ext^1 class basis, an explicit cocycle, or None for the split class.
    """
    if sub.total_dim == 0:
        if not iso_check(quot, m):
            raise GeometryError("quotient is not isomorphic to m")
        return m
    if quot.total_dim == 0:
        if not iso_check(sub, m):
            raise GeometryError("sub is not isomorphic to m")
        return m
    data = ext1_cocycles(quot, sub)
    if cls is None:
        z = _zero_cochain(quot, sub)
    elif isinstance(cls, int):
        if not 0 <= cls < data.dimension:
            raise GeometryError("class index out of range")
        z = data.classes[cls]
    else:
        z = cls
    e = extension_middle(sub, quot, z)
    if not iso_check(e, m):
        raise GeometryError("the extension does not assemble to m")
    return direct_sum([sub, quot])


def _zero_cochain(c: Representation, a: Representation) -> dict[str, Matrix]:
    return {al.name: Matrix.zeros(a.dims[al.target], c.dims[al.source], c.field) for al in c.bq.arrows}


def image_bases(f: dict[str, Matrix], m: Representation) -> dict[str, list[list]]:
    from .linalg import column_space_basis

    return {v: column_space_basis(f[v]).columns() if m.dims[v] and f[v].ncols else [] for v in m.bq.vertices}


def split_at(m: Representation, bases: dict[str, list[list]]) -> tuple[Representation, Representation]:
    return restrict(m, bases), quotient(m, bases)


def degenerations(m: Representation, sources: list[Representation], depth: int = 1) -> list[Representation]:
    """sub + m/sub for images of basis homomorphisms X -> m, iterated ``depth`` times."""
    out: list[Representation] = []
    frontier = [m]
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            for x in sources:
                for f in hom(x, cur).basis:
                    bases = image_bases(f, cur)
                    sz = sum(len(b) for b in bases.values())
                    if sz == 0 or sz == cur.total_dim:
                        continue
                    s, q = split_at(cur, bases)
                    n = direct_sum([s, q])
                    if iso_check(n, cur) or any(iso_check(n, y) for y in out):
                        continue
                    out.append(n)
                    nxt.append(n)
        frontier = nxt
    return out


def semisimple(m: Representation) -> Representation:
    return Representation(m.bq, m.dims)


def translates(n: Representation, count: int, seed: int) -> list[Representation]:
    rng = random.Random(seed)
    return [act(n, random_gl(n.bq, n.dims, rng)) for _ in range(count)]


# differentials


def differential_matrix(cs: list[SemiInvariant], m: Representation, ts: TangentSpace | None = None) -> Matrix:
    """Rows: semi-invariants; columns: tangent basis vectors."""
    ts = ts or tangent_space(m)
    rows = [[differential(c, m, z) for z in ts.basis] for c in cs]
    return Matrix(rows, m.field, len(cs), ts.dimension)


def differential_rank(cs: list[SemiInvariant], m: Representation, ts: TangentSpace | None = None) -> int:
    mat = differential_matrix(cs, m, ts)
    return rank(mat) if mat.nrows and mat.ncols else 0


# hom order


@dataclass
class HomOrderReport:
    m: Representation
    n: Representation
    tests: int
    consistent: bool
    strict: int
    witness: Representation | None
    values: list[tuple[int, int]]

    def to_json(self) -> dict:
        out = {"verdict": "consistent" if self.consistent else "violated", "tests": self.tests,
               "strict": self.strict, "note": "checked on a finite test list only"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def hom_order_compare(m: Representation, n: Representation, tests: list[Representation]) -> HomOrderReport:
    """Whether dim Hom(X, m) <= dim Hom(X, n) for every X in ``tests``."""
    if m.dims != n.dims:
        raise RepError("dimension vector mismatch")
    values = []
    witness = None
    strict = 0
    for x in tests:
        a, b = hom_dim(x, m), hom_dim(x, n)
        values.append((a, b))
        if a > b and witness is None:
            witness = x
        strict += a < b
    return HomOrderReport(m, n, len(tests), witness is None, strict, witness, values)


# semi-invariants used by the closure checks


def anchor_semi_invariants(fam: SeparatingFamily, d, points: list[str]) -> list[SemiInvariant]:
    td = fam.decompose_vector(d)
    return [distinguished_at(fam, d, lam, td)[0].c for lam in points]


def c_lambda_value(fam: SeparatingFamily, d, lam: str, m: Representation):
    return c_lambda(distinguished_at(fam, d, lam), m)
