"""Representations of bound quivers and their homological algebra.

A representation stores one matrix per arrow, of shape
``dims[target] x dims[source]``.  Subrepresentations are handled as
per-vertex lists of column vectors in the ambient coordinates.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field

from .exactfield import FieldSpec, render_scalar
from .linalg import (Matrix, ShapeError, _rref_rows, block_matrix, det, kernel_basis, matrix_from_json,
                     matrix_to_json, rank, solve)
from .quiver import BoundQuiver, Path


class RepError(ValueError):
    pass


class ResolutionTooLong(RepError):
    """The projective resolution does not stop after two steps."""


class Inconclusive(RepError):
    """Idempotent splitting could neither split nor certify a local endomorphism ring."""


def dimvec(bq: BoundQuiver, d) -> dict[str, int]:
    """Normalize a dimension vector given as dict, list or tuple (vertex order)."""
    if isinstance(d, dict):
        if set(d) != set(bq.vertices):
            extra = set(d) - set(bq.vertices)
            if extra:
                raise RepError(f"unknown vertices {sorted(extra)}")
        out = {v: int(d.get(v, 0)) for v in bq.vertices}
    else:
        d = list(d)
        if len(d) != len(bq.vertices):
            raise RepError("dimension vector has the wrong length")
        out = {v: int(x) for v, x in zip(bq.vertices, d)}
    if any(x < 0 for x in out.values()):
        raise RepError("negative dimension")
    return out


def dim_tuple(bq: BoundQuiver, d: dict) -> tuple[int, ...]:
    return tuple(d[v] for v in bq.vertices)


class Representation:
    """Matrices ``mats[arrow]`` of shape ``dims[t] x dims[s]``.  Immutable by convention."""

    def __init__(self, bq: BoundQuiver, dims, mats: dict | None = None):
        self.bq = bq
        self.dims = dimvec(bq, dims)
        F = bq.field
        mats = dict(mats or {})
        out = {}
        for a in bq.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = mats.pop(a.name, None)
            if m is None:
                m = Matrix.zeros(*shape, F)
            elif not isinstance(m, Matrix):
                m = Matrix(m, F, *shape)
            if m.shape != shape:
                raise ShapeError(f"arrow {a.name}: expected {shape}, got {m.shape}")
            out[a.name] = m
        if mats:
            raise RepError(f"unknown arrows {sorted(mats)}")
        self.mats = out
        self._path_cache: dict = {}

    @property
    def field(self) -> FieldSpec:
        return self.bq.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return dim_tuple(self.bq, self.dims)

    def path_matrix(self, arrows: tuple[str, ...], vertex: str | None = None) -> Matrix:
        """M(a_1 ... a_n) = M(a_1) ... M(a_n); the empty path needs ``vertex``."""
        arrows = tuple(arrows)
        if not arrows:
            return Matrix.identity(self.dims[vertex], self.field)
        if arrows in self._path_cache:
            return self._path_cache[arrows]
        m = self.mats[arrows[0]]
        for a in arrows[1:]:
            m = m @ self.mats[a]
        self._path_cache[arrows] = m
        return m

    def eval_path(self, p: Path) -> Matrix:
        return self.path_matrix(p.arrows, p.source)

    def eval_combination(self, coords, source: str, target: str) -> Matrix:
        """M applied to the morphism with the given coordinates in the basis of k(source, target)."""
        space = self.bq.morphism_space(source, target)
        out = Matrix.zeros(self.dims[target], self.dims[source], self.field)
        for c, b in zip(coords, space.basis):
            if c:
                out = out + self.eval_path(b).scale(c)
        return out

    def relation_value(self, rel) -> Matrix:
        out = Matrix.zeros(self.dims[rel.target], self.dims[rel.source], self.field)
        for c, p in rel.terms:
            out = out + self.eval_path(p).scale(c)
        return out

    def validate(self) -> bool:
        return all(self.relation_value(r).is_zero() for r in self.bq.relations)

    def dual(self) -> "Representation":
        """D M as a representation of the opposite bound quiver."""
        op = self.bq.opposite()
        return Representation(op, self.dims, {a: m.T for a, m in self.mats.items()})

    def __eq__(self, other):
        return (isinstance(other, Representation) and other.bq is self.bq and other.dims == self.dims
                and all(self.mats[a] == other.mats[a] for a in self.mats))

    def __hash__(self):
        return hash((self.dim_vector, tuple(self.mats[a.name] for a in self.bq.arrows)))

    def __repr__(self):
        return f"Representation(dims={self.dim_vector})"

    def to_json(self) -> dict:
        return {"dims": dict(self.dims), "matrices": {a: matrix_to_json(m) for a, m in self.mats.items()}}

    @classmethod
    def from_json(cls, bq: BoundQuiver, obj: dict) -> "Representation":
        dims = dimvec(bq, obj["dims"])
        mats = {}
        for a in bq.arrows:
            rows = obj.get("matrices", {}).get(a.name)
            if rows is not None:
                nr, nc = dims[a.target], dims[a.source]
                if nr == 0 or nc == 0:
                    mats[a.name] = Matrix.zeros(nr, nc, bq.field)
                else:
                    mats[a.name] = matrix_from_json(rows, bq.field, nr, nc)
        extra = set(obj.get("matrices", {})) - {a.name for a in bq.arrows}
        if extra:
            raise RepError(f"unknown arrows {sorted(extra)}")
        return cls(bq, dims, mats)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _check_same(m: Representation, n: Representation):
    if m.bq is not n.bq and not m.bq.same_as(n.bq):
        raise RepError("representations live over different bound quivers")


# basic constructions


def zero_rep(bq: BoundQuiver) -> Representation:
    return Representation(bq, {v: 0 for v in bq.vertices})


def simple(bq: BoundQuiver, x: str) -> Representation:
    return Representation(bq, {v: int(v == x) for v in bq.vertices})


def projective(bq: BoundQuiver, x: str) -> Representation:
    """P_x with P_x(y) = k(x, y) and arrows acting by left composition."""
    dims = {y: bq.morphism_space(x, y).dimension for y in bq.vertices}
    F = bq.field
    mats = {}
    for a in bq.arrows:
        src = bq.morphism_space(x, a.source)
        alpha = Path((a.name,), a.source, a.target)
        cols = [bq.multiply(alpha, w) for w in src.basis]
        mats[a.name] = Matrix.from_columns(cols, dims[a.target], F)
    return Representation(bq, dims, mats)


def injective(bq: BoundQuiver, x: str) -> Representation:
    return projective(bq.opposite(), x).dual()


def direct_sum(ms: list[Representation], bq: BoundQuiver | None = None) -> Representation:
    if not ms:
        if bq is None:
            raise RepError("empty direct sum needs a bound quiver")
        return zero_rep(bq)
    bq = ms[0].bq
    for m in ms:
        _check_same(ms[0], m)
    dims = {v: sum(m.dims[v] for m in ms) for v in bq.vertices}
    mats = {}
    for a in bq.arrows:
        blocks = [[m.mats[a.name] if i == j else None for j, m in enumerate(ms)] for i in range(len(ms))]
        mats[a.name] = block_matrix(blocks, [m.dims[a.target] for m in ms], [m.dims[a.source] for m in ms],
                                    bq.field)
    return Representation(bq, dims, mats)


def restrict(m: Representation, bases: dict[str, list[list]]) -> Representation:
    """The subrepresentation spanned by ``bases[v]`` (columns in m's coordinates)."""
    F = m.field
    dims = {v: len(bases[v]) for v in m.bq.vertices}
    mats = {}
    for a in m.bq.arrows:
        bs, bt = bases[a.source], bases[a.target]
        if not bs or not bt:
            if bs and any(any(x for x in m.mats[a.name].apply(v)) for v in bs):
                raise RepError("given spaces are not a subrepresentation")
            mats[a.name] = Matrix.zeros(len(bt), len(bs), F)
            continue
        img = Matrix.from_columns([m.mats[a.name].apply(v) for v in bs], m.dims[a.target], F)
        x = solve(Matrix.from_columns(bt, m.dims[a.target], F), img)
        if x is None:
            raise RepError("given spaces are not a subrepresentation")
        mats[a.name] = x
    return Representation(m.bq, dims, mats)


def _complement_units(basis: list[list], n: int, field: FieldSpec) -> list[int]:
    """Indices of unit vectors completing ``basis`` to a basis of k^n."""
    rows, pivots = _rref_rows([list(v) for v in basis], n) if basis else ([], [])
    piv = set(pivots)
    return [i for i in range(n) if i not in piv]


def quotient(m: Representation, bases: dict[str, list[list]]) -> Representation:
    """m / sub, using unit vectors complementing the sub at each vertex."""
    F = m.field
    comp = {v: _complement_units(bases[v], m.dims[v], F) for v in m.bq.vertices}
    dims = {v: len(comp[v]) for v in m.bq.vertices}
    # change of basis at each vertex: columns [sub | units]
    proj = {}
    for v in m.bq.vertices:
        n = m.dims[v]
        cols = [list(b) for b in bases[v]]
        for i in comp[v]:
            e = [F.zero] * n
            e[i] = F.one
            cols.append(e)
        if n:
            inv = solve(Matrix.from_columns(cols, n, F), Matrix.identity(n, F))
            proj[v] = Matrix._raw(inv.rows[len(bases[v]):], F, dims[v], n)
        else:
            proj[v] = Matrix.zeros(0, 0, F)
    mats = {}
    for a in m.bq.arrows:
        s, t = a.source, a.target
        unit_cols = []
        for i in comp[s]:
            unit_cols.append(m.mats[a.name].column(i))
        img = Matrix.from_columns(unit_cols, m.dims[t], F)
        mats[a.name] = proj[t] @ img if dims[t] and dims[s] else Matrix.zeros(dims[t], dims[s], F)
    return Representation(m.bq, dims, mats)


# Hom


@dataclass
class HomBasis:
    source: Representation
    target: Representation
    basis: list[dict[str, Matrix]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combination(self, coeffs) -> dict[str, Matrix]:
        F = self.source.field
        out = {v: Matrix.zeros(self.target.dims[v], self.source.dims[v], F) for v in self.source.bq.vertices}
        for c, f in zip(coeffs, self.basis):
            if c:
                out = {v: out[v] + f[v].scale(c) for v in out}
        return out


def _hom_system(m: Representation, n: Representation):
    bq = m.bq
    F = m.field
    offs = {}
    k = 0
    for v in bq.vertices:
        offs[v] = k
        k += m.dims[v] * n.dims[v]
    z = F.zero
    rows = []
    for a in bq.arrows:
        s, t = a.source, a.target
        ms, nt, ns, mt = m.dims[s], n.dims[t], n.dims[s], m.dims[t]
        A, B = n.mats[a.name], m.mats[a.name]
        for i in range(nt):
            for j in range(ms):
                row = [z] * k
                for kk in range(ns):
                    c = A.rows[i][kk]
                    if c:
                        row[offs[s] + kk * ms + j] += c
                for l in range(mt):
                    c = B.rows[l][j]
                    if c:
                        row[offs[t] + i * mt + l] -= c
                rows.append(row)
    return rows, offs, k


def hom(m: Representation, n: Representation) -> HomBasis:
    """Basis of Hom(m, n): solutions of N(a) f_s = f_t M(a)."""
    _check_same(m, n)
    rows, offs, k = _hom_system(m, n)
    F = m.field
    ker = kernel_basis(Matrix._raw(rows, F, len(rows), k)).columns() if k else []
    basis = []
    for vec in ker:
        f = {}
        for v in m.bq.vertices:
            r, c = n.dims[v], m.dims[v]
            o = offs[v]
            f[v] = Matrix._raw([vec[o + i * c:o + (i + 1) * c] for i in range(r)], F, r, c)
        basis.append(f)
    return HomBasis(m, n, basis)


def hom_dim(m: Representation, n: Representation) -> int:
    _check_same(m, n)
    rows, _, k = _hom_system(m, n)
    if not k:
        return 0
    return k - (rank(Matrix._raw(rows, m.field, len(rows), k)) if rows else 0)


def end_dim(m: Representation) -> int:
    return hom_dim(m, m)


def compose_maps(g: dict, f: dict) -> dict:
    return {v: g[v] @ f[v] for v in f}


def is_invertible_map(f: dict) -> bool:
    for v, x in f.items():
        if x.nrows != x.ncols:
            return False
        if x.nrows and not det(x):
            return False
    return True


# radical, covers, presentations


def _span_rank(vectors: list[list], n: int) -> int:
    return len(_rref_rows([list(v) for v in vectors], n)[1]) if vectors else 0


def _top_generators(m: Representation, sub: dict[str, list[list]]) -> list[tuple[str, list]]:
    """Vectors of ``sub`` spanning it modulo its radical, in vertex order."""
    gens = []
    for v in m.bq.vertices:
        n = m.dims[v]
        rad = []
        for a in m.bq.quiver.in_arrows(v):
            for w in sub[a.source]:
                rad.append(m.mats[a.name].apply(w))
        basis = [list(r) for r in _rref_rows(rad, n)[0][:_span_rank(rad, n)]] if rad and n else []
        cur = list(basis)
        r = len(cur)
        for w in sub[v]:
            if _span_rank(cur + [w], n) > r:
                cur.append(w)
                r += 1
                gens.append((v, list(w)))
    return gens


def _full(m: Representation) -> dict[str, list[list]]:
    F = m.field
    out = {}
    for v in m.bq.vertices:
        n = m.dims[v]
        out[v] = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    return out


def top_and_radical(m: Representation) -> tuple[dict[str, int], Representation]:
    rad = {}
    for v in m.bq.vertices:
        n = m.dims[v]
        vecs = []
        for a in m.bq.quiver.in_arrows(v):
            vecs.extend(m.mats[a.name].columns())
        rows, piv = _rref_rows(vecs, n) if vecs and n else ([], [])
        rad[v] = [list(r) for r in rows[:len(piv)]]
    radical = restrict(m, rad)
    top = {v: m.dims[v] - radical.dims[v] for v in m.bq.vertices}
    return top, radical


def _map_from_generators(target: Representation, gens: list[tuple[str, list]]) -> dict[str, Matrix]:
    """At each vertex z, the matrix of (+)_j P_{y_j}(z) -> target(z), 1_{y_j} |-> g_j."""
    bq = target.bq
    F = target.field
    out = {}
    for z in bq.vertices:
        cols = []
        for y, g in gens:
            for w in bq.morphism_space(y, z).basis:
                cols.append(target.eval_path(w).apply(g))
        out[z] = Matrix.from_columns(cols, target.dims[z], F)
    return out


@dataclass
class ProjectivePresentation:
    """f: (+)_j P_{y_j} -> (+)_i P_{x_i} with omega[i][j] in k(x_i, y_j).

    Together with the cover (+)_i P_{x_i} -> V sending 1_{x_i} to
    ``generators[i]`` this is a minimal projective presentation of V.
    """

    target: Representation
    x: list[str]
    y: list[str]
    omega: list[list[list]]
    generators: list[list] = dc_field(default_factory=list)

    def hom_matrix(self, n: Representation) -> Matrix:
        """Hom(f, n): (+)_i n(x_i) -> (+)_j n(y_j), block (j, i) = n(omega_ij)."""
        F = n.field
        blocks = [[n.eval_combination(self.omega[i][j], self.x[i], self.y[j]) for i in range(len(self.x))]
                  for j in range(len(self.y))]
        return block_matrix(blocks, [n.dims[y] for y in self.y], [n.dims[x] for x in self.x], F)

    def omega_paths(self, i: int, j: int) -> dict[Path, object]:
        space = self.target.bq.morphism_space(self.x[i], self.y[j])
        return {b: c for b, c in zip(space.basis, self.omega[i][j]) if c}

    def to_json(self) -> dict:
        return {"P0": list(self.x), "P1": list(self.y),
                "omega": [[[{"coeff": render_scalar(c), "path": list(p.arrows)}
                            for p, c in self.omega_paths(i, j).items()]
                           for j in range(len(self.y))] for i in range(len(self.x))]}


def _omega_from_generators(bq: BoundQuiver, x: list[str], gens: list[tuple[str, list]]) -> list[list[list]]:
    omega = [[None] * len(gens) for _ in x]
    for j, (y, g) in enumerate(gens):
        off = 0
        for i, xi in enumerate(x):
            d = bq.morphism_space(xi, y).dimension
            omega[i][j] = list(g[off:off + d])
            off += d
    return omega


class _ProjSum:
    def __init__(self, bq: BoundQuiver, verts: list[str]):
        self.verts = list(verts)
        self.rep = direct_sum([projective(bq, v) for v in verts], bq)


def _kernel_spaces(maps: dict[str, Matrix]) -> dict[str, list[list]]:
    return {z: kernel_basis(m).columns() if m.ncols else [] for z, m in maps.items()}


def minimal_presentation(m: Representation) -> ProjectivePresentation:
    bq = m.bq
    gens0 = _top_generators(m, _full(m))
    x = [v for v, _ in gens0]
    pi = _map_from_generators(m, gens0)
    p0 = _ProjSum(bq, x)
    k1 = _kernel_spaces(pi)
    gens1 = _top_generators(p0.rep, k1)
    y = [v for v, _ in gens1]
    return ProjectivePresentation(m, x, y, _omega_from_generators(bq, x, gens1), [g for _, g in gens0])


@dataclass
class Resolution:
    """0 -> P2 -> P1 -> P0 -> M -> 0 given by two presentation maps."""

    p0: list[str]
    p1: list[str]
    p2: list[str]
    d1: ProjectivePresentation
    d2: ProjectivePresentation

    @property
    def length(self) -> int:
        return 2 if self.p2 else (1 if self.p1 else 0)


def projective_resolution(m: Representation) -> Resolution:
    """Minimal resolution; raises ResolutionTooLong if it does not end at P2."""
    bq = m.bq
    d1 = minimal_presentation(m)
    p0 = _ProjSum(bq, d1.x)
    gens1 = [(y, _concat_omega(bq, d1, j)) for j, y in enumerate(d1.y)]
    p1 = _ProjSum(bq, d1.y)
    k2 = _kernel_spaces(_map_from_generators(p0.rep, gens1))
    gens2 = _top_generators(p1.rep, k2)
    z = [v for v, _ in gens2]
    d2 = ProjectivePresentation(p1.rep, d1.y, z, _omega_from_generators(bq, d1.y, gens2))
    k3 = _kernel_spaces(_map_from_generators(p1.rep, gens2))
    if any(k3.values()):
        raise ResolutionTooLong("projective dimension exceeds 2")
    return Resolution(d1.x, d1.y, z, d1, d2)


def _concat_omega(bq, pres: ProjectivePresentation, j: int) -> list:
    out = []
    for i in range(len(pres.x)):
        out.extend(pres.omega[i][j])
    return out


def projective_dimension(m: Representation) -> int:
    return projective_resolution(m).length


def ext(m: Representation, n: Representation) -> tuple[int, int]:
    """(dim Ext^1(m, n), dim Ext^2(m, n)) from the projective resolution of m."""
    _check_same(m, n)
    res = projective_resolution(m)
    c0 = sum(n.dims[v] for v in res.p0)
    c1 = sum(n.dims[v] for v in res.p1)
    c2 = sum(n.dims[v] for v in res.p2)
    r0 = rank(res.d1.hom_matrix(n)) if c0 and c1 else 0
    r1 = rank(res.d2.hom_matrix(n)) if c1 and c2 else 0
    return c1 - r1 - r0, c2 - r1


def ext_all(m: Representation, n: Representation) -> tuple[int, int, int]:
    """(hom, ext1, ext2), with hom read off the same complex."""
    _check_same(m, n)
    res = projective_resolution(m)
    c0 = sum(n.dims[v] for v in res.p0)
    c1 = sum(n.dims[v] for v in res.p1)
    c2 = sum(n.dims[v] for v in res.p2)
    r0 = rank(res.d1.hom_matrix(n)) if c0 and c1 else 0
    r1 = rank(res.d2.hom_matrix(n)) if c1 and c2 else 0
    return c0 - r0, c1 - r1 - r0, c2 - r1


def injective_dimension(m: Representation) -> int:
    return projective_dimension(m.dual())


# extensions by cocycles


@dataclass
class Ext1Data:
    """Ext^1(c, a) via cocycles: middle terms E(a) = [[A(a), Z(a)], [0, C(a)]]."""

    c: Representation
    a: Representation
    cocycles: list[dict[str, Matrix]]
    classes: list[dict[str, Matrix]]

    @property
    def dimension(self) -> int:
        return len(self.classes)


def _cocycle_layout(c: Representation, a: Representation):
    offs = {}
    k = 0
    for al in c.bq.arrows:
        offs[al.name] = k
        k += a.dims[al.target] * c.dims[al.source]
    return offs, k


def cocycle_equations(c: Representation, a: Representation) -> tuple[list[list], dict, int]:
    """Linear equations on (Z(al)) making E a representation."""
    bq = c.bq
    F = c.field
    offs, k = _cocycle_layout(c, a)
    rows = []
    for rel in bq.relations:
        at, cs = a.dims[rel.target], c.dims[rel.source]
        block = [[[F.zero] * k for _ in range(cs)] for _ in range(at)]
        for coef, p in rel.terms:
            ar = p.arrows
            for pos, name in enumerate(ar):
                al = bq.quiver.arrow[name]
                L = a.path_matrix(ar[:pos], rel.target) if pos else Matrix.identity(at, F)
                R = c.path_matrix(ar[pos + 1:], rel.source) if pos + 1 < len(ar) else Matrix.identity(cs, F)
                zr, zc = a.dims[al.target], c.dims[al.source]
                o = offs[name]
                for i in range(at):
                    Li = L.rows[i]
                    for u in range(zr):
                        lu = Li[u]
                        if not lu:
                            continue
                        for v in range(zc):
                            Rv = R.rows[v]
                            base = o + u * zc + v
                            for j in range(cs):
                                if Rv[j]:
                                    block[i][j][base] += coef * lu * Rv[j]
        for i in range(at):
            rows.extend(block[i])
    return rows, offs, k


def _vec_to_cochain(vec, c, a, offs) -> dict[str, Matrix]:
    F = c.field
    out = {}
    for al in c.bq.arrows:
        r, cc = a.dims[al.target], c.dims[al.source]
        o = offs[al.name]
        out[al.name] = Matrix._raw([list(vec[o + i * cc:o + (i + 1) * cc]) for i in range(r)], F, r, cc)
    return out


def coboundaries(c: Representation, a: Representation) -> list[list]:
    """Images of the elementary h_x: Z(al) = A(al) h_s - h_t C(al)."""
    F = c.field
    offs, k = _cocycle_layout(c, a)
    vecs = []
    for x in c.bq.vertices:
        for i in range(a.dims[x]):
            for j in range(c.dims[x]):
                vec = [F.zero] * k
                for al in c.bq.arrows:
                    zc = c.dims[al.source]
                    o = offs[al.name]
                    if al.source == x:
                        A = a.mats[al.name]
                        for u in range(a.dims[al.target]):
                            if A.rows[u][i]:
                                vec[o + u * zc + j] += A.rows[u][i]
                    if al.target == x:
                        C = c.mats[al.name]
                        for v in range(zc):
                            if C.rows[j][v]:
                                vec[o + i * zc + v] -= C.rows[j][v]
                vecs.append(vec)
    return vecs


def ext1_cocycles(c: Representation, a: Representation) -> Ext1Data:
    """Cocycle description of Ext^1(c, a); ``classes`` lifts a basis of Z^1 / B^1."""
    _check_same(c, a)
    rows, offs, k = cocycle_equations(c, a)
    F = c.field
    if k == 0:
        return Ext1Data(c, a, [], [])
    z1 = kernel_basis(Matrix._raw(rows, F, len(rows), k)).columns() if rows else \
        [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
    b1 = coboundaries(c, a)
    brows, bpiv = _rref_rows([list(v) for v in b1], k) if b1 else ([], [])
    cur = [list(r) for r in brows[:len(bpiv)]]
    r = len(cur)
    classes = []
    for v in z1:
        if _span_rank(cur + [v], k) > r:
            cur.append(v)
            r += 1
            classes.append(v)
    return Ext1Data(c, a, [_vec_to_cochain(v, c, a, offs) for v in z1],
                    [_vec_to_cochain(v, c, a, offs) for v in classes])


def ext1_dim_cocycle(c: Representation, a: Representation) -> int:
    """dim Z^1 - (sum_x c_x a_x - dim Hom(c, a)); independent of resolutions."""
    rows, _, k = cocycle_equations(c, a)
    z1 = k - (rank(Matrix._raw(rows, c.field, len(rows), k)) if rows else 0)
    b1 = sum(c.dims[v] * a.dims[v] for v in c.bq.vertices) - hom_dim(c, a)
    return z1 - b1


def extension_middle(a: Representation, c: Representation, z: dict[str, Matrix]) -> Representation:
    """The middle term of 0 -> a -> E -> c -> 0 given by the cocycle z."""
    bq = a.bq
    dims = {v: a.dims[v] + c.dims[v] for v in bq.vertices}
    mats = {}
    for al in bq.arrows:
        s, t = al.source, al.target
        mats[al.name] = block_matrix([[a.mats[al.name], z[al.name]], [None, c.mats[al.name]]],
                                     [a.dims[t], c.dims[t]], [a.dims[s], c.dims[s]], bq.field)
    e = Representation(bq, dims, mats)
    if not e.validate():
        raise RepError("cochain is not a cocycle")
    return e


# Auslander-Reiten translation


def tau(m: Representation) -> Representation:
    """D Coker Hom(f, (+)_z P_z) for the minimal presentation f of m."""
    bq = m.bq
    op = bq.opposite()
    pres = minimal_presentation(m)
    if not pres.x:
        return zero_rep(bq)
    q1 = _ProjSum(op, pres.y)
    gens = []
    for i, xi in enumerate(pres.x):
        vec = []
        for j, yj in enumerate(pres.y):
            combo = {Path(p.arrows[::-1], p.target, p.source): c for p, c in pres.omega_paths(i, j).items()}
            space = op.morphism_space(yj, xi)
            vec.extend(space.reduce(combo, bq.field) if combo else [bq.field.zero] * space.dimension)
        gens.append((xi, vec))
    maps = _map_from_generators(q1.rep, gens)
    image = {}
    for z, mat in maps.items():
        n = q1.rep.dims[z]
        if mat.ncols and n:
            rows, piv = _rref_rows(mat.T.to_lists(), n)
            image[z] = [list(r) for r in rows[:len(piv)]]
        else:
            image[z] = []
    coker = quotient(q1.rep, image)
    return coker.dual()


def tau_minus(m: Representation) -> Representation:
    return tau(m.dual()).dual()


# endomorphisms, splitting, isomorphism


def _block_diag(f: dict[str, Matrix], vertices) -> Matrix:
    mats = [f[v] for v in vertices]
    sizes = [x.nrows for x in mats]
    F = mats[0].field if mats else None
    blocks = [[mats[i] if i == j else None for j in range(len(mats))] for i in range(len(mats))]
    return block_matrix(blocks, sizes, sizes, F)


def _krylov_minpoly(mat: Matrix, v: list) -> list:
    """Monic polynomial (low degree first) of least degree annihilating v under mat."""
    F = mat.field
    seq = [v]
    n = len(v)
    while True:
        w = mat.apply(seq[-1])
        cols = seq
        sol = solve(Matrix.from_columns(cols, n, F), Matrix.from_columns([w], n, F))
        if sol is not None:
            coeffs = [-sol.rows[i][0] for i in range(len(cols))]
            return coeffs + [F.one]
        seq.append(w)


def _single_eigenvalue(mat: Matrix):
    """c with mat - c nilpotent, or None."""
    F = mat.field
    n = mat.nrows
    if n == 0:
        return F.zero
    e = [F.zero] * n
    for i in range(n):
        if any(mat.rows[r][i] for r in range(n)) or True:
            e = [F.one if j == i else F.zero for j in range(n)]
            break
    mp = _krylov_minpoly(mat, e)
    deg = len(mp) - 1
    candidates = []
    if F.kind == "Q" or deg % F.p:
        candidates = [-mp[deg - 1] / deg]
    elif F.p <= 101:
        candidates = [c for c in F.elements() if _poly_eval(mp, c) == 0]
    for c in candidates:
        g = mat - Matrix.identity(n, F).scale(c)
        p = g
        k = 1
        while k < n:
            p = p @ g
            k += 1
        if p.is_zero():
            return c
    return None


def _poly_eval(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _flatten(f: dict[str, Matrix], vertices) -> list:
    out = []
    for v in vertices:
        for r in f[v].rows:
            out.extend(r)
    return out


def local_certificate(m: Representation, ends: list[dict] | None = None) -> bool:
    """True when End(m) = k*1 + J with J a nilpotent ideal."""
    if m.total_dim == 0:
        return False
    ends = hom(m, m).basis if ends is None else ends
    vs = [v for v in m.bq.vertices if m.dims[v]]
    F = m.field
    n = sum(m.dims[v] for v in vs)
    mats = [_block_diag(f, vs) for f in ends]
    J = []
    for mat in mats:
        c = _single_eigenvalue(mat)
        if c is None:
            return False
        J.append(mat - Matrix.identity(n, F).scale(c))
    flat = [[x for r in j.rows for x in r] for j in J]
    jrows, jpiv = _rref_rows([list(f) for f in flat], n * n) if flat else ([], [])
    jbasis_vecs = [flat[i] for i in range(len(flat))]
    jdim = len(jpiv)
    if jdim != len(ends) - 1:
        return False
    jb = [Matrix._raw([v[i * n:(i + 1) * n] for i in range(n)], F, n, n) for v in _independent(jbasis_vecs, n * n)]
    for a in jb:
        for b in jb:
            prod = a @ b
            if _span_rank([[x for r in y.rows for x in r] for y in jb] + [[x for r in prod.rows for x in r]],
                          n * n) > jdim:
                return False
    # nilpotency of the ideal: powers shrink to zero
    power = jb
    for _ in range(n + 1):
        if not power:
            return True
        prods = [[x for r in (a @ b).rows for x in r] for a in power for b in jb]
        power = [Matrix._raw([v[i * n:(i + 1) * n] for i in range(n)], F, n, n) for v in _independent(prods, n * n)]
    return not power


def _independent(vecs: list[list], n: int) -> list[list]:
    out = []
    r = 0
    for v in vecs:
        if any(v) and _span_rank(out + [v], n) > r:
            out.append(v)
            r += 1
    return out


def _charpoly_factors(mat: Matrix) -> list:
    """Distinct monic irreducible factors of the characteristic polynomial (low degree first)."""
    import sympy

    F = mat.field
    t = sympy.Symbol("t")
    if F.kind == "Q":
        sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in mat.rows])
        cp = sm.charpoly(t)
        _, facs = sympy.factor_list(cp.as_expr(), t)
    else:
        sm = sympy.Matrix([[int(x) for x in r] for r in mat.rows])
        cp = sympy.Poly(sm.charpoly(t).as_expr(), t, modulus=F.p)
        _, facs = sympy.factor_list(cp.as_expr(), t, modulus=F.p)
    out = []
    for g, _ in facs:
        coeffs = sympy.Poly(g, t).all_coeffs()[::-1]
        lead = coeffs[-1]
        conv = []
        for c in coeffs:
            c = sympy.Rational(c) / sympy.Rational(lead) if F.kind == "Q" else c
            if F.kind == "Q":
                conv.append(F(_to_fraction(c)))
            else:
                conv.append(F(int(c)) / F(int(lead)))
        out.append(conv)
    return out


def _to_fraction(c):
    from fractions import Fraction

    return Fraction(int(c.p), int(c.q))


def _matrix_poly(coeffs, mat: Matrix) -> Matrix:
    n = mat.nrows
    F = mat.field
    acc = Matrix.zeros(n, n, F)
    for c in reversed(coeffs):
        acc = acc @ mat + Matrix.identity(n, F).scale(c)
    return acc


def _fitting_split(m: Representation, f: dict[str, Matrix]):
    vs = [v for v in m.bq.vertices if m.dims[v]]
    big = _block_diag(f, vs)
    facs = _charpoly_factors(big)
    if len(facs) < 2:
        return None
    N = m.total_dim
    g = facs[0]
    ker, img = {}, {}
    for v in m.bq.vertices:
        n = m.dims[v]
        if not n:
            ker[v], img[v] = [], []
            continue
        gv = _matrix_poly(g, f[v])
        p = Matrix.identity(n, m.field)
        for _ in range(N):
            p = p @ gv
        ker[v] = kernel_basis(p).columns()
        rows, piv = _rref_rows(p.T.to_lists(), n)
        img[v] = [list(r) for r in rows[:len(piv)]]
    if not any(ker.values()) or not any(img.values()):
        return None
    return restrict(m, ker), restrict(m, img)


def _random_scalar(F: FieldSpec, rng: random.Random):
    return F(rng.randint(-5, 5)) if F.kind == "Q" else F(rng.randrange(F.p))


def split_once(m: Representation, seed: int = 0, tries: int = 6):
    """A nontrivial decomposition (X, Y) of m, or None."""
    ends = hom(m, m).basis
    rng = random.Random(seed)
    cands = list(ends)
    hb = HomBasis(m, m, ends)
    for _ in range(tries):
        cands.append(hb.combination([_random_scalar(m.field, rng) for _ in ends]))
    for f in cands:
        s = _fitting_split(m, f)
        if s is not None:
            return s
    return None


def residue_field_certificate(m: Representation, ends: list[dict] | None = None, seed: int = 0,
                              max_points: int = 20000) -> bool:
    """True when End(m) is certified local with End/J a field, possibly larger than k.

    Over Q: J is the trace-form radical (characteristic 0), and End/J must be
    generated by one element whose characteristic polynomial on m is a power of
    an irreducible.  Over GF(p): every endomorphism is nilpotent or invertible,
    checked exhaustively when End has at most ``max_points`` elements.
    """
    if m.total_dim == 0:
        return False
    ends = hom(m, m).basis if ends is None else ends
    vs = [v for v in m.bq.vertices if m.dims[v]]
    F = m.field
    n = m.total_dim
    mats = [_block_diag(f, vs) for f in ends]
    if F.kind == "Fp":
        if F.p ** len(mats) > max_points:
            return False
        for coeffs in itertools.product(range(F.p), repeat=len(mats)):
            if not any(coeffs):
                continue
            x = Matrix.zeros(n, n, F)
            for c, b in zip(coeffs, mats):
                if c:
                    x = x + b.scale(F(c))
            if rank(x) == n:
                continue
            p = x
            for _ in range(n):
                p = p @ x
            if not p.is_zero():
                return False
        return True
    flat = [_mat_vec(b) for b in mats]
    gram = Matrix([[_trace(a @ b) for b in mats] for a in mats], F)
    rad = [[sum((c * v[k] for c, v in zip(col, flat)), F.zero) for k in range(n * n)]
           for col in kernel_basis(gram).columns()]
    rng = random.Random(seed)
    for _ in range(4):
        coeffs = [_random_scalar(F, rng) for _ in mats]
        f = Matrix.zeros(n, n, F)
        for c, b in zip(coeffs, mats):
            f = f + b.scale(c)
        if len(_charpoly_factors(f)) != 1:
            return False
        powers = []
        p = Matrix.identity(n, F)
        for _ in range(len(mats)):
            powers.append(_mat_vec(p))
            p = p @ f
        if _span_rank(rad + powers, n * n) == len(mats):
            return True
    return False


def _trace(a: Matrix):
    return sum((a.rows[i][i] for i in range(a.nrows)), a.field.zero)


def _mat_vec(a: Matrix) -> list:
    return [x for r in a.rows for x in r]


def decompose(m: Representation, seed: int = 0) -> list[Representation]:
    """Indecomposable summands with certified local endomorphism rings."""
    out = []
    stack = [m]
    while stack:
        x = stack.pop()
        if x.total_dim == 0:
            continue
        ends = hom(x, x).basis
        if local_certificate(x, ends):
            out.append(x)
            continue
        s = split_once(x, seed)
        if s is None:
            if residue_field_certificate(x, ends, seed):
                out.append(x)
                continue
            raise Inconclusive("no idempotent found and End is not certified local")
        stack.extend(reversed(s))
    return out


def is_indecomposable(m: Representation) -> bool | None:
    """True/False, or None when over this field neither a split nor locality is certified."""
    if m.total_dim == 0:
        return False
    if local_certificate(m):
        return True
    if split_once(m) is not None:
        return False
    if residue_field_certificate(m):
        return True
    return None


def _indec_iso(x: Representation, y: Representation) -> bool:
    if x.dims != y.dims:
        return False
    fs = hom(x, y).basis
    gs = hom(y, x).basis
    for f in fs:
        for g in gs:
            if is_invertible_map(compose_maps(g, f)):
                return True
    return False


def iso_check(m: Representation, n: Representation, seed: int = 0, tries: int = 6) -> bool:
    _check_same(m, n)
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    hb = hom(m, n)
    if hb.dimension == 0:
        return False
    rng = random.Random(seed)
    for k in range(tries):
        coeffs = [_random_scalar(m.field, rng) for _ in hb.basis] if k else [m.field.one] * hb.dimension
        if is_invertible_map(hb.combination(coeffs)):
            return True
    if hom_dim(n, m) != hb.dimension or end_dim(m) != end_dim(n):
        return False
    dm, dn = decompose(m, seed), decompose(n, seed)
    if len(dm) != len(dn):
        return False
    used = [False] * len(dn)
    for x in dm:
        for j, y in enumerate(dn):
            if not used[j] and _indec_iso(x, y):
                used[j] = True
                break
        else:
            return False
    return True


def is_periodic(m: Representation, bound: int) -> int | None:
    if bound < 1:
        raise ValueError("bound must be positive")
    x = m
    for k in range(1, bound + 1):
        x = tau(x)
        if x.total_dim == 0:
            return None
        if iso_check(x, m):
            return k
    return None


# random valid representations


def solved_arrow_system(stub: Representation, solved) -> tuple[list[list], dict, int]:
    """Linear equations on the arrows in ``solved`` (those ending at relation targets), other arrows fixed."""
    bq, dims, F = stub.bq, stub.dims, stub.field
    offs = {}
    k = 0
    for a in solved:
        offs[a.name] = k
        k += dims[a.target] * dims[a.source]
    rows = []
    for rel in bq.relations:
        t, s = rel.target, rel.source
        block = [[[F.zero] * k for _ in range(dims[s])] for _ in range(dims[t])]
        for coef, p in rel.terms:
            first = bq.quiver.arrow[p.arrows[0]]
            R = stub.path_matrix(p.arrows[1:])
            zc = dims[first.source]
            o = offs[first.name]
            for i in range(dims[t]):
                for v in range(zc):
                    for j in range(dims[s]):
                        if R.rows[v][j]:
                            block[i][j][o + i * zc + v] += coef * R.rows[v][j]
        for i in range(dims[t]):
            rows.extend(block[i])
    return rows, offs, k


def random_representation(bq: BoundQuiver, dims, rng: random.Random, density: float = 1.0,
                          scalar_range: int = 3) -> Representation:
    """A random point of rep(d).

    Arrows ending at a relation target are solved for: each relation is
    linear in them once the other arrows are fixed.  A random element of
    the solution space is chosen.
    """
    dims = dimvec(bq, dims)
    F = bq.field

    def scalar():
        if rng.random() >= density:
            return F.zero
        return F(rng.randint(-scalar_range, scalar_range)) if F.kind == "Q" else F(rng.randrange(F.p))

    targets = {r.target for r in bq.relations}
    free = [a for a in bq.arrows if a.target not in targets]
    solved = [a for a in bq.arrows if a.target in targets]
    mats = {a.name: Matrix([[scalar() for _ in range(dims[a.source])] for _ in range(dims[a.target])], F,
                           dims[a.target], dims[a.source]) for a in free}
    if not solved:
        return Representation(bq, dims, mats)
    for rel in bq.relations:
        for _, p in rel.terms:
            if sum(1 for x in p.arrows if bq.quiver.arrow[x].target in targets) != 1 or \
                    bq.quiver.arrow[p.arrows[0]].target not in targets:
                raise RepError("relations are not linear in the arrows into relation targets")
    stub = Representation(bq, dims, {**mats, **{a.name: Matrix.zeros(dims[a.target], dims[a.source], F)
                                                for a in solved}})
    rows, offs, k = solved_arrow_system(stub, solved)
    ker = kernel_basis(Matrix._raw(rows, F, len(rows), k)).columns() if rows else \
        [[F.one if i == j else F.zero for i in range(k)] for j in range(k)]
    vec = [F.zero] * k
    for b in ker:
        c = scalar()
        if c:
            vec = [x + c * y for x, y in zip(vec, b)]
    for a in solved:
        r, c = dims[a.target], dims[a.source]
        o = offs[a.name]
        mats[a.name] = Matrix._raw([vec[o + i * c:o + (i + 1) * c] for i in range(r)], F, r, c)
    rep = Representation(bq, dims, mats)
    assert rep.validate()
    return rep


def act(m: Representation, g: dict[str, Matrix]) -> Representation:
    """g . M with (g.M)(a) = g_t M(a) g_s^{-1}."""
    from .linalg import inverse

    inv = {v: inverse(g[v]) if m.dims[v] else g[v] for v in m.bq.vertices}
    mats = {}
    for a in m.bq.arrows:
        mats[a.name] = g[a.target] @ m.mats[a.name] @ inv[a.source]
    return Representation(m.bq, m.dims, mats)


def random_gl(bq: BoundQuiver, dims, rng: random.Random) -> dict[str, Matrix]:
    dims = dimvec(bq, dims)
    F = bq.field
    out = {}
    for v in bq.vertices:
        n = dims[v]
        while True:
            g = Matrix([[_random_scalar(F, rng) for _ in range(n)] for _ in range(n)], F, n, n)
            if n == 0 or det(g):
                break
        out[v] = g
    return out
