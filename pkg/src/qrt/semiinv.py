"""Determinantal semi-invariants c^V(M) = det Hom(f, M) and their differentials."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import Matrix, block_matrix, det, interpolate
from .quiver import BoundQuiver
from .rep import (ProjectivePresentation, RepError, Representation, act, dimvec, hom_dim, minimal_presentation,
                  random_representation)
from .tubes import FamilyError, SeparatingFamily, TubeModuleId


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class Weight:
    values: tuple[tuple[str, int], ...]

    def __call__(self, d: dict) -> int:
        return sum(c * d[v] for v, c in self.values)

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)

    @classmethod
    def from_dict(cls, bq: BoundQuiver, w: dict) -> "Weight":
        return cls(tuple((v, int(w.get(v, 0))) for v in bq.vertices))


def weight_from_presentation(bq: BoundQuiver, pres: ProjectivePresentation) -> Weight:
    w = {v: 0 for v in bq.vertices}
    for y in pres.y:
        w[y] += 1
    for x in pres.x:
        w[x] -= 1
    return Weight.from_dict(bq, w)


def weight_of(v: Representation) -> Weight:
    return weight_from_presentation(v.bq, minimal_presentation(v))


def minus_euler_weight(form, d) -> Weight:
    """-<d, ->, the weight of c^V when pd V <= 1."""
    bq = form.bq
    vs = bq.vertices
    out = {}
    for x in vs:
        e = {v: int(v == x) for v in vs}
        out[x] = -form.bilinear(d, e)
    return Weight.from_dict(bq, out)


@dataclass
class SemiInvariant:
    v: Representation
    pres: ProjectivePresentation
    weight: Weight
    d: dict[str, int]

    def matrix(self, m: Representation) -> Matrix:
        if m.dims != self.d:
            raise RepError("dimension vector mismatch")
        return self.pres.hom_matrix(m)

    def __call__(self, m: Representation):
        return evaluate(self, m)


def semi_invariant(v: Representation, d, pres: ProjectivePresentation | None = None) -> SemiInvariant:
    d = dimvec(v.bq, d)
    pres = pres or minimal_presentation(v)
    w = weight_from_presentation(v.bq, pres)
    if w(d) != 0:
        raise WeightError(f"weight {w.as_dict()} does not vanish at d")
    return SemiInvariant(v, pres, w, d)


def evaluate(c: SemiInvariant, m: Representation):
    h = c.matrix(m)
    if h.nrows == 0:
        return m.field.one
    return det(h)


def chi(weight: Weight, g: dict[str, Matrix]):
    out = None
    for v, e in weight.values:
        if g[v].nrows == 0 or e == 0:
            continue
        x = det(g[v]) ** e
        out = x if out is None else out * x
    return out if out is not None else next(iter(g.values())).field.one


def transformation_check(c: SemiInvariant, m: Representation, g: dict[str, Matrix]) -> bool:
    for v, x in g.items():
        if x.nrows and not det(x):
            raise RepError("g is not invertible")
    return evaluate(c, act(m, g)) == chi(c.weight, g) * evaluate(c, m)


def shifted(m: Representation, z: dict[str, Matrix], t) -> Representation:
    """M + t Z as arrow matrices (not necessarily a representation)."""
    mats = {a: m.mats[a] + z[a].scale(t) for a in m.mats}
    r = Representation.__new__(Representation)
    r.bq, r.dims, r.mats, r._path_cache = m.bq, m.dims, mats, {}
    return r


def _first_order_matrix(c: SemiInvariant, m: Representation, z: dict[str, Matrix]) -> Matrix:
    """d/dt H(M + tZ) at t = 0."""
    pres = c.pres
    bq = m.bq
    F = m.field
    blocks = []
    for j, yj in enumerate(pres.y):
        row = []
        for i, xi in enumerate(pres.x):
            out = Matrix.zeros(m.dims[yj], m.dims[xi], F)
            for p, coef in pres.omega_paths(i, j).items():
                ar = p.arrows
                for pos, name in enumerate(ar):
                    al = bq.quiver.arrow[name]
                    left = m.path_matrix(ar[:pos]) if pos else Matrix.identity(m.dims[yj], F)
                    right = m.path_matrix(ar[pos + 1:]) if pos + 1 < len(ar) else Matrix.identity(m.dims[xi], F)
                    out = out + (left @ z[name] @ right).scale(coef)
                del al
            row.append(out)
        blocks.append(row)
    return block_matrix(blocks, [m.dims[y] for y in pres.y], [m.dims[x] for x in pres.x], F)


def differential_columns(c: SemiInvariant, m: Representation, z: dict[str, Matrix]):
    """Exact derivative via det(H with column k replaced by H'), summed over k."""
    h = c.matrix(m)
    hp = _first_order_matrix(c, m, z)
    n = h.nrows
    F = m.field
    total = F.zero
    for k in range(n):
        rows = [list(r) for r in h.rows]
        for i in range(n):
            rows[i][k] = hp.rows[i][k]
        total = total + det(Matrix._raw(rows, F, n, n))
    return total


def differential(c: SemiInvariant, m: Representation, z: dict[str, Matrix]):
    """Coefficient of t in det H(M + tZ), by interpolation when the field is large enough."""
    n = c.matrix(m).nrows
    F = m.field
    if n == 0:
        return F.zero
    longest = max((len(p.arrows) for i in range(len(c.pres.x)) for j in range(len(c.pres.y))
                   for p in c.pres.omega_paths(i, j)), default=1)
    degree = n * longest
    if F.size is not None and degree + 1 > F.size:
        return differential_columns(c, m, z)
    pts = []
    for k in range(degree + 1):
        t = F(k)
        pts.append((t, det(c.pres.hom_matrix(shifted(m, z, t)))))
    return interpolate(pts, F).coefficient(1)


# distinguished semi-invariants


@dataclass
class Distinguished:
    lam: str
    i: int
    n: int
    c: SemiInvariant


def distinguished(fam: SeparatingFamily, d, homogeneous: list[str] | None = None,
                  homogeneous_count: int = 3) -> dict[str, list[Distinguished]]:
    """c_{lam,i} for i in A_lam(d), keyed by point, for special points and homogeneous samples."""
    d = dimvec(fam.bq, d)
    td = fam.decompose_vector(d)
    if td is None or td.p == 0:
        raise FamilyError("need d in the regular cone with p > 0")
    if homogeneous is None:
        homogeneous = fam.homogeneous_points(homogeneous_count)
    out: dict[str, list[Distinguished]] = {}
    for lam in list(fam.special_points) + list(homogeneous):
        out[lam] = distinguished_at(fam, d, lam, td)
    return out


def distinguished_at(fam: SeparatingFamily, d, lam: str, td=None) -> list[Distinguished]:
    d = dimvec(fam.bq, d)
    td = td or fam.decompose_vector(d)
    if td is None or td.p == 0:
        raise FamilyError("need d in the regular cone with p > 0")
    r = fam.rank(lam)
    entries = []
    for i in range(r):
        if td.coordinate(lam, i) != 0:
            continue
        n = 1
        while td.coordinate(lam, i - n) != 0:
            n += 1
        v = fam.tube_module(TubeModuleId(lam, i, n))
        c = semi_invariant(v, d)
        entries.append(Distinguished(lam, i, n, c))
    return entries


def c_lambda(entries: list[Distinguished], m: Representation):
    out = m.field.one
    for e in entries:
        out = out * evaluate(e.c, m)
    return out


def ratio_constant(pairs: list[tuple]) -> tuple[bool, object]:
    """Whether b = s * a for one nonzero s across all (a, b) pairs."""
    s = None
    for a, b in pairs:
        if not a and not b:
            continue
        if not a or not b:
            return False, None
        r = b / a
        if s is None:
            s = r
        elif r != s:
            return False, None
    return True, s


def mult_check_extension(v1: Representation, v: Representation, v2: Representation, d, samples: list[Representation],
                         maps: tuple[dict, dict] | None = None) -> bool:
    """c^V = s * c^{V1} c^{V2} on every sample, for one nonzero s."""
    from .rep import compose_maps
    from .linalg import rank as mrank

    if any(v.dims[x] != v1.dims[x] + v2.dims[x] for x in v.dims):
        raise RepError("dimension vectors do not add up")
    if maps is not None:
        i, p = maps
        for f, a, b in ((i, v1, v), (p, v, v2)):
            for al in v.bq.arrows:
                if not (b.mats[al.name] @ f[al.source] == f[al.target] @ a.mats[al.name]):
                    raise RepError("given maps are not homomorphisms")
        comp = compose_maps(p, i)
        for x in v.dims:
            if not comp[x].is_zero() or (v1.dims[x] and mrank(i[x]) != v1.dims[x]) or \
                    (v2.dims[x] and mrank(p[x]) != v2.dims[x]):
                raise RepError("sequence is not exact")
    c, c1, c2 = semi_invariant(v, d), semi_invariant(v1, d), semi_invariant(v2, d)
    pairs = [(evaluate(c1, m) * evaluate(c2, m), evaluate(c, m)) for m in samples]
    ok, _ = ratio_constant(pairs)
    return ok


def vanishing_consistent(c: SemiInvariant, m: Representation) -> bool:
    return (evaluate(c, m) == 0) == (hom_dim(c.v, m) > 0)


def random_points(bq: BoundQuiver, d, count: int, seed: int, density: float = 1.0) -> list[Representation]:
    rng = random.Random(seed)
    return [random_representation(bq, d, rng, density=density) for _ in range(count)]
