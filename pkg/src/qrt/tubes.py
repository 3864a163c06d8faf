"""Tubes of the standard separating family for the catalog algebras.

Points of the projective line are labelled ``x1, x2, ...`` for the points
where an arm vanishes (arm j at ``x<j>``) and by scalar text for homogeneous
points; the Kronecker family also has the homogeneous point ``inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exactfield import FieldError, FieldSpec, parse_scalar, render_scalar
from .forms import TitsForm
from .linalg import Matrix, det, inverse, kernel_basis, solve
from .quiver import BoundQuiver, arm_arrow, arm_path, arm_vertex
from .rep import (Representation, _single_eigenvalue, decompose, ext1_cocycles, extension_middle, hom_dim,
                  is_periodic, iso_check, tau)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class TubeModuleId:
    lam: str
    i: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise FamilyError("tube module length must be positive")

    def to_json(self) -> dict:
        return {"lambda": self.lam, "i": self.i, "n": self.n}

    @classmethod
    def from_json(cls, obj: dict) -> "TubeModuleId":
        return cls(str(obj["lambda"]), int(obj["i"]), int(obj["n"]))


@dataclass
class TubeDecomposition:
    """d = p h + sum p[lam][i] e_{lam, i} with a zero in every list."""

    d: dict[str, int]
    p: int
    coords: dict[str, list[int]]

    def coordinate(self, lam: str, i: int) -> int:
        c = self.coords.get(lam)
        if c is None:
            return 0
        return c[i % len(c)]

    def to_json(self) -> dict:
        return {"p": self.p, "coords": {k: list(v) for k, v in self.coords.items()}}


def composition_counts(r: int, i: int, n: int) -> list[int]:
    """q-coordinates of R_{lam,i}^{(n)} in a tube of rank r."""
    q = [0] * r
    for k in range(n):
        q[(i - k) % r] += 1
    return q


class SeparatingFamily:
    """Standard central family of a Kronecker or canonical bound quiver."""

    def __init__(self, bq: BoundQuiver, h: dict[str, int], ranks: dict[str, int], kind: str,
                 weights: list[int] | None = None, lambdas: list | None = None, validate: bool = True):
        self.bq = bq
        self.field: FieldSpec = bq.field
        self.h = dict(h)
        self.kind = kind
        self.weights = list(weights or [])
        self.lambdas = list(lambdas or [])
        self.ranks = dict(ranks)
        self.form = TitsForm(bq)
        self._simples: dict[str, list[Representation]] = {}
        self._tube_cache: dict[TubeModuleId, Representation] = {}
        if validate:
            for lam in self.ranks:
                self.regular_simples(lam)

    # points

    @property
    def exceptional(self) -> list[str]:
        return [lam for lam, r in self.ranks.items() if r > 1]

    @property
    def special_points(self) -> list[str]:
        return list(self.ranks)

    def tube_type(self) -> list[int]:
        return [self.ranks[lam] for lam in self.exceptional]

    def rank(self, lam: str) -> int:
        if lam in self.ranks:
            return self.ranks[lam]
        self.point_value(lam)
        return 1

    def special_values(self) -> dict[str, object]:
        """Scalar (or 'inf') of each special point."""
        if self.kind == "kronecker":
            return {}
        F = self.field
        out = {"x1": "inf", "x2": F.zero}
        for j, lam in enumerate([F.one] + [F(x) for x in self.lambdas]):
            out[f"x{j + 3}"] = -F.one / lam
        return {k: v for k, v in out.items() if k in self.ranks}

    def point_value(self, lam: str):
        """Field scalar (or 'inf') of a homogeneous point label; rejects special points."""
        if lam in self.ranks:
            raise FamilyError(f"{lam} is not a homogeneous point")
        if lam == "inf":
            if self.kind == "kronecker":
                return "inf"
            raise FamilyError("inf is a special point of this family")
        try:
            mu = parse_scalar(lam, self.field)
        except FieldError as e:
            raise FamilyError(str(e)) from None
        if self.kind != "kronecker" and any(v != "inf" and v == mu for v in self.special_values().values()):
            raise FamilyError(f"{lam} is a special point of this family")
        return mu

    def homogeneous_points(self, count: int, start: int = 2) -> list[str]:
        """Labels of ``count`` homogeneous points among start, start+1, ... (fewer if the field runs out)."""
        out = []
        span = self.field.p if self.field.size else 1000
        for k in range(start, start + span):
            label = render_scalar(self.field(k))
            if len(out) == count:
                break
            if label not in out and self.is_homogeneous(label):
                out.append(label)
        return out

    def is_homogeneous(self, lam: str) -> bool:
        try:
            self.point_value(lam)
            return True
        except FamilyError:
            return False

    # regular simples

    def _arm_values(self, s, t) -> list:
        """Arm composites at the point (s : t) of the projective line."""
        F = self.field
        vals = [s, t]
        for lam in [F.one] + [F(x) for x in self.lambdas]:
            vals.append(-(s + lam * t))
        return vals[:len(self.weights)]

    def _canonical_rep(self, values, skip_arm: int | None = None) -> Representation:
        bq = self.bq
        F = self.field
        dims = {v: 1 for v in bq.vertices}
        if skip_arm is not None:
            for k in range(1, self.weights[skip_arm]):
                dims[arm_vertex(skip_arm, k, self.weights[skip_arm])] = 0
        mats = {}
        for j, p in enumerate(self.weights):
            for k in range(1, p + 1):
                a = bq.quiver.arrow[arm_arrow(j, k)]
                shape = (dims[a.target], dims[a.source])
                val = values[j] if k == p else F.one
                mats[a.name] = Matrix([[val]], F) if shape == (1, 1) else Matrix.zeros(*shape, F)
        return Representation(bq, dims, mats)

    def homogeneous(self, lam: str) -> Representation:
        mu = self.point_value(lam)
        F = self.field
        if self.kind == "kronecker":
            a, b = (F.zero, F.one) if mu == "inf" else (F.one, mu)
            return Representation(self.bq, {"1": 1, "2": 1}, {"a": [[a]], "b": [[b]]})
        return self._canonical_rep(self._arm_values(F.one, mu))

    def _exceptional_top(self, lam: str) -> Representation:
        F = self.field
        j = int(lam[1:]) - 1
        val = self.special_values()[lam]
        s, t = (F.zero, F.one) if val == "inf" else (F.one, val)
        return self._canonical_rep(self._arm_values(s, t), skip_arm=j)

    def _vertex_simples(self, lam: str) -> list[Representation]:
        from .rep import simple

        j = int(lam[1:]) - 1
        p = self.weights[j]
        return [simple(self.bq, arm_vertex(j, k, p)) for k in range(1, p)]

    def regular_simples(self, lam: str) -> list[Representation]:
        """[R_{lam,0}, ..., R_{lam,r-1}] with tau R_{lam,i} = R_{lam,i-1}."""
        if lam in self._simples:
            return self._simples[lam]
        if lam not in self.ranks:
            out = [self.homogeneous(lam)]
            self._simples[lam] = out
            return out
        r = self.ranks[lam]
        top = self._exceptional_top(lam)
        pool = self._vertex_simples(lam)
        out = [None] * r
        out[0] = top
        cur = top
        for k in range(1, r):
            cur = tau(cur)
            match = [s for s in pool if iso_check(s, cur)]
            if len(match) != 1:
                raise FamilyError(f"tau orbit of the top at {lam} leaves the expected simples")
            out[(-k) % r] = match[0]
        if not iso_check(tau(cur), top):
            raise FamilyError(f"tau-period at {lam} is not {r}")
        self._simples[lam] = out
        return out

    def regular_simple(self, lam: str, i: int) -> Representation:
        s = self.regular_simples(lam)
        return s[i % len(s)]

    def e(self, lam: str, i: int, n: int = 1) -> dict[str, int]:
        r = self.rank(lam)
        out = {v: 0 for v in self.bq.vertices}
        for k in range(n):
            x = self.regular_simple(lam, (i - k) % r)
            for v in out:
                out[v] += x.dims[v]
        return out

    # tube modules

    def tube_module(self, tid: TubeModuleId) -> Representation:
        r = self.rank(tid.lam)
        key = TubeModuleId(tid.lam, tid.i % r, tid.n)
        if key in self._tube_cache:
            return self._tube_cache[key]
        if key.n == 1:
            mod = self.regular_simple(key.lam, key.i)
        else:
            c = self.tube_module(TubeModuleId(key.lam, key.i, key.n - 1))
            a = self.regular_simple(key.lam, key.i - key.n + 1)
            data = ext1_cocycles(c, a)
            if data.dimension == 0:
                raise FamilyError("Ext^1 vanished inside a tube")
            mod = extension_middle(a, c, data.classes[0])
        self._tube_cache[key] = mod
        return mod

    def decompose_vector(self, d) -> TubeDecomposition | None:
        from .rep import dimvec

        d = dimvec(self.bq, d)
        vs = self.bq.vertices
        cols = [[self.h[v] for v in vs]]
        labels = [None]
        for lam in self.exceptional:
            for i in range(self.ranks[lam]):
                e = self.e(lam, i)
                cols.append([e[v] for v in vs])
                labels.append((lam, i))
        from .exactfield import QQ

        a = Matrix.from_columns(cols, len(vs), QQ)
        sol = solve(a, Matrix.from_columns([[d[v] for v in vs]], len(vs), QQ))
        if sol is None:
            return None
        if kernel_basis(a).ncols != len(self.exceptional):
            raise FamilyError("tube vectors are not independent up to the gauge")
        x = [sol.rows[k][0] for k in range(len(cols))]
        p = x[0]
        coords: dict[str, list] = {}
        k = 1
        for lam in self.exceptional:
            r = self.ranks[lam]
            vals = x[k:k + r]
            m = min(vals)
            coords[lam] = [v - m for v in vals]
            p += m
            k += r
        allv = [p] + [v for c in coords.values() for v in c]
        if any(Fraction(v).denominator != 1 or v < 0 for v in allv):
            return None
        return TubeDecomposition(d, int(p), {lam: [int(v) for v in c] for lam, c in coords.items()})

    def in_R(self, d) -> bool:
        return self.decompose_vector(d) is not None

    def hom_formula(self, a: TubeModuleId, b: TubeModuleId) -> int:
        if a.lam != b.lam:
            return 0
        r = self.rank(a.lam)
        q_target = composition_counts(r, b.i, b.n)
        q_source = composition_counts(r, a.i, a.n)
        return min(q_target[a.i % r], q_source[(b.i - b.n + 1) % r])

    def euler_tube_formula(self, tid: TubeModuleId, d) -> tuple[int, int]:
        td = self.decompose_vector(d)
        if td is None:
            raise FamilyError("d is not in the regular cone")
        i, n = tid.i, tid.n
        left = td.coordinate(tid.lam, i) - td.coordinate(tid.lam, i - n)
        right = td.coordinate(tid.lam, i - n + 1) - td.coordinate(tid.lam, i + 1)
        return left, right

    def defect(self, d) -> int:
        return self.form.bilinear(self.h, d)

    def period_bound(self) -> int:
        return 2 * lcm(*(self.ranks.values() or [1]), 1)

    def samples(self, homogeneous: int = 3) -> list[Representation]:
        out = [s for lam in self.special_points for s in self.regular_simples(lam)]
        out += [self.homogeneous(lam) for lam in self.homogeneous_points(homogeneous)]
        return out

    def trichotomy(self, m: Representation, check_indecomposable: bool = True) -> dict:
        """Classify an indecomposable as P, R or Q with Hom-vanishing evidence."""
        if check_indecomposable and len(decompose(m)) != 1:
            raise FamilyError("trichotomy needs an indecomposable")
        per = is_periodic(m, self.period_bound())
        dfc = self.defect(m.dims)
        if per is not None:
            return {"class": "R", "period": per, "defect": dfc, "evidence": []}
        if dfc == 0:
            raise FamilyError("defect zero but not periodic")
        cls = "P" if dfc < 0 else "Q"
        evidence = []
        for s in self.samples():
            hd = hom_dim(s, m) if cls == "P" else hom_dim(m, s)
            evidence.append(hd)
            if hd:
                raise FamilyError("Hom-vanishing evidence contradicts the defect sign")
        return {"class": cls, "period": None, "defect": dfc, "evidence": evidence}

    # pencil used to locate homogeneous points

    def _pencil(self, m: Representation) -> tuple[Matrix, Matrix]:
        if self.kind == "kronecker":
            return m.mats["a"], m.mats["b"]
        return (m.path_matrix(arm_path(0, self.weights[0])), m.path_matrix(arm_path(1, self.weights[1])))

    def locate(self, m: Representation) -> TubeModuleId | None:
        """Identify an indecomposable tube module, or None."""
        d = m.dims
        for lam in self.exceptional:
            r = self.ranks[lam]
            for i in range(r):
                n = 1
                while True:
                    e = self.e(lam, i, n)
                    if any(e[v] > d[v] for v in d):
                        break
                    if e == d and iso_check(self.tube_module(TubeModuleId(lam, i, n)), m):
                        return TubeModuleId(lam, i, n)
                    n += 1
        hsum = sum(self.h.values())
        tot = m.total_dim
        if tot % hsum:
            return None
        n = tot // hsum
        if any(d[v] != n * self.h[v] for v in d):
            return None
        A, B = self._pencil(m)
        cand = []
        if A.nrows == A.ncols and det(A):
            mu = _single_eigenvalue(inverse(A) @ B)
            if mu is not None:
                cand.append(render_scalar(mu))
        elif self.kind == "kronecker":
            cand.append("inf")
        for lam in self.special_points:
            if self.ranks[lam] == 1:
                cand.append(lam)
        for lam in cand:
            if lam in self.ranks or self.is_homogeneous(lam):
                tid = TubeModuleId(lam, 0, n)
                if iso_check(self.tube_module(tid), m):
                    return tid
        return None

    def s_equivalence_class(self, m: Representation) -> dict[str, list[int]]:
        table: dict[str, list[int]] = {}
        for x in decompose(m):
            tid = self.locate(x)
            if tid is None:
                raise FamilyError("summand is not a recognised tube module")
            r = self.rank(tid.lam)
            q = composition_counts(r, tid.i, tid.n)
            cur = table.setdefault(tid.lam, [0] * r)
            table[tid.lam] = [u + v for u, v in zip(cur, q)]
        return dict(sorted(table.items()))


def kronecker_family(bq: BoundQuiver) -> SeparatingFamily:
    return SeparatingFamily(bq, {"1": 1, "2": 1}, {}, "kronecker")


def canonical_family(bq: BoundQuiver, weights, lambdas, validate: bool = True) -> SeparatingFamily:
    ranks = {f"x{j + 1}": p for j, p in enumerate(weights)}
    h = {v: 1 for v in bq.vertices}
    return SeparatingFamily(bq, h, ranks, "canonical", weights, lambdas, validate=validate)
