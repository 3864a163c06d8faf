"""Quivers, paths, relations and the morphism spaces of bound quivers.

Paths follow the composition convention ``[a_1, ..., a_n]`` with ``a_n``
applied first, i.e. ``s(a_i) == t(a_{i+1})``.  The ideal generated by the
relations is never built globally; each space ``k(x, y)`` is reduced on its
own, which is enough because the quivers are acyclic.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .exactfield import FieldSpec, parse_scalar, render_scalar
from .linalg import _rref_rows

_NAME_RE = re.compile(r"^[!-~]+$")


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True, order=True)
class Path:
    """A path; ``arrows`` empty means the trivial path at ``source``."""

    arrows: tuple[str, ...]
    source: str
    target: str

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"1_{self.source}"


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[object, Path], ...]

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices: list[str] = list(vertices)
        self.arrows: list[Arrow] = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        for n in self.vertices + names:
            if not isinstance(n, str) or not _NAME_RE.match(n):
                raise QuiverError(f"bad name {n!r}")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} has an undeclared endpoint")
        self.arrow = {a.name: a for a in self.arrows}
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.topological_order()

    def topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        if len(order) != len(self.vertices):
            raise QuiverError("quiver has an oriented cycle")
        return order

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def path(self, arrows, vertex: str | None = None) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            if vertex is None or vertex not in self.index:
                raise QuiverError("trivial path needs a vertex")
            return Path((), vertex, vertex)
        for name in arrows:
            if name not in self.arrow:
                raise QuiverError(f"unknown arrow {name!r}")
        for a, b in zip(arrows, arrows[1:]):
            if self.arrow[a].source != self.arrow[b].target:
                raise QuiverError(f"arrows {a}, {b} do not compose")
        return Path(arrows, self.arrow[arrows[-1]].source, self.arrow[arrows[0]].target)

    def all_paths(self, x: str, y: str) -> list[Path]:
        for v in (x, y):
            if v not in self.index:
                raise QuiverError(f"unknown vertex {v!r}")
        out: list[Path] = []

        def extend(cur: tuple[str, ...], at: str):
            if at == y:
                out.append(Path(cur, x, y))
            for a in self.out_arrows(at):
                extend((a.name,) + cur, a.target)

        extend((), x)
        return sorted(out, key=lambda p: p.arrows)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows]}


def compose(p: Path, q: Path) -> Path:
    """The path ``p * q`` (q first).  Requires t(q) == s(p)."""
    if q.target != p.source:
        raise QuiverError(f"cannot compose {p} after {q}")
    return Path(p.arrows + q.arrows, q.source, p.target)


@dataclass
class MorphismSpace:
    """Basis of k(x, y) modulo the relation ideal.

    ``basis`` lists the standard paths whose residues form a basis; ``reduce``
    expresses any combination of paths x -> y in that basis.
    """

    source: str
    target: str
    paths: list[Path]
    basis: list[Path]
    ideal_dim: int
    _rows: list = dc_field(repr=False)
    _order: list[int] = dc_field(repr=False)
    _pivots: list[int] = dc_field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def _path_index(self) -> dict[Path, int]:
        return {p: i for i, p in enumerate(self.paths)}

    @cached_property
    def _basis_index(self) -> dict[Path, int]:
        return {p: i for i, p in enumerate(self.basis)}

    def reduce(self, combo: dict[Path, object], field: FieldSpec) -> list:
        """Coordinates of sum(c * path) in ``basis``."""
        z = field.zero
        vec = [z] * len(self.paths)
        for p, c in combo.items():
            vec[self._order_pos[self._path_index[p]]] += c
        for r, pc in zip(self._rows, self._pivots):
            f = vec[pc]
            if f:
                vec = [v - f * x for v, x in zip(vec, r)]
        return [vec[self._order_pos[self._path_index[b]]] for b in self.basis]

    @cached_property
    def _order_pos(self) -> dict[int, int]:
        return {pi: k for k, pi in enumerate(self._order)}


class BoundQuiver:
    def __init__(self, quiver: Quiver, relations, field: FieldSpec, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.name = name
        rels = []
        for rel in relations:
            if isinstance(rel, Relation):
                terms = rel.terms
            else:
                terms = tuple((field(c), quiver.path(p) if not isinstance(p, Path) else p) for c, p in rel)
            terms = tuple((field(c), p) for c, p in terms if field(c))
            if not terms:
                raise QuiverError("a relation needs at least one nonzero term")
            s, t = terms[0][1].source, terms[0][1].target
            for _, p in terms:
                if len(p) < 2:
                    raise QuiverError("relation paths must have length at least 2")
                if (p.source, p.target) != (s, t):
                    raise QuiverError("relation terms must share endpoints")
                quiver.path(p.arrows)
            rels.append(Relation(terms))
        self.relations: list[Relation] = rels
        self._spaces: dict[tuple[str, str], MorphismSpace] = {}
        self._products: dict = {}

    @property
    def vertices(self) -> list[str]:
        return self.quiver.vertices

    @property
    def arrows(self) -> list[Arrow]:
        return self.quiver.arrows

    def _ideal_vectors(self, x: str, y: str, paths: list[Path], relations) -> list[list]:
        index = {p: i for i, p in enumerate(paths)}
        z = self.field.zero
        vecs = []
        for rel in relations:
            for q in self.quiver.all_paths(x, rel.source):
                for p in self.quiver.all_paths(rel.target, y):
                    v = [z] * len(paths)
                    for c, r in rel.terms:
                        v[index[compose(p, compose(r, q))]] += c
                    vecs.append(v)
        return vecs

    def morphism_space(self, x: str, y: str) -> MorphismSpace:
        key = (x, y)
        if key in self._spaces:
            return self._spaces[key]
        paths = self.quiver.all_paths(x, y)
        # Reverse lexicographic column order pushes lexicographically small
        # paths to the non-pivot (basis) side.
        order = list(range(len(paths)))[::-1]
        vecs = self._ideal_vectors(x, y, paths, self.relations)
        reordered = [[v[i] for i in order] for v in vecs]
        rows, pivots = _rref_rows(reordered, len(paths))
        rows = rows[:len(pivots)]
        pivot_paths = {order[c] for c in pivots}
        basis = [p for i, p in enumerate(paths) if i not in pivot_paths]
        space = MorphismSpace(x, y, paths, basis, len(pivots), rows, order, pivots)
        self._spaces[key] = space
        return space

    def ideal_dimension(self, x: str, y: str, relations=None) -> int:
        rels = self.relations if relations is None else relations
        paths = self.quiver.all_paths(x, y)
        vecs = self._ideal_vectors(x, y, paths, rels)
        return len(_rref_rows(vecs, len(paths))[1]) if vecs else 0

    def multiply(self, w: Path, u: Path) -> list:
        """Coordinates of the residue of ``w * u`` (u first) in the basis of k(s u, t w)."""
        key = (w, u)
        if key not in self._products:
            space = self.morphism_space(u.source, w.target)
            self._products[key] = space.reduce({compose(w, u): self.field.one}, self.field)
        return self._products[key]

    def check_minimal(self) -> bool:
        pairs = [(x, y) for x in self.vertices for y in self.vertices]
        full = {xy: self.ideal_dimension(*xy) for xy in pairs}
        for k in range(len(self.relations)):
            rest = self.relations[:k] + self.relations[k + 1:]
            if all(self.ideal_dimension(x, y, rest) == full[(x, y)] for x, y in pairs):
                return False
        return True

    def opposite(self) -> "BoundQuiver":
        """The opposite bound quiver; cached so that taking it twice returns ``self``."""
        if getattr(self, "_op", None) is not None:
            return self._op
        q = Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])
        rels = [Relation(tuple((c, Path(p.arrows[::-1], p.target, p.source)) for c, p in r.terms))
                for r in self.relations]
        op = BoundQuiver(q, rels, self.field, name=(self.name + "^op") if self.name else "")
        op._op = self
        self._op = op
        return op

    def to_json(self) -> dict:
        out = {"field": self.field.to_json()}
        out.update(self.quiver.to_json())
        out["relations"] = [{"terms": [{"coeff": render_scalar(c), "path": list(p.arrows)} for c, p in r.terms]}
                            for r in self.relations]
        return out

    @classmethod
    def from_json(cls, obj: dict, name: str = "") -> "BoundQuiver":
        field = FieldSpec.from_json(obj["field"])
        q = Quiver(obj["vertices"], [Arrow(a["name"], a["from"], a["to"]) for a in obj["arrows"]])
        rels = []
        for r in obj.get("relations", []):
            rels.append([(parse_scalar(str(t["coeff"]), field), q.path(t["path"])) for t in r["terms"]])
        return cls(q, rels, field, name=name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def same_as(self, other: "BoundQuiver") -> bool:
        return self.to_json() == other.to_json()

    def __repr__(self):
        return f"BoundQuiver({self.name or '?'}, {len(self.vertices)} vertices, {len(self.arrows)} arrows, " \
               f"{len(self.relations)} relations over {self.field})"


ARM_LETTERS = "abcdefgh"


def arm_vertex(j: int, k: int, length: int) -> str:
    """Name of the k-th interior vertex (counted from the sink) of arm j."""
    letter = ARM_LETTERS[j].upper()
    return letter if length == 2 else f"{letter}{k}"


def arm_arrow(j: int, k: int) -> str:
    return f"{ARM_LETTERS[j]}{k}"


def arm_path(j: int, length: int) -> tuple[str, ...]:
    """Arrow names of arm j from source to sink, in composition order."""
    return tuple(arm_arrow(j, k) for k in range(1, length + 1))


def kronecker(field: FieldSpec) -> BoundQuiver:
    q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "1", "2")])
    return BoundQuiver(q, [], field, name="Kronecker")


def canonical(weights, lambdas, field: FieldSpec, strict: bool = True) -> BoundQuiver:
    """Canonical bound quiver with arms of the given lengths.

    Vertices are ``sink``, the arm vertices and ``source``; arm j is the path
    ``x1 * x2 * ... * x_p`` where x is the j-th arm letter.  For t >= 3 arms the
    relations are ``arm_1 + lam_i * arm_2 + arm_i`` for i >= 3 with lam_3 = 1
    and ``lambdas`` giving lam_4, ..., lam_t.  Arm j then vanishes on the
    homogeneous point -1/lam_j of the projective line, arm 1 at infinity and
    arm 2 at 0.
    """
    weights = list(weights)
    t = len(weights)
    if t < 2:
        raise QuiverError("need at least two arms")
    lams = [field(1)] + [field(x) for x in lambdas]
    if t >= 3 and len(lams) != t - 2:
        raise QuiverError(f"expected {t - 3} parameters, got {len(lambdas)}")
    if t == 2 and lambdas:
        raise QuiverError("two arms take no parameters")
    if t >= 3 and any(p < 2 for p in weights):
        raise QuiverError("arms of length 1 are only allowed with two arms")
    if strict and t >= 3:
        if any(not x for x in lams) or len(set(lams)) != len(lams):
            raise QuiverError("parameters must be nonzero and pairwise distinct")
    vertices = ["sink"]
    arrows = []
    for j, p in enumerate(weights):
        vs = ["sink"] + [arm_vertex(j, k, p) for k in range(1, p)] + ["source"]
        vertices.extend(vs[1:-1])
        for k in range(1, p + 1):
            arrows.append(Arrow(arm_arrow(j, k), vs[k], vs[k - 1]))
    vertices.append("source")
    q = Quiver(vertices, arrows)
    rels = []
    for i in range(2, t):
        lam = lams[i - 2]
        rels.append([(field(1), q.path(arm_path(0, weights[0]))),
                     (lam, q.path(arm_path(1, weights[1]))),
                     (field(1), q.path(arm_path(i, weights[i])))])
    name = "Canonical(" + ",".join(map(str, weights))
    if lambdas:
        name += ";" + ",".join(render_scalar(field(x)) for x in lambdas)
    return BoundQuiver(q, rels, field, name=name + ")")
