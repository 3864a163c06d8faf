"""Finite-field brute force over rep(d)(F_q).

Points are encoded as integers: the entries of all arrow matrices, arrow by
arrow in quiver order, each matrix row-major, read as little-endian base-q
digits.  Hot loops use plain ints modulo q.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from typing import Callable

from .linalg import Matrix
from .quiver import BoundQuiver
from .rep import (Representation, dimvec, hom, is_invertible_map, iso_check, local_certificate,
                  random_representation)

DEFAULT_MAX_POINTS = 10**8
ALLOWED_Q = (2, 3, 5, 7)


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("QRT_BUDGET")
    return int(env) if env else DEFAULT_MAX_POINTS


@dataclass
class EnumerationBudget:
    max_points: int = DEFAULT_MAX_POINTS
    q: int = 2
    report_interval: int = 0

    def __post_init__(self):
        if self.q not in ALLOWED_Q:
            raise ValueError(f"q must be one of {ALLOWED_Q}")


class _Layout:
    """Arrow slots inside the point encoding and integer relation data."""

    def __init__(self, bq: BoundQuiver, d: dict, q: int):
        if bq.field.kind != "Fp" or bq.field.p != q:
            raise ValueError("bound quiver must be defined over GF(q)")
        self.bq, self.d, self.q = bq, d, q
        self.slots = []
        k = 0
        for a in bq.arrows:
            r, c = d[a.target], d[a.source]
            self.slots.append((a.name, k, r, c))
            k += r * c
        self.ambient = k
        self.index = {a.name: i for i, a in enumerate(bq.arrows)}
        self.rels = [(r.source, r.target, [(int(c), [self.index[x] for x in p.arrows]) for c, p in r.terms])
                     for r in bq.relations]

    def decode(self, code: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.ambient):
            out.append(code % q)
            code //= q
        return out

    def encode(self, entries: list[int]) -> int:
        code = 0
        for x in reversed(entries):
            code = code * self.q + x
        return code

    def matrices(self, entries) -> list[list[list[int]]]:
        out = []
        for _, k, r, c in self.slots:
            out.append([list(entries[k + i * c:k + (i + 1) * c]) for i in range(r)])
        return out

    def flatten(self, mats) -> list[int]:
        out = []
        for m in mats:
            for row in m:
                out.extend(row)
        return out

    def valid(self, mats) -> bool:
        q = self.q
        for s, t, terms in self.rels:
            rows, cols = self.d[t], self.d[s]
            if not rows or not cols:
                continue
            acc = [[0] * cols for _ in range(rows)]
            for coef, idxs in terms:
                m = mats[idxs[0]]
                for j in idxs[1:]:
                    m = _mul(m, mats[j], q, self.slots[j][3])
                for i in range(rows):
                    for jj in range(cols):
                        acc[i][jj] = (acc[i][jj] + coef * m[i][jj]) % q
            if any(x for r in acc for x in r):
                return False
        return True

    def to_rep(self, mats) -> Representation:
        F = self.bq.field
        out = {}
        for (name, _, r, c), m in zip(self.slots, mats):
            out[name] = Matrix(m, F, r, c) if r and c else Matrix.zeros(r, c, F)
        return Representation(self.bq, self.d, out)

    def from_rep(self, m: Representation) -> list[list[list[int]]]:
        return [[[int(x) for x in row] for row in m.mats[name].rows] for name, _, _, _ in self.slots]


def _mul(a, b, q, n):
    return [[sum(x * b[k][j] for k, x in enumerate(row)) % q for j in range(n)] for row in a]


def _check_budget(count: int, budget: int):
    if count > budget:
        raise BudgetExceeded(f"{count} points exceed the budget {budget}")


def iter_valid(bq: BoundQuiver, d, q: int, budget: int | None = None, start: int = 0, stop: int | None = None):
    """Yield (code, matrices) of valid points with code in [start, stop)."""
    d = dimvec(bq, d)
    lay = _Layout(bq, d, q)
    total = q ** lay.ambient
    _check_budget(total, budget or default_budget())
    stop = total if stop is None else min(stop, total)
    for code in range(start, stop):
        mats = lay.matrices(lay.decode(code))
        if lay.valid(mats):
            yield code, mats


def count_points(bq: BoundQuiver, d, q: int, budget: int | None = None, start: int = 0,
                 stop: int | None = None) -> dict:
    """Exhaustive count of rep(d)(F_q); ``cursor`` is where a resumed run continues."""
    d = dimvec(bq, d)
    lay = _Layout(bq, d, q)
    total = q ** lay.ambient
    stop = total if stop is None else min(stop, total)
    valid = sum(1 for _ in iter_valid(bq, d, q, budget, start, stop))
    return {"total": stop - start, "valid": valid, "cursor": stop, "complete": start == 0 and stop == total,
            "ambient": lay.ambient}


def count_points_fibered(bq: BoundQuiver, d, q: int, budget: int | None = None) -> int:
    """Same count, enumerating arrows not ending at a relation target and counting the linear fibres."""
    from .linalg import kernel_basis
    from .rep import solved_arrow_system

    d = dimvec(bq, d)
    F = bq.field
    targets = {r.target for r in bq.relations}
    free = [a for a in bq.arrows if a.target not in targets]
    solved = [a for a in bq.arrows if a.target in targets]
    free_dim = sum(d[a.target] * d[a.source] for a in free)
    _check_budget(q ** free_dim, budget or default_budget())
    total = 0
    for entries in itertools.product(range(q), repeat=free_dim):
        mats = {}
        k = 0
        for a in free:
            r, c = d[a.target], d[a.source]
            mats[a.name] = Matrix([list(entries[k + i * c:k + (i + 1) * c]) for i in range(r)], F, r, c)
            k += r * c
        for a in solved:
            mats[a.name] = Matrix.zeros(d[a.target], d[a.source], F)
        stub = Representation(bq, d, mats)
        rows, _, _ = solved_arrow_system(stub, solved)
        nunk = sum(d[a.target] * d[a.source] for a in solved)
        if not rows:
            total += q ** nunk
            continue
        nullity = kernel_basis(Matrix._raw(rows, F, len(rows), nunk)).ncols
        total += q ** nullity
    return total


# groups and orbits


def _invertible_matrices(n: int, q: int) -> list[tuple[list[list[int]], list[list[int]]]]:
    """All (g, g^{-1}) in GL_n(F_q)."""
    out = []
    for entries in itertools.product(range(q), repeat=n * n):
        g = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        inv = _inverse_mod(g, q)
        if inv is not None:
            out.append((g, inv))
    return out


def _inverse_mod(g, q):
    n = len(g)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(g)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % q), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, q)
        a[c] = [x * inv % q for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def gl_order(d: dict, q: int) -> int:
    out = 1
    for n in d.values():
        for i in range(n):
            out *= q ** n - q ** i
    return out


def orbit_census(bq: BoundQuiver, d, q: int, budget: int | None = None) -> list[dict]:
    """Orbits of GL(d)(F_q) on the valid points, sorted by smallest code."""
    d = dimvec(bq, d)
    lay = _Layout(bq, d, q)
    budget = budget or default_budget()
    order = gl_order(d, q)
    _check_budget(q ** lay.ambient, budget)
    _check_budget(order, budget)
    verts = list(bq.vertices)
    groups = [_invertible_matrices(d[v], q) if d[v] else [([], [])] for v in verts]
    elements = list(itertools.product(*groups))
    vidx = {v: i for i, v in enumerate(verts)}
    arrow_ends = [(vidx[bq.quiver.arrow[name].source], vidx[bq.quiver.arrow[name].target])
                  for name, _, _, _ in lay.slots]
    seen: set[int] = set()
    out = []
    for code, mats in iter_valid(bq, d, q, budget):
        if code in seen:
            continue
        orbit = set()
        for g in elements:
            new = []
            for (s, t), m in zip(arrow_ends, mats):
                if not m or not m[0]:
                    new.append(m)
                    continue
                new.append(_mul(_mul(g[t][0], m, q, len(m[0])), g[s][1], q, len(m[0])))
            orbit.add(lay.encode(lay.flatten(new)))
        seen |= orbit
        out.append({"size": len(orbit), "representative": code, "matrices": mats})
    out.sort(key=lambda o: o["representative"])
    return out


def automorphism_count(m: Representation) -> int:
    """|Aut(M)(F_q)| by enumerating End(M)."""
    q = m.field.p
    hb = hom(m, m)
    count = 0
    for coeffs in itertools.product(range(q), repeat=hb.dimension):
        if is_invertible_map(hb.combination([m.field(c) for c in coeffs])):
            count += 1
    return count


# indecomposables


def fingerprint(m: Representation, battery: list[Representation]) -> tuple:
    from .rep import hom_dim

    return tuple(hom_dim(t, m) for t in battery) + tuple(hom_dim(m, t) for t in battery)


def _standard_battery(bq: BoundQuiver) -> list[Representation]:
    from .rep import injective, projective, simple

    out = []
    for v in bq.vertices:
        out += [simple(bq, v), projective(bq, v), injective(bq, v)]
    return out


Predicate = Callable[[Representation], bool]


def search_indecomposable(bq: BoundQuiver, d, q: int, predicate: Predicate | None = None,
                          budget: int | None = None, use_orbits: bool = True) -> list[Representation]:
    """Indecomposables with local End (End/J = k) of dimension d over F_q, up to isomorphism."""
    d = dimvec(bq, d)
    lay = _Layout(bq, d, q)
    budget = budget or default_budget()
    if use_orbits and gl_order(d, q) <= 5000:
        reps = [lay.to_rep(o["matrices"]) for o in orbit_census(bq, d, q, budget)]
        dedupe = False
    else:
        reps = (lay.to_rep(mats) for _, mats in iter_valid(bq, d, q, budget))
        dedupe = True
    battery = _standard_battery(bq)
    found: dict[tuple, list[Representation]] = {}
    out = []
    for m in reps:
        if m.total_dim == 0 or not local_certificate(m):
            continue
        if predicate is not None and not predicate(m):
            continue
        if dedupe:
            fp = fingerprint(m, battery)
            bucket = found.setdefault(fp, [])
            if any(iso_check(m, x) for x in bucket):
                continue
            bucket.append(m)
        out.append(m)
    return out


def random_search(bq: BoundQuiver, d, rng: random.Random, accept: Predicate, tries: int = 200,
                  density: float = 1.0) -> tuple[Representation | None, int]:
    """First random valid point accepted by ``accept``; returns (rep, attempts)."""
    for k in range(1, tries + 1):
        m = random_representation(bq, d, rng, density=density)
        if accept(m):
            return m, k
    return None, tries


def harvest(bq: BoundQuiver, bound: dict[str, int], q: int, budget: int | None = None,
            max_ambient: int = 10) -> list[Representation]:
    """All indecomposables with 0 < d <= bound whose ambient space is small."""
    from .rep import dimvec as dv

    bound = dv(bq, bound)
    vs = list(bq.vertices)
    out = []
    for d in itertools.product(*[range(bound[v] + 1) for v in vs]):
        if not any(d):
            continue
        dd = dict(zip(vs, d))
        amb = sum(dd[a.source] * dd[a.target] for a in bq.arrows)
        if amb > max_ambient:
            continue
        out.extend(search_indecomposable(bq, dd, q, budget=budget))
    return out
