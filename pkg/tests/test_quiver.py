import pytest

from qrt.catalog import CatalogError, catalog
from qrt.exactfield import GF, QQ
from qrt.quiver import BoundQuiver, QuiverError

NAMES = ["Kronecker", "EuclideanA(2,1)", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,3,4)",
         "CanonicalAlgebra(2,2,2,2;2)"]


@pytest.mark.parametrize("name", NAMES)
def test_json_roundtrip(name):
    bq = catalog(name, QQ).bq
    again = BoundQuiver.from_json(bq.to_json())
    assert again.same_as(bq)
    assert again.dumps() == bq.dumps()


@pytest.mark.parametrize("name", NAMES)
def test_opposite_is_an_involution(name):
    bq = catalog(name, QQ).bq
    assert bq.opposite().opposite().same_as(bq)


@pytest.mark.parametrize("name", NAMES)
def test_relations_are_minimal(name):
    assert catalog(name, QQ).bq.check_minimal()


@pytest.mark.parametrize("name,expected", [
    ("Kronecker", 2),
    ("CanonicalAlgebra(2,2,2)", 2),       # three paths, one relation
    ("CanonicalAlgebra(2,2,2,2;2)", 2),   # four paths, two relations
    ("CanonicalAlgebra(2,3,4)", 2),
])
def test_source_to_sink_dimension(name, expected):
    bq = catalog(name, QQ).bq
    src, snk = ("1", "2") if name == "Kronecker" else ("source", "sink")
    assert bq.morphism_space(src, snk).dimension == expected


def test_morphism_space_dual_symmetry():
    bq = catalog("CanonicalAlgebra(2,2,3)", QQ).bq
    op = bq.opposite()
    for x in bq.vertices:
        for y in bq.vertices:
            assert bq.morphism_space(x, y).dimension == op.morphism_space(y, x).dimension


def test_relation_kills_path_over_fp():
    # the three arm paths are dependent in the quotient
    bq = catalog("CanonicalAlgebra(2,2,2)", GF(5)).bq
    ms = bq.morphism_space("source", "sink")
    assert len(ms.paths) == 3 and ms.dimension == 2 and ms.ideal_dim == 1


def _obj(arrows, relations=()):
    verts = sorted({v for a in arrows for v in (a[1], a[2])})
    return {"field": {"kind": "Q"}, "vertices": verts,
            "arrows": [{"name": n, "from": s, "to": t} for n, s, t in arrows],
            "relations": [{"terms": [{"coeff": c, "path": p} for c, p in r]} for r in relations]}


def test_oriented_cycle_rejected():
    with pytest.raises(QuiverError):
        BoundQuiver.from_json(_obj([("a", "x", "y"), ("b", "y", "x")]))


def test_short_relation_rejected():
    with pytest.raises(QuiverError):
        BoundQuiver.from_json(_obj([("a", "x", "y"), ("b", "x", "y")], [[("1", ["a"]), ("-1", ["b"])]]))


def test_mismatched_relation_rejected():
    arrows = [("a", "y", "z"), ("b", "x", "y"), ("c", "w", "z")]
    with pytest.raises(QuiverError):
        BoundQuiver.from_json(_obj(arrows, [[("1", ["a", "b"]), ("1", ["c", "c"])]]))


@pytest.mark.parametrize("name", ["Kronecker(1)", "CanonicalAlgebra(2,2,2,2)", "CanonicalAlgebra(3,3,4)",
                                  "CanonicalAlgebra(2,2,2,2;1)", "Nonsense"])
def test_bad_catalog_ids(name):
    with pytest.raises((CatalogError, QuiverError, ValueError)):
        catalog(name, QQ)
