import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import GF
from qrt.oracle import (BudgetExceeded, EnumerationBudget, _Layout, automorphism_count, count_points,
                        count_points_fibered, gl_order, harvest, orbit_census, search_indecomposable)
from qrt.rep import local_certificate


def kron(q):
    return catalog("Kronecker", GF(q)).bq


def c2222(q):
    lam = 1 if q == 2 else 2
    return catalog("CanonicalAlgebra(2,2,2,2)", GF(q), lambdas=[lam], strict=q != 2).bq


def test_gl_orders():
    assert gl_order({"x": 2}, 2) == 6
    assert gl_order({"x": 2}, 3) == 48
    assert gl_order({"x": 1, "y": 2}, 3) == 2 * 48


@pytest.mark.parametrize("q", [2, 3, 5])
def test_free_quiver_counts(q):
    assert count_points(kron(q), {"1": 1, "2": 2}, q)["valid"] == q ** 4


@given(st.sampled_from([2, 3]), st.data())
def test_layout_roundtrip(q, data):
    bq = kron(q)
    lay = _Layout(bq, {"1": 2, "2": 1}, q)
    code = data.draw(st.integers(0, q ** lay.ambient - 1))
    entries = lay.decode(code)
    assert lay.encode(entries) == code
    assert lay.flatten(lay.matrices(entries)) == entries
    assert lay.from_rep(lay.to_rep(lay.matrices(entries))) == lay.matrices(entries)


@given(st.integers(0, 63))
def test_resumed_counts_add_up(cut):
    bq = catalog("CanonicalAlgebra(2,2,2)", GF(2)).bq
    d = {v: 1 for v in bq.vertices}
    full = count_points(bq, d, 2)
    a = count_points(bq, d, 2, stop=cut)
    b = count_points(bq, d, 2, start=a["cursor"])
    assert a["valid"] + b["valid"] == full["valid"] and full["complete"]


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", [(1, 1, 1, 1, 1), (1, 1, 1, 0, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 2)])
def test_fibered_count_matches_exhaustive(q, d):
    bq = catalog("CanonicalAlgebra(2,2,2)", GF(q), strict=q != 2).bq
    dd = dict(zip(bq.vertices, d))
    assert count_points_fibered(bq, dd, q) == count_points(bq, dd, q)["valid"]


@pytest.mark.parametrize("d", [{"1": 1, "2": 1}, {"1": 2, "2": 1}, {"1": 1, "2": 2}])
@pytest.mark.parametrize("q", [2, 3])
def test_orbit_stabilizer_kronecker(d, q):
    bq = kron(q)
    cen = orbit_census(bq, d, q)
    lay = _Layout(bq, d, q)
    assert sum(o["size"] for o in cen) == count_points(bq, d, q)["valid"]
    g = gl_order(d, q)
    assert all(o["size"] * automorphism_count(lay.to_rep(o["matrices"])) == g for o in cen)


def test_kronecker_indecomposables_frozen():
    # (1,1) is P^1(F_q); (2,1) has only the preinjective
    assert len(search_indecomposable(kron(2), {"1": 1, "2": 1}, 2)) == 3
    assert len(search_indecomposable(kron(3), {"1": 1, "2": 1}, 3)) == 4
    assert len(search_indecomposable(kron(2), {"1": 2, "2": 1}, 2)) == 1
    assert len(search_indecomposable(kron(2), {"1": 1, "2": 2}, 2)) == 1


def test_witness_vector_indecomposables_frozen():
    d = (2, 1, 1, 1, 1, 0)
    assert len(search_indecomposable(c2222(2), dict(zip(c2222(2).vertices, d)), 2)) == 6
    assert len(search_indecomposable(c2222(3), dict(zip(c2222(3).vertices, d)), 3)) == 7


def test_point_counts_at_h_frozen():
    for q, valid in ((2, 96), (3, 945)):
        bq = c2222(q)
        assert count_points(bq, {v: 1 for v in bq.vertices}, q)["valid"] == valid


def test_search_dedupe_path_agrees_with_census():
    bq = kron(2)
    a = search_indecomposable(bq, {"1": 2, "2": 2}, 2, use_orbits=True)
    b = search_indecomposable(bq, {"1": 2, "2": 2}, 2, use_orbits=False)
    assert len(a) == len(b) == 3


def test_harvest_is_local():
    bq = kron(2)
    found = harvest(bq, {"1": 2, "2": 2}, 2)
    assert found and all(local_certificate(m) for m in found)


def test_budget():
    bq = c2222(3)
    d = {v: 2 for v in bq.vertices}
    with pytest.raises(BudgetExceeded):
        count_points(bq, d, 3, budget=10**6)
    with pytest.raises(BudgetExceeded):
        orbit_census(bq, {v: 1 for v in bq.vertices}, 3, budget=100)
    with pytest.raises(ValueError):
        EnumerationBudget(q=4)


def test_field_mismatch():
    with pytest.raises(ValueError):
        count_points(kron(2), {"1": 1, "2": 1}, 3)
