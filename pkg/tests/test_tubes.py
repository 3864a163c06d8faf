import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import GF, QQ
from qrt.forms import TitsForm
from qrt.rep import hom_dim, iso_check, tau
from qrt.tubes import FamilyError, TubeModuleId, composition_counts

NAMES = ["Kronecker", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,3,3)", "CanonicalAlgebra(2,2,2,2;2)"]


@pytest.fixture(scope="module", params=NAMES)
def entry(request):
    return catalog(request.param, QQ)


def test_h_is_primitive_isotropic(entry):
    fam = entry.family
    form = TitsForm(entry.bq)
    h = [fam.h[v] for v in entry.bq.vertices]
    assert form.quadratic(h) == 0 and min(h) == 1
    for lam in fam.exceptional:
        total = {v: 0 for v in entry.bq.vertices}
        for i in range(fam.rank(lam)):
            for v, x in fam.e(lam, i).items():
                total[v] += x
        assert total == fam.h


def test_regular_simples_are_tau_cyclic(entry):
    fam = entry.family
    for lam in fam.special_points:
        r = fam.rank(lam)
        s = [fam.regular_simple(lam, i) for i in range(r)]
        for i in range(r):
            assert iso_check(tau(s[i]), s[(i - 1) % r])


def test_hom_formula_matches_linear_algebra(entry):
    fam = entry.family
    ids = [TubeModuleId(lam, i, n) for lam in fam.special_points
           for i in range(fam.rank(lam)) for n in range(1, 2 * fam.rank(lam) + 1)]
    mods = {t: fam.tube_module(t) for t in ids}
    for a in ids:
        for b in ids:
            if a.lam == b.lam:
                assert fam.hom_formula(a, b) == hom_dim(mods[a], mods[b])
            else:
                assert hom_dim(mods[a], mods[b]) == 0


def test_locate_inverts_tube_module(entry):
    fam = entry.family
    for lam in fam.special_points:
        for i in range(fam.rank(lam)):
            for n in (1, 2, 3):
                t = TubeModuleId(lam, i, n)
                assert fam.locate(fam.tube_module(t)) == t


@given(st.integers(0, 3), st.data())
def test_decompose_vector_roundtrip(p, data):
    e = catalog("CanonicalAlgebra(2,2,2,2;2)", QQ)
    fam = e.family
    d = {v: p * fam.h[v] for v in e.bq.vertices}
    coords = {}
    for lam in fam.exceptional:
        c = [data.draw(st.integers(0, 2)) for _ in range(fam.rank(lam))]
        c[data.draw(st.integers(0, len(c) - 1))] = 0
        coords[lam] = c
        for i, k in enumerate(c):
            for v, x in fam.e(lam, i).items():
                d[v] += k * x
    td = fam.decompose_vector(d)
    assert td.p == p and td.coords == coords


def test_vectors_outside_the_cone(c222):
    for v in ("sink", "source"):
        d = {x: int(x == v) for x in c222.bq.vertices}
        assert c222.family.decompose_vector(d) is None


def test_composition_counts():
    assert composition_counts(2, 0, 1) == [1, 0]
    assert composition_counts(2, 1, 3) == [1, 2]
    assert composition_counts(3, 0, 3) == [1, 1, 1]


def test_homogeneous_point_counts():
    # P^1(F_q) minus the special points
    assert len(catalog("CanonicalAlgebra(2,2,2,2;2)", GF(5)).family.homogeneous_points(10)) == 2
    assert len(catalog("CanonicalAlgebra(2,2,2)", GF(3)).family.homogeneous_points(10)) == 1
    assert len(catalog("Kronecker", GF(2)).family.homogeneous_points(10)) <= 3


def test_special_points_rejected_as_homogeneous(c2222):
    fam = c2222.family
    with pytest.raises(FamilyError):
        fam.point_value("x1")
    with pytest.raises(FamilyError):
        fam.point_value("0")
    with pytest.raises(FamilyError):
        fam.homogeneous("-1")


def test_homogeneous_modules_are_distinct_bricks(c2222):
    fam = c2222.family
    pts = fam.homogeneous_points(3)
    mods = [fam.homogeneous(x) for x in pts]
    for i, m in enumerate(mods):
        assert hom_dim(m, m) == 1 and iso_check(tau(m), m)
        for n in mods[i + 1:]:
            assert hom_dim(m, n) == 0


def test_trichotomy(c222):
    from qrt.rep import injective, projective

    fam = c222.family
    reg = fam.trichotomy(fam.tube_module(TubeModuleId("x1", 0, 2)))
    assert reg["class"] == "R" and reg["period"] == 2 and reg["defect"] == 0
    assert fam.trichotomy(projective(c222.bq, "source"))["class"] == "P"
    assert fam.trichotomy(injective(c222.bq, "sink"))["class"] == "Q"
