import random

import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import QQ
from qrt.geometry import (GeometryError, ambient_dim, closure_membership, closure_system, degenerations,
                          differential_rank, ext_epi_check, extension_degeneration, hom_order_compare,
                          maximality_check, orbit_dim, semisimple, singular_closure_system, tangent_space,
                          translates)
from qrt.rep import direct_sum, iso_check, projective, random_representation, simple
from qrt.semiinv import semi_invariant
from qrt.tubes import FamilyError, TubeModuleId


@pytest.fixture(scope="module")
def kr():
    e = catalog("Kronecker", QQ)
    f = e.family
    r = {k: f.homogeneous(k) for k in ("0", "1", "2", "3")}
    r0_2 = f.tube_module(TubeModuleId("0", 0, 2))
    return e, r, r0_2


def test_kronecker_orbit_dimensions(kr):
    e, r, r0_2 = kr
    pair = direct_sum([r["0"], r["1"]])
    double = direct_sum([r["0"], r["0"]])
    assert (orbit_dim(pair), orbit_dim(r0_2), orbit_dim(double), orbit_dim(semisimple(pair))) == (6, 6, 4, 0)
    assert maximality_check(e.family, pair) == {"orbit": 6, "a": 8, "p": 2, "maximal": True}
    assert maximality_check(e.family, r0_2)["maximal"]
    assert not maximality_check(e.family, double)["maximal"]


@given(st.sampled_from(["Kronecker", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,2,2,2;2)"]),
       st.integers(0, 10**6))
def test_tangent_equals_orbit_plus_ext(name, seed):
    e = catalog(name, QQ)
    rng = random.Random(seed)
    d = {v: rng.randint(0, 2) for v in e.bq.vertices}
    m = random_representation(e.bq, d, rng, density=rng.choice([0.4, 1.0]))
    assert ext_epi_check(m)["holds"]


def test_hereditary_tangent_is_everything(kr):
    e, r, _ = kr
    m = direct_sum([r["0"], r["2"]])
    assert tangent_space(m).dimension == ambient_dim(e.bq, m.dims) == 8


def test_kronecker_closure_system(kr):
    e, r, r0_2 = kr
    m = direct_sum([r["0"], r["1"]])
    sys = closure_system(e.family, m)
    assert len(sys.equations) == 2 and sys.codim == 2
    assert closure_membership(sys, m)
    assert closure_membership(sys, semisimple(m))
    for n in translates(m, 5, seed=1):
        assert closure_membership(sys, n)
    assert not closure_membership(sys, direct_sum([r["2"], r["3"]]))
    js = sys.to_json()
    assert js["codim"] == 2 and len(js["equations"]) == 2


def test_closure_system_rejections(kr, c222):
    e, r, _ = kr
    with pytest.raises(GeometryError):
        closure_system(e.family, direct_sum([r["0"], r["0"]]))     # orbit not maximal
    fam = c222.family
    m = fam.tube_module(TubeModuleId("x1", 0, 1))
    with pytest.raises((GeometryError, FamilyError)):
        closure_system(fam, m)                                     # p = 0
    with pytest.raises(FamilyError):
        closure_system(fam, simple(c222.bq, "source"))


def test_extension_degeneration(kr):
    _, r, r0_2 = kr
    n = extension_degeneration(r0_2, r["0"], r["0"], 0)
    assert iso_check(n, direct_sum([r["0"], r["0"]]))
    with pytest.raises(GeometryError):
        extension_degeneration(r0_2, r["0"], r["0"], None)         # split class gives R0 + R0
    with pytest.raises(GeometryError):
        extension_degeneration(r0_2, r["0"], r["0"], 5)


def test_degenerations_are_in_closure(kr):
    e, r, _ = kr
    m = direct_sum([r["0"], r["1"]])
    sys = closure_system(e.family, m)
    degs = degenerations(m, [projective(e.bq, "1"), projective(e.bq, "2"), r["0"], r["1"]], depth=2)
    assert degs
    for n in degs:
        assert closure_membership(sys, n) and orbit_dim(n) < orbit_dim(m)


def test_hom_order_for_a_degeneration(kr):
    e, r, r0_2 = kr
    tests = [projective(e.bq, "1"), projective(e.bq, "2"), simple(e.bq, "1"), simple(e.bq, "2")] + list(r.values())
    rep = hom_order_compare(r0_2, direct_sum([r["0"], r["0"]]), tests)
    assert rep.consistent and rep.strict >= 1 and rep.to_json()["verdict"] == "consistent"
    back = hom_order_compare(direct_sum([r["0"], r["0"]]), r0_2, tests)
    assert not back.consistent and back.witness is not None


def test_singular_closure_system(c2222):
    fam = c2222.family
    m = fam.tube_module(TubeModuleId("x1", 0, 2))
    sys = singular_closure_system(fam, m)
    assert len(sys.equations) == 1 and sys.codim == 1
    assert closure_membership(sys, m)
    v = fam.homogeneous(fam.homogeneous_points(1)[0])
    assert not closure_membership(sys, v)
    assert differential_rank([sys.anchor], m) == 1
    with pytest.raises(GeometryError):
        singular_closure_system(fam, v)


def test_differentials_of_anchor_semi_invariants(kr):
    # c_mu is quadratic in the pencil: independent differentials at R0 + R1, none at zero
    e, r, _ = kr
    f = e.family
    m = direct_sum([r["0"], r["1"]])
    cs = [semi_invariant(f.homogeneous(x), m.dims) for x in ("2", "3", "4")]
    assert differential_rank(cs, m) == 3
    assert differential_rank(cs, semisimple(m)) == 0


def test_alternative_kronecker_system_has_same_zero_set(kr):
    # c_3 - 3 c_2 = c_4 - 6 c_2 = 0 cuts out the same set as c_0 = c_1 = 0
    e, r, _ = kr
    f = e.family
    m = direct_sum([r["0"], r["1"]])
    sys = closure_system(f, m)
    c = {k: semi_invariant(f.homogeneous(str(k)), m.dims) for k in (2, 3, 4)}
    rng = random.Random(1)
    inside = 0
    for _ in range(200):
        p = random_representation(e.bq, m.dims, rng, density=rng.choice([0.3, 1.0]))
        alt = c[3](p) == 3 * c[2](p) and c[4](p) == 6 * c[2](p)
        assert alt == closure_membership(sys, p)
        inside += alt
    assert 0 < inside < 200
