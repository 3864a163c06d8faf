import random

import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import GF, QQ
from qrt.forms import TitsForm
from qrt.rep import (RepError, Representation, act, decompose, direct_sum, end_dim, ext, ext_all, hom, hom_dim,
                     injective, iso_check, local_certificate, projective, projective_dimension, random_gl,
                     random_representation, residue_field_certificate, simple, tau, tau_minus)
from qrt.tubes import TubeModuleId

NAMES = ["Kronecker", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,2,2,2;2)"]
seeds = st.integers(0, 10**6)
names = st.sampled_from(NAMES)


def _rand(name, seed, field=QQ, top=2):
    bq = catalog(name, field).bq
    rng = random.Random(seed)
    d = {v: rng.randint(0, top) for v in bq.vertices}
    return random_representation(bq, d, rng, density=rng.choice([0.4, 1.0]))


@given(names, seeds)
def test_random_points_satisfy_relations(name, seed):
    assert _rand(name, seed).validate()


@given(names, seeds)
def test_euler_form_identity(name, seed):
    m, n = _rand(name, seed), _rand(name, seed + 1)
    form = TitsForm(m.bq)
    h, e1, e2 = ext_all(m, n)
    assert form.bilinear(m.dims, n.dims) == h - e1 + e2


@given(names, seeds)
def test_iso_invariance_under_base_change(name, seed):
    m = _rand(name, seed)
    g = random_gl(m.bq, m.dims, random.Random(seed))
    n = act(m, g)
    assert iso_check(m, n)
    assert hom_dim(m, m) == hom_dim(n, n) == hom_dim(m, n)


@given(names, seeds)
def test_duality_swaps_hom(name, seed):
    m, n = _rand(name, seed), _rand(name, seed + 7)
    assert hom_dim(m, n) == hom_dim(n.dual(), m.dual())
    assert iso_check(m.dual().dual(), m)


@given(names, seeds)
def test_decompose_reassembles(name, seed):
    m = _rand(name, seed, top=2)
    parts = decompose(m)
    assert all(local_certificate(p) or residue_field_certificate(p) for p in parts)
    assert iso_check(direct_sum(parts, m.bq), m)


@given(names, seeds)
def test_global_dimension_at_most_two(name, seed):
    assert projective_dimension(_rand(name, seed)) <= 2


@given(seeds)
def test_hom_basis_elements_are_homomorphisms(seed):
    m, n = _rand("CanonicalAlgebra(2,2,2)", seed), _rand("CanonicalAlgebra(2,2,2)", seed + 3)
    for f in hom(m, n).basis:
        for a in m.bq.arrows:
            assert f[a.target] @ m.mats[a.name] == n.mats[a.name] @ f[a.source]


def test_simple_ext_counts_arrows_and_relations(c222):
    bq = c222.bq
    s_src, s_snk, s_a = simple(bq, "source"), simple(bq, "sink"), simple(bq, "A")
    assert ext_all(s_src, s_a) == (0, 1, 0)       # one arrow source -> A
    assert ext_all(s_src, s_snk) == (0, 0, 1)     # one relation source -> sink
    assert ext_all(s_a, s_src) == (0, 0, 0)


def test_kronecker_basics(kron):
    bq = kron.bq
    p1, p2 = projective(bq, "1"), projective(bq, "2")
    assert p1.dim_vector == (1, 2) and p2.dim_vector == (0, 1)
    assert injective(bq, "1").dim_vector == (1, 0)
    assert hom_dim(p2, p1) == 2
    assert ext(simple(bq, "1"), simple(bq, "2"))[0] == 2
    assert tau(p1).total_dim == 0
    assert tau_minus(injective(bq, "2")).total_dim == 0
    # next preprojective after P(1) = (1,2)
    assert tau_minus(p2).dim_vector == (2, 3)


def test_kronecker_homogeneous_tubes(kron):
    fam = kron.family
    for lam in ["0"] + fam.homogeneous_points(3):
        r = fam.tube_module(TubeModuleId(lam, 0, 1)) if lam == "0" else fam.homogeneous(lam)
        assert iso_check(tau(r), r)
        assert end_dim(r) == 1 and ext(r, r)[0] == 1


@pytest.mark.parametrize("name", NAMES)
def test_tau_inverse_on_tube_modules(name):
    fam = catalog(name, QQ).family
    for lam in fam.special_points:
        for i in range(fam.rank(lam)):
            for n in (1, 2):
                m = fam.tube_module(TubeModuleId(lam, i, n))
                assert iso_check(tau_minus(tau(m)), m)
                assert iso_check(tau(tau_minus(m)), m)


def test_fp_field_changes_tau_nothing_structural(c2222_f3):
    fam = c2222_f3.family
    lam = fam.special_points[0]
    m = fam.tube_module(TubeModuleId(lam, 0, 1))
    assert iso_check(tau(tau(m)), m)


def test_json_roundtrip_and_errors(c222):
    bq = c222.bq
    m = random_representation(bq, {v: 1 for v in bq.vertices}, random.Random(0))
    assert Representation.from_json(bq, m.to_json()).dumps() == m.dumps()
    with pytest.raises(RepError):
        Representation.from_json(bq, {"dims": m.dims, "matrices": {"zz": [["1"]]}})


def test_fp_and_q_agree_on_integer_hom(rng):
    # a module defined by 0/1 matrices has the same hom dims over Q and GF(5)
    q_bq = catalog("Kronecker", QQ).bq
    f_bq = catalog("Kronecker", GF(5)).bq
    mats = {"a": [[1, 0], [0, 1]], "b": [[0, 1], [0, 0]]}
    mq = Representation(q_bq, {"1": 2, "2": 2}, mats)
    mf = Representation(f_bq, {"1": 2, "2": 2}, mats)
    assert hom_dim(mq, mq) == hom_dim(mf, mf) == 2


@pytest.mark.parametrize("field", [QQ, GF(3)])
def test_indecomposable_with_larger_residue_field(field):
    # b = companion of t^2 - 2, irreducible over Q and over GF(3)
    from qrt.rep import is_indecomposable

    bq = catalog("Kronecker", field).bq
    x = Representation(bq, {"1": 2, "2": 2}, {"a": [[1, 0], [0, 1]], "b": [[0, 2], [1, 0]]})
    assert not local_certificate(x)
    assert residue_field_certificate(x) and is_indecomposable(x)
    assert [p.dim_vector for p in decompose(x)] == [(2, 2)]
    assert not residue_field_certificate(direct_sum([x, x]))
    assert len(decompose(direct_sum([x, x]))) == 2
