import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import GF, QQ
from qrt.forms import TitsForm
from qrt.rep import direct_sum, hom_dim, projective_dimension, random_gl, random_representation
from qrt.semiinv import (WeightError, differential, differential_columns, evaluate, minus_euler_weight,
                         ratio_constant, semi_invariant, transformation_check, weight_of)
from qrt.tubes import TubeModuleId

seeds = st.integers(0, 10**6)


def _kron_pair():
    f = catalog("Kronecker", QQ).family
    return f, direct_sum([f.homogeneous("0"), f.homogeneous("1")])


@pytest.mark.parametrize("mu", [2, 3, 4, 5, 7])
def test_kronecker_values_frozen(mu):
    f, m = _kron_pair()
    c = semi_invariant(f.homogeneous(str(mu)), m.dims)
    assert evaluate(c, m) == mu * (mu - 1)
    assert c.weight.as_dict() == {"1": -1, "2": 1}


def _bricks(entry):
    fam = entry.family
    out = [fam.tube_module(TubeModuleId(lam, i, n)) for lam in fam.special_points
           for i in range(fam.rank(lam)) for n in (1, 2)]
    return out + [fam.homogeneous(x) for x in fam.homogeneous_points(2)]


@pytest.fixture(scope="module")
def c2222_data():
    e = catalog("CanonicalAlgebra(2,2,2,2;2)", QQ)
    return e, _bricks(e)


@given(seeds)
def test_vanishing_iff_hom(c2222_data, seed):
    e, vs = c2222_data
    rng = random.Random(seed)
    v = rng.choice(vs)
    d = dict(e.family.h) if rng.random() < 0.5 else {k: 2 * x for k, x in e.family.h.items()}
    if projective_dimension(v) > 1 or weight_of(v)(d) != 0:
        return
    c = semi_invariant(v, d)
    m = random_representation(e.bq, d, rng, density=rng.choice([0.3, 0.6, 1.0]))
    assert (evaluate(c, m) == 0) == (hom_dim(v, m) > 0)


@given(seeds)
def test_transformation_law(c2222_data, seed):
    e, vs = c2222_data
    rng = random.Random(seed)
    v = vs[0]
    d = dict(e.family.h)
    c = semi_invariant(v, d)
    m = random_representation(e.bq, d, rng)
    assert transformation_check(c, m, random_gl(e.bq, d, rng))


def test_weight_is_minus_euler_for_pd_one(c2222_data):
    e, vs = c2222_data
    form = TitsForm(e.bq)
    for v in vs:
        if projective_dimension(v) <= 1:
            assert weight_of(v).as_dict() == minus_euler_weight(form, v.dims).as_dict()


def test_weight_mismatch_raises(kron):
    f = kron.family
    with pytest.raises(WeightError):
        semi_invariant(f.homogeneous("2"), {"1": 2, "2": 1})


@given(seeds)
def test_differential_two_ways(seed):
    # interpolation and the column-replacement expansion agree
    e = catalog("Kronecker", QQ)
    f = e.family
    rng = random.Random(seed)
    d = {"1": 2, "2": 2}
    c = semi_invariant(f.homogeneous("3"), d)
    m = random_representation(e.bq, d, rng)
    z = {a: random_representation(e.bq, d, rng).mats[a] for a in m.mats}
    assert differential(c, m, z) == differential_columns(c, m, z)


def test_semi_invariants_over_small_field():
    e = catalog("Kronecker", GF(5))
    f = e.family
    m = direct_sum([f.homogeneous("0"), f.homogeneous("1")])
    c = semi_invariant(f.homogeneous("3"), m.dims)
    assert int(evaluate(c, m)) == 6 % 5


def test_ratio_constant():
    assert ratio_constant([(Fraction(1), Fraction(3)), (Fraction(2), Fraction(6))]) == (True, 3)
    assert ratio_constant([(Fraction(1), Fraction(3)), (Fraction(2), Fraction(5))])[0] is False
