import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qrt.catalog import catalog
from qrt.exactfield import QQ
from qrt.forms import SearchTooLarge, TitsForm, classify_singular, singular_witnesses, verify_witness
from qrt.rep import tau
from qrt.tubes import TubeModuleId

NAMES = ["Kronecker", "EuclideanA(2,1)", "CanonicalAlgebra(2,2,2)", "CanonicalAlgebra(2,3,4)",
         "CanonicalAlgebra(2,2,2,2;2)"]


def vec(n):
    return st.lists(st.integers(0, 4), min_size=n, max_size=n)


@pytest.fixture(scope="module", params=NAMES)
def form(request):
    return TitsForm(catalog(request.param, QQ).bq)


@given(st.data())
def test_kronecker_quadratic_is_a_square(data):
    f = TitsForm(catalog("Kronecker", QQ).bq)
    d = data.draw(vec(2))
    assert f.quadratic(d) == (d[0] - d[1]) ** 2


@given(data=st.data())
def test_bilinear_identities(form, data):
    n = len(form.vertices)
    d, e = data.draw(vec(n)), data.draw(vec(n))
    assert form.quadratic(d) == form.bilinear(d, d)
    assert form.symmetric(d, e) == form.bilinear(d, e) + form.bilinear(e, d)
    assert form.a_const(d) == sum(x * x for x in d) - form.quadratic(d)
    # the Coxeter transformation preserves the form
    assert form.bilinear(form.apply_coxeter(d), form.apply_coxeter(e)) == form.bilinear(d, e)
    assert form.bilinear(d, e) == -form.bilinear(e, form.apply_coxeter(d))


@given(data=st.data())
def test_tame_forms_are_nonnegative(form, data):
    assert form.quadratic(data.draw(vec(len(form.vertices)))) >= 0


def test_coxeter_matches_tau_on_regular_modules():
    e = catalog("CanonicalAlgebra(2,2,2,2;2)", QQ)
    form, fam = TitsForm(e.bq), e.family
    for lam in fam.special_points:
        for i in range(2):
            m = fam.tube_module(TubeModuleId(lam, i, 1))
            assert [Fraction(x) for x in form.apply_coxeter(m.dims)] == list(tau(m).dim_vector)


def test_example_vector_is_singular(c2222):
    form = TitsForm(c2222.bq)
    d = (3, 2, 2, 2, 2, 1)
    cert = classify_singular(form, d)
    assert cert.singular and verify_witness(form, d, cert.witness)
    ws = list(singular_witnesses(form, d))
    assert (1, 1, 1, 1, 1, 1) in ws and (2, 1, 1, 1, 1, 0) in ws
    assert all(verify_witness(form, d, w) for w in ws)


def test_h_is_not_singular(c2222):
    form = TitsForm(c2222.bq)
    assert form.quadratic((1,) * 6) == 0
    assert not classify_singular(form, (1,) * 6).singular


def test_anisotropic_vector_is_not_singular():
    form = TitsForm(catalog("Kronecker", QQ).bq)
    cert = classify_singular(form, (2, 1))
    assert not cert.singular and cert.note == "q(d) != 0"


@pytest.mark.parametrize("name", ["Kronecker", "CanonicalAlgebra(2,2,2)"])
def test_no_small_singular_vectors(name):
    form = TitsForm(catalog(name, QQ).bq)
    n = len(form.vertices)
    assert not any(classify_singular(form, d).singular for d in itertools.product(range(5), repeat=n))


def test_search_cap():
    form = TitsForm(catalog("CanonicalAlgebra(2,2,2,2;2)", QQ).bq)
    with pytest.raises(SearchTooLarge):
        list(singular_witnesses(form, (9,) * 6, cap=1000))


def test_verify_rejects_bad_witnesses(c2222):
    form = TitsForm(c2222.bq)
    d = (3, 2, 2, 2, 2, 1)
    assert not verify_witness(form, d, (4, 0, 0, 0, 0, 0))
    assert not verify_witness(form, d, (1, 0, 0, 0, 0, 0))
