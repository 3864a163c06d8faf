import random

import pytest

from qrt.catalog import catalog
from qrt.counterexample import (DIM_X, DIM_Y, SHIFTED_H, CounterexampleConfig, SearchStats, _brick,
                                period_two_candidates)
from qrt.exactfield import GF
from qrt.forms import TitsForm
from qrt.geometry import orbit_dim
from qrt.rep import direct_sum, end_dim, hom_dim


@pytest.fixture(scope="module")
def setup():
    e = catalog("CanonicalAlgebra(2,2,2,2)", GF(3), lambdas=[2])
    return e, TitsForm(e.bq)


def test_period_two_candidates(setup):
    _, form = setup
    cands = period_two_candidates(form, SHIFTED_H)
    assert cands
    for c in cands:
        rest = [a - b for a, b in zip(SHIFTED_H, c)]
        assert form.quadratic(c) == 1 and form.quadratic(rest) == 1
        assert tuple(c) not in (DIM_X, DIM_Y)


def test_witness_pair_forces_large_endomorphism_ring(setup):
    # <x,y> = 2 with x, y isotropic bounds orbit_dim(X + Y) by sum d^2 - 4
    e, form = setup
    assert form.bilinear(DIM_X, DIM_Y) == 2 and form.bilinear(DIM_Y, DIM_X) == -2
    rng = random.Random(3)
    vs = e.bq.vertices
    x = _brick(e.bq, dict(zip(vs, DIM_X)), rng, 200, SearchStats(), "X")
    y = _brick(e.bq, dict(zip(vs, DIM_Y)), rng, 200, SearchStats(), "Y")
    n = direct_sum([x, y])
    assert hom_dim(x, y) >= 2 and end_dim(n) >= 4
    assert orbit_dim(n) <= sum(v * v for v in SHIFTED_H) - 4 == form.a_const(SHIFTED_H) - 4


def test_config_fields():
    assert str(CounterexampleConfig().field_spec()) == "GF(3)"
    assert str(CounterexampleConfig(field="Q").field_spec()) == "Q"
    with pytest.raises(ValueError):
        CounterexampleConfig(field="R").field_spec()
