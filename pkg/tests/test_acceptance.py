"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import json

import pytest

from qrt.suites import run_suite

CRITERIA = [
    (1, "euler-identity", "Euler form equals hom - ext1 + ext2 on 200 random pairs per algebra"),
    (2, "ar-formula", "Ext1(M,N) = D Hom(N, tau M) and its dual on tube modules"),
    (3, "tubes", "tau-cyclic regular simples, sum of e = h, Hom min-formula"),
    (4, "tits", "q >= 0 on all d <= 3, isotropic d radical on 100 partners"),
    (5, "singular", "(3;2,2,2,2;1) singular with both witnesses; none for small Kronecker/(2,2,2)"),
    (6, "semi-invariants", "vanishing, transformation, multiplicativity, c_lambda identity"),
    (7, "geometry", "tangent = orbit + Ext1; maximal orbits a - p at h, 2h, h + e"),
    (8, "closure", "Kronecker R0+R1 closure system with 2 equations and rank-3 differentials"),
    (9, "singular-closure", "single-equation system at d = h for R^(2)"),
    (10, "counterexample", "R, N on (3;2,2,2,2;1) with equal orbit dimension and R <=_hom N"),
    (11, "oracle", "orbit sizes sum to point counts; q^a window at d = h"),
]


def _report(capsys, number, res, what):
    line = f"criterion {number}: {'PASS' if res.passed else 'FAIL'} [{res.name}] {res.checks} checks, " \
           f"{res.seconds:.1f}s - {what}"
    with capsys.disabled():
        print("\n" + line)
        if not res.passed:
            print(json.dumps(res.detail.get("failures", [])[:5], default=str))


@pytest.mark.parametrize("number,suite,what", CRITERIA, ids=[f"criterion_{n}_{s}" for n, s, _ in CRITERIA])
def test_criterion(capsys, number, suite, what):
    res = run_suite(suite, seed=0)
    _report(capsys, number, res, what)
    assert res.passed, res.detail.get("failures")
