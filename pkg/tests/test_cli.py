import json

import pytest

from qrt.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, run

R0 = '{"dims":{"1":1,"2":1},"matrices":{"a":[["1"]],"b":[["0"]]}}'
R1 = '{"dims":{"1":1,"2":1},"matrices":{"a":[["1"]],"b":[["1"]]}}'
PAIR = '{"dims":{"1":2,"2":2},"matrices":{"a":[["1","0"],["0","1"]],"b":[["0","0"],["0","1"]]}}'
R2R3 = '{"dims":{"1":2,"2":2},"matrices":{"a":[["1","0"],["0","1"]],"b":[["2","0"],["0","3"]]}}'


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_form(capsys):
    code, obj, _ = call(capsys, "form", "--quiver", "Kronecker", "--d", "2,1", "--a", "--quadratic")
    assert code == EXIT_OK and obj == {"a": 4, "quadratic": 1}
    code, obj, _ = call(capsys, "form", "--quiver", "Kronecker", "--d", "1,1", "--e", "1,0", "--bilinear")
    assert obj == 1


def test_hom_ext_tau(capsys):
    assert call(capsys, "hom", "--quiver", "Kronecker", "--m", R0, "--n", R1)[1] == {"hom": 0}
    assert call(capsys, "ext", "--quiver", "Kronecker", "--m", R0)[1] == {"ext1": 1, "ext2": 0}
    assert call(capsys, "tau", "--quiver", "Kronecker", "--m", R1)[1]["dims"] == {"1": 1, "2": 1}


def test_singular_emits_both_witnesses(capsys):
    code, obj, _ = call(capsys, "singular", "--quiver", "CanonicalAlgebra(2,2,2,2)", "--lambda", "2",
                        "--d", "3;2,2,2,2;1")
    assert code == EXIT_OK and obj["verdict"] == "singular"
    ws = [tuple(w[v] for v in ("sink", "A", "B", "C", "D", "source")) for w in obj["witnesses"]]
    assert (1, 1, 1, 1, 1, 1) in ws and (2, 1, 1, 1, 1, 0) in ws


def test_decompose_vector(capsys):
    code, obj, _ = call(capsys, "decompose-vector", "--family", "CanonicalAlgebra(2,2,2)", "--d", "2,1,2,2,2")
    assert code == EXIT_OK and obj["in_R"]
    assert call(capsys, "decompose-vector", "--family", "CanonicalAlgebra(2,2,2)", "--d", "2,1,1,1,1")[1] == \
        {"in_R": False}


def test_orbit_and_closure(capsys):
    obj = call(capsys, "orbit", "--family", "Kronecker", "--m", PAIR, "--dim", "--maximal", "--tangent")[1]
    assert obj["orbit_dim"] == 6 and obj["maximal"]["maximal"] and obj["tangent"]["holds"]
    obj = call(capsys, "closure", "--family", "Kronecker", "--m", PAIR, "--emit")[1]
    assert len(obj["system"]["equations"]) == 2
    code, obj, _ = call(capsys, "closure", "--family", "Kronecker", "--m", PAIR, "--member", R2R3)
    assert code == EXIT_OK and obj["member"] is False
    assert call(capsys, "closure", "--family", "Kronecker", "--m", PAIR, "--member", PAIR)[1]["member"] is True


def test_semiinv(capsys):
    assert call(capsys, "semiinv", "--family", "Kronecker", "--d", "2,2", "--v", R1, "--eval", PAIR)[1] == \
        {"V": {"value": "0"}}
    assert call(capsys, "semiinv", "--family", "Kronecker", "--d", "2,2", "--v", R1, "--weight")[1] == \
        {"V": {"weight": {"1": -1, "2": 1}}}


def test_oracle_commands(capsys):
    obj = call(capsys, "oracle", "count", "--quiver", "Kronecker", "--field", "F2", "--q", "2", "--d", "1,1")[1]
    assert obj["valid"] == 4 and obj["complete"]
    obj = call(capsys, "oracle", "search", "--quiver", "Kronecker", "--field", "F2", "--q", "2", "--d", "1,1")[1]
    assert obj["count"] == 3


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("QRT_BUDGET", "10")
    assert run(["oracle", "count", "--quiver", "Kronecker", "--field", "F2", "--q", "2", "--d", "2,2"]) == \
        EXIT_BUDGET


@pytest.mark.parametrize("argv", [["form"], ["form", "--bogus"], ["nosuch"],
                                  ["form", "--quiver", "Kronecker", "--d", "1,2,3"],
                                  ["hom", "--quiver", "Kronecker", "--m", "/nonexistent.json"]])
def test_usage_errors(capsys, argv):
    assert run(argv) == EXIT_USAGE


def test_output_is_deterministic(capsys):
    argv = ["catalog", "--name", "CanonicalAlgebra(2,2,2,2;2)"]
    a = call(capsys, *argv)[2]
    b = call(capsys, *argv)[2]
    assert a == b


def test_verify_single_suite(capsys):
    code, obj, _ = call(capsys, "verify", "--suite", "singular")
    assert code == EXIT_OK and obj["passed"] and obj["suite"] == "singular"
