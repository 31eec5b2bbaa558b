import json

from biassoc import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "assoc", "-m", "3")
    assert code == 0
    assert out.splitlines() == ["((* *) *)", "(* (* *))", "(* * *)"]


def test_enumerate_json(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--family", "biassoc", "-m", "2", "-n", "2",
        "--format", "json",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines
    for line in lines:
        obj = json.loads(line)
        assert set(obj) == {"up", "down", "zones", "type"}


def test_enumerate_deterministic(capsys):
    _, out1, _ = run(capsys, "enumerate", "--family", "biperm", "-m", "3", "-n", "2")
    _, out2, _ = run(capsys, "enumerate", "--family", "biperm", "-m", "3", "-n", "2")
    assert out1 == out2
    assert len(out1.splitlines()) == 13


def test_fvector(capsys):
    code, out, _ = run(capsys, "fvector", "--family", "biassoc", "-m", "3", "-n", "2")
    assert code == 0 and out.strip() == "6 6 1"
    code, out, _ = run(capsys, "fvector", "--family", "multipl", "-m", "3")
    assert code == 0 and out.strip() == "6 6 1"
    code, out, _ = run(capsys, "fvector", "--family", "assoc", "-m", "4")
    assert code == 0 and out.strip() == "5 5 1"


def test_hasse(capsys):
    code, out, _ = run(capsys, "hasse", "--family", "assoc", "-m", "3")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["elements"]) == 3 and len(obj["covers"]) == 2
    code, out, _ = run(capsys, "hasse", "--family", "assoc", "-m", "3", "--dot")
    assert code == 0 and out.startswith("digraph")


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "opet", "-m", "2", "-n", "2")
    assert code == 0 and "isomorphism verified" in out
    code, out, _ = run(capsys, "verify", "thmc", "-m", "3", "-n", "2")
    assert code == 0 and out.strip() == "thmc (3,2): 13 classes, kernels agree"
    code, out, _ = run(capsys, "verify", "propd", "-m", "3")
    assert code == 0 and "posets isomorphic" in out
    code, out, _ = run(capsys, "verify", "euler", "--family", "biperm", "-m", "3", "-n", "1")
    assert code == 0 and out.strip() == "euler biperm (3,1): 1"


def test_size_guard(capsys):
    code, _, err = run(capsys, "enumerate", "--family", "biperm", "-m", "9", "-n", "1")
    assert code == 2 and "tractability" in err
    code, _, err = run(capsys, "fvector", "--family", "biassoc", "-m", "5", "-n", "4")
    assert code == 2
    # the guard can be raised explicitly
    code, out, _ = run(
        capsys, "--max-size", "10", "enumerate", "--family", "assoc", "-m", "9"
    )
    assert code == 0 and len(out.splitlines()) == 20793


def test_encode_decode(capsys):
    code, out, _ = run(
        capsys, "encode", "--gamma",
        "--up", "((* * (* *)) (* (* *) *))", "--up-levels", "1,3,4,2,4",
    )
    assert code == 0 and out.strip() == "(4|57|12|36)"
    code, out, _ = run(
        capsys, "encode", "--gamma", "--decode", "(4|57|12|36)", "-m", "8"
    )
    assert code == 0
    assert out.strip() == "((* * (* *)) (* (* *) *));*;1,3,4,2,4;"


def test_varpi_command(capsys):
    code, out, _ = run(
        capsys, "varpi", "--up", "((* *) *)", "--down", "(* *)",
        "--up-levels", "1,3", "--down-levels", "2",
    )
    assert code == 0
    assert out.strip() == "F{ x[1,2] x[1,2] / V(x[2,1],x[1,2]) x[2,1] }"


def test_usage_errors(capsys):
    code, _, _ = run(capsys)
    assert code == 2
    code, _, err = run(capsys, "enumerate", "--family", "nope", "-m", "2")
    assert code == 2
    code, _, err = run(capsys, "fvector", "--family", "assoc")
    assert code == 2 and "need -m" in err
    code, _, err = run(capsys, "encode", "--up", "(* *)", "--up-levels", "1")
    assert code == 2  # --gamma is required
    code, _, err = run(capsys, "varpi", "--down", "(* *)")
    assert code == 2
    code, _, err = run(capsys, "encode", "--gamma", "--decode", "(bad)", "-m", "3")
    assert code == 2


def test_parallel_map(monkeypatch):
    monkeypatch.setenv("BIASSOC_THREADS", "4")
    assert cli.parallel_map(lambda v: v * v, range(10)) == [
        v * v for v in range(10)
    ]
    monkeypatch.setenv("BIASSOC_THREADS", "not-a-number")
    assert cli.parallel_map(lambda v: -v, [3, 1]) == [-3, -1]
