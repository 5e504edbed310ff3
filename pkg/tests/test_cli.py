import json

import pytest

from spexlab.cli import SCHEMA_VERSION, run
from spexlab.graph import graph6_decode


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def doc(out):
    d = json.loads(out)
    assert d["schema_version"] == SCHEMA_VERSION
    return d


def test_rho_family(capsys):
    code, out, _ = call(capsys, "rho", "--family", "s+:n=30,l=5")
    d = doc(out)
    assert code == 0 and d["command"] == "rho" and d["seed"] == 0
    assert d["result"]["residual"] <= 1e-12
    assert d["result"]["rho"] > 5


def test_rho_implicit_large(capsys):
    code, out, _ = call(capsys, "rho", "--implicit", "--family", "s++:n=5000,l=2")
    assert code == 0 and doc(out)["result"]["rho"] > 99


def test_free_check_exit_codes(capsys):
    assert call(capsys, "free-check", "--t", "2", "--l", "4", "--family", "s++:n=12,l=3")[0] == 0
    code, out, _ = call(capsys, "free-check", "--t", "2", "--l", "3", "--graph6", "E~~w")
    assert code == 1 and doc(out)["result"]["free"] is False


def test_pack_returns_cycles(capsys):
    code, out, _ = call(capsys, "pack", "--t", "2", "--l", "3", "--family", "complete:n=6")
    cycles = doc(out)["result"]["cycles"]
    assert code == 0 and len(cycles) == 2


def test_formula(capsys):
    code, out, _ = call(capsys, "formula", "ex-tc3", "--n", "14", "--t", "2")
    assert code == 0 and doc(out)["result"]["value"] == 55


def test_construct_graph6_output(capsys):
    code, out, _ = call(capsys, "construct", "--family", "erdos-moon:n=10,t=2", "--graph6-out")
    g = graph6_decode(out.strip())
    assert code == 0 and g.n == 10 and g.edge_count() == 9 + 4 * 5


def test_edge_list_input(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n1 2\n2 0\n")
    code, out, _ = call(capsys, "rho", "--edges", str(p))
    assert code == 0 and abs(doc(out)["result"]["rho"] - 2) < 1e-9


@pytest.mark.parametrize(
    "argv",
    [
        ["rho"],
        ["rho", "--family", "nonsense:n=3"],
        ["rho", "--graph6", "A_", "--family", "k:n=3"],
        ["frobnicate"],
        ["search", "exhaustive"],
        ["rho", "--graph6", "!!"],
        ["verify", "theorem11", "--n", "20"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert err.startswith("spexlab") and err.count("\n") == 1


def test_numeric_failure_exit_3(capsys, monkeypatch):
    import spexlab.cli as cli

    def fail(*a, **k):
        raise cli.SpectralError("did not converge")

    monkeypatch.setattr(cli, "perron", fail)
    code, _, err = call(capsys, "rho", "--graph6", "B?")
    assert code == 3 and "numeric" in err


def test_procedure_negative_exit_1(capsys):
    code, _, err = call(capsys, "grow", "--family", "cycles:t=2,l=3", "--triangle", "0,1,2", "--l", "2")
    assert code == 1 and "PreconditionError" in err


def test_schema(capsys):
    code, out, _ = call(capsys, "rho", "--schema")
    assert code == 0 and json.loads(out)["properties"]["schema_version"]["const"] == SCHEMA_VERSION


def test_verify_json_and_csv(capsys):
    code, out, _ = call(capsys, "verify", "theorem11", "--n", "20", "--t", "2", "--l", "2")
    assert code == 0 and doc(out)["result"]["all_pass"]
    code, out, _ = call(capsys, "verify", "theorem11", "--n", "20", "--t", "2", "--l", "2", "--csv")
    assert code == 0 and out.startswith("suite,check")


def test_search_modes(capsys):
    code, out, _ = call(capsys, "search", "exhaustive", "--n", "5", "--t", "1", "--l", "1")
    assert code == 0 and doc(out)["result"]["best_value"] == 6
    code, out, _ = call(capsys, "search", "exhaustive", "--n", "6", "--objective", "bounded", "--nu", "2", "--delta", "2")
    assert code == 0 and doc(out)["result"]["best_value"] == 6
    code, out, _ = call(capsys, "search", "certify", "--family", "s++:n=20,l=3", "--t", "2", "--l", "2", "--parity", "even")
    assert code == 0 and doc(out)["result"]["is_local_max"]
    code, out, _ = call(capsys, "search", "climb", "--n", "10", "--seeds", "2", "--budget", "300", "--csv")
    assert code == 0 and out.startswith("seed_index,step,rho,move")


def test_reruns_are_byte_identical(capsys):
    argv = ["search", "climb", "--n", "10", "--t", "1", "--l", "2", "--parity", "even", "--seeds", "2", "--budget", "500", "--seed", "7"]
    a = call(capsys, *argv)
    b = call(capsys, *argv)
    assert a == b and json.loads(a[1])["seed"] == 7


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SPEXLAB_THREADS", "3")
    assert doc(call(capsys, "formula", "ex-tc3", "--n", "14", "--t", "2")[1])["threads"] == 3
    monkeypatch.setenv("SPEXLAB_THREADS", "x")
    assert call(capsys, "formula", "ex-tc3", "--n", "14", "--t", "2")[0] == 2
