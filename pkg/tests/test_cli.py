"""Command-line front end: JSON documents, caching, exit codes."""

import json
import os
import threading

import pytest

from qtmac import cli


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# compute commands
# ---------------------------------------------------------------------------

def test_pieri_golden_document(capsys):
    code, out, _ = run_cli(["pieri", "--eta", "0,0", "--r", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "1"
    assert doc["kind"] == "pieri"
    assert doc["n"] == 2
    assert doc["eta"] == "0,0"
    assert doc["r"] == 1
    assert doc["params"] == "symbolic"
    assert doc["payload"]["entries"] == [
        ["0,1", {"num": "q*t - t", "den": "q*t - 1"}],
        ["1,0", {"num": "1", "den": "1"}],
    ]


def test_estar_golden_payload(capsys):
    code, out, _ = run_cli(["estar", "--eta", "0,1"], capsys)
    assert code == 0
    assert json.loads(out)["payload"] == "z2 - 1/t"


def test_e_trivial_payload(capsys):
    code, out, _ = run_cli(["e", "--eta", "0,0"], capsys)
    assert code == 0
    assert json.loads(out)["payload"] == "1"


def test_binom_norm_psi_innerprod(capsys):
    code, out, _ = run_cli(["binom", "--eta", "0,1", "--nu", "1,1"], capsys)
    assert code == 0
    assert json.loads(out)["payload"] == {"num": "t", "den": "q*t - 1"}

    code, out, _ = run_cli(["norm", "--eta", "1,0"], capsys)
    assert code == 0
    doc = json.loads(out)
    # (1-q)(1-qt^2) over (1-qt)^2 in canonical expanded form
    assert doc["payload"] == {"num": "q^2*t^2 - q*t^2 - q + 1",
                              "den": "q^2*t^2 - 2*q*t + 1"}

    code, out, _ = run_cli(["psi", "--eta", "1,0", "--lam", "1,1"], capsys)
    assert code == 0
    assert json.loads(out)["payload"] == {
        "num": "q*t + q - t - 1", "den": "q*t - 1"}

    code, out, _ = run_cli(
        ["innerprod", "--eta", "0,0", "--nu", "0,0", "--k", "1"], capsys)
    assert code == 0
    assert json.loads(out)["payload"] == {"num": "q + 1", "den": "1"}


def test_specialized_params(capsys):
    code, out, _ = run_cli(
        ["e", "--eta", "1,0", "--params", "q=1/2,t=1/3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["params"] == "q=1/2,t=2/3" or doc["params"] == "q=1/2,t=1/3"
    assert "z1" in doc["payload"]


def test_text_format(capsys):
    code, out, _ = run_cli(
        ["pieri", "--eta", "0,0", "--r", "1", "--format", "text"], capsys)
    assert code == 0
    assert "0,1: (q*t - t) / (q*t - 1)" in out


def test_output_determinism(capsys):
    a = run_cli(["pieri", "--eta", "1,0,1", "--r", "2"], capsys)
    b = run_cli(["pieri", "--eta", "1,0,1", "--r", "2"], capsys)
    assert a == b
    assert a[0] == 0


# ---------------------------------------------------------------------------
# usage errors -> exit 1 with a diagnostic on stderr
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["pieri", "--eta", "0,0", "--r", "7"],
    ["pieri", "--eta", "0,x", "--r", "1"],
    ["pieri", "--eta", "0,-1", "--r", "1"],
    ["binom", "--eta", "0,0"],
    ["binom", "--eta", "0,0", "--nu", "0,0,0"],
    ["e", "--eta", "0,0", "--params", "totally-broken"],
    ["e", "--eta", "0,0", "--params", "q=0,t=2"],
    ["e", "--eta", "0,0", "--params", "q=1/2,t=2", "--symbolic"],
    ["verify", "--suite", "no-such-suite", "--max-n", "2", "--max-mod", "1"],
    ["psi", "--eta", "1,0", "--lam", "3,0"],
])
def test_usage_errors_exit_one(argv, capsys):
    code, _, err = run_cli(argv, capsys)
    assert code == 1
    assert err.strip()


def test_degenerate_point_is_a_clean_failure(capsys):
    # q = t = 1 collapses Hecke denominators; must exit 1, not crash
    code, _, err = run_cli(
        ["e", "--eta", "1,0", "--params", "q=1,t=1"], capsys)
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------

def test_verify_small_suites(capsys):
    code, out, _ = run_cli(
        ["verify", "--suite", "pieri-agreement", "--max-n", "2",
         "--max-mod", "2"], capsys)
    assert code == 0
    assert "[pass] pieri-agreement" in out

    code, out, _ = run_cli(
        ["verify", "--suite", "norms", "--max-n", "2", "--max-mod", "1",
         "--k", "1"], capsys)
    assert code == 0
    assert "[pass] norms" in out


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def test_cache_roundtrip(tmp_path):
    doc = cli.ResultDocument(kind="e", n=2, inputs={"eta": "0,1"},
                             params="symbolic", payload="z2")
    again = cli.cache_roundtrip(doc, str(tmp_path))
    assert again == doc


def test_cache_transparency(tmp_path, capsys):
    argv = ["pieri", "--eta", "0,1", "--r", "1"]
    plain = run_cli(argv, capsys)
    cached1 = run_cli(argv + ["--cache-dir", str(tmp_path)], capsys)
    cached2 = run_cli(argv + ["--cache-dir", str(tmp_path)], capsys)
    assert plain == cached1 == cached2
    entries = [p for p in os.listdir(tmp_path) if p.endswith(".json")]
    assert len(entries) == 1


def test_cache_ignores_corruption(tmp_path, capsys):
    argv = ["e", "--eta", "0,1", "--cache-dir", str(tmp_path)]
    first = run_cli(argv, capsys)
    (path,) = [os.path.join(tmp_path, p) for p in os.listdir(tmp_path)
               if p.endswith(".json")]
    with open(path, "w") as fh:
        fh.write("{this is not json")
    second = run_cli(argv, capsys)
    assert first == second
    with open(path) as fh:
        json.load(fh)  # recomputed file is valid again


def test_cache_concurrent_duplicate_store(tmp_path):
    doc = cli.ResultDocument(kind="e", n=2, inputs={"eta": "2,1"},
                             params="symbolic", payload="x")
    errors = []

    def store():
        try:
            for _ in range(25):
                cli.cache_store(doc, str(tmp_path))
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=store) for _ in range(6)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors
    entries = [p for p in os.listdir(tmp_path) if p.endswith(".json")]
    assert len(entries) == 1
    loaded = cli.cache_load("e", 2, {"eta": "2,1"}, "symbolic", str(tmp_path))
    assert loaded == doc


def test_cache_key_is_deterministic_and_distinct():
    k1 = cli.cache_key("pieri", 2, {"eta": "0,0", "r": 1}, "symbolic")
    k2 = cli.cache_key("pieri", 2, {"eta": "0,0", "r": 2}, "symbolic")
    k3 = cli.cache_key("pieri", 2, {"eta": "0,0", "r": 1}, "q=1/2,t=1/3")
    assert k1 == cli.cache_key("pieri", 2, {"eta": "0,0", "r": 1}, "symbolic")
    assert len({k1, k2, k3}) == 3
