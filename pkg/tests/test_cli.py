import json

import pytest

from kcascade import index as ix
from kcascade.cli import main

SMALL = ["--types", "A1..A3,B2,G2", "--max-enum-rank", "3", "--oracle-rank-cap", "3",
         "--oracle-spot-types", "A4", "--oracle-spot-samples", "4", "--trials", "2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cascade_e6(capsys):
    code, out, _ = run(capsys, "cascade", "E6", "--subset", "all")
    assert code == 0
    doc = json.loads(out)
    assert [e["support"] for e in doc["elements"]] == [[1, 2, 3, 4, 5, 6], [1, 3, 4, 5, 6], [3, 4, 5], [4]]
    assert doc["numbering"] == "Bourbaki"


def test_cascade_a1(capsys):
    code, out, _ = run(capsys, "cascade", "A1", "--subset", "1")
    assert json.loads(out)["elements"] == [{"support": [1], "eps": [1], "gamma_size": 1}]


def test_cascade_d7(capsys):
    code, out, _ = run(capsys, "cascade", "D7", "--subset", "all")
    supports = {tuple(e["support"]) for e in json.loads(out)["elements"]}
    assert supports == {(1, 2, 3, 4, 5, 6, 7), (1,), (3, 4, 5, 6, 7), (3,), (5, 6, 7), (5,)}


@pytest.mark.parametrize(
    "name, subset, expected",
    [("G2", "1", {"sum": 2, "equality": True}),
     ("E6", "4", {"sum": 6, "equality": True}),
     ("A2", "1", {"chi_p": 0, "chi_u": 2, "sum": 2})],
)
def test_index(capsys, name, subset, expected):
    code, out, _ = run(capsys, "index", name, "--subset", subset)
    doc = json.loads(out)
    assert code == 0
    assert {k: doc[k] for k in expected} == expected


@pytest.mark.parametrize("subset", ["9", "0", "x", "1,,2"])
def test_bad_subset_is_usage_error(capsys, subset):
    code, _, err = run(capsys, "index", "A3", "--subset", subset)
    assert code == 1
    assert "error" in err


def test_bad_type_and_flags(capsys):
    assert run(capsys, "cascade", "B1")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["index", "A2", "--format", "xml"])
    assert exc.value.code == 1


def test_formats(capsys):
    code, out, _ = run(capsys, "cascade", "A3", "--format", "csv")
    assert out.splitlines()[0] == "support,eps,gamma_size"
    code, out, _ = run(capsys, "enumerate", "G2", "--equality-only", "--format", "markdown")
    assert out.count("| G2 |") == 3


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "B2", "--subset", "none", "--kind", "nilradical", "--trials", "2", "--seed", "3")
    doc = json.loads(out)
    assert (doc["index"], doc["dim"], doc["seed"]) == (2, 4, 3)


def test_tables(tmp_path, capsys):
    code, _, _ = run(capsys, "tables", "--types", "A1..A5,D6,E7,G2", "--format", "json", "--out", str(tmp_path))
    assert code == 0
    sizes = json.loads((tmp_path / "cascade_sizes.json").read_text())["rows"]
    assert {r["type"]: r["kPi"] for r in sizes}["D6"] == 6
    minimal = json.loads((tmp_path / "minimal_parabolics.json").read_text())["rows"]
    e7 = next(r for r in minimal if r["type"] == "E7")
    assert e7["equality_in_cascade"] == [2, 3, 5, 7] and e7["equality_not_in_cascade"] == []
    maximal = json.loads((tmp_path / "maximal_parabolics_A.json").read_text())["rows"]
    assert [r["equality_at"] for r in maximal] == [[1], [1, 2], [1, 3], [1, 4], [1, 5]]
    run(capsys, "tables", "--types", "B3", "--format", "csv", "--out", str(tmp_path))
    assert (tmp_path / "minimal_parabolics.csv").read_text().splitlines()[1] == "B3,3,none,1 3,2"


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", *SMALL)
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert doc["suites"]["oracle"]["checked"] > 0


def test_verify_seed_stability(capsys):
    verdicts = []
    for seed in ("1", "2", "3"):
        code, out, _ = run(capsys, "verify", *SMALL, "--seed", seed)
        doc = json.loads(out)
        verdicts.append((code, doc["ok"], {k: len(v["failures"]) for k, v in doc["suites"].items()}))
    assert verdicts[0] == verdicts[1] == verdicts[2]


def test_verify_reports_counterexample(capsys, monkeypatch):
    monkeypatch.setattr(ix, "condition_ii", lambda spec: False)
    code, out, _ = run(capsys, "verify", *SMALL)
    doc = json.loads(out)
    assert code == 2
    fails = doc["suites"]["theorem"]["failures"]
    assert fails and all("subset" in f for f in fails)


def test_verify_internal_error(capsys, monkeypatch):
    monkeypatch.setattr(ix, "chi_parabolic", lambda spec: spec.rs.rank + 1)
    code, _, err = run(capsys, "verify", *SMALL)
    assert code == 3
    assert "internal consistency" in err


def test_config_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nseed = 5\ntrials=2\nformat=csv\n")
    code, out, _ = run(capsys, "oracle", "A2", "--kind", "full", "--config", str(cfg), "--format", "json")
    doc = json.loads(out)
    assert (doc["seed"], doc["trials"]) == (5, 2)
    monkeypatch.setenv("KCASCADE_SEED", "8")
    code, out, _ = run(capsys, "oracle", "A2", "--kind", "full", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["seed"] == 8
    code, out, _ = run(capsys, "oracle", "A2", "--kind", "full", "--config", str(cfg), "--format", "json", "--seed", "9")
    assert json.loads(out)["seed"] == 9


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 1
    assert run(capsys, "verify", "--trials", "0")[0] == 1
    assert run(capsys, "verify", "--types", "A1..B3")[0] == 1


def test_verify_output_file_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", *SMALL, "--out", str(a))
    run(capsys, "verify", *SMALL, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
