import json

import pytest

from sqfree.cli import RunConfig, UsageError, main, run


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, _ = call(capsys, "count", "--n", "3")
    assert code == 0
    assert json.loads(out) == {"ell": None, "series": ["1", "3", "6", "12"]}


def test_count_csv(capsys, tmp_path):
    path = tmp_path / "c.csv"
    assert main(["count", "--n", "4", "--ell", "1", "--out", str(path)]) == 0
    assert path.read_text().splitlines()[:3] == ["n,count", "0,1", "1,3"]


def test_count_by_letter(capsys):
    code, out, _ = call(capsys, "count", "--n", "4", "--by-letter")
    assert json.loads(out)["rows"][4] == ["0", "12", "6", "0", "0"]


def test_genfun(capsys):
    code, out, _ = call(capsys, "genfun", "--ell", "2")
    data = json.loads(out)
    assert data["num"] == ["1", "2", "2", "3"] and data["den"] == ["1", "-1", "-1"]


def test_genfun_text(capsys, tmp_path):
    path = tmp_path / "s.txt"
    assert main(["genfun", "--ell", "1", "--text", str(path)]) == 0
    assert path.read_text() == "S1(x) = (1 + x) / (1 - 2*x)\n"


def test_poles(capsys, tmp_path):
    svg = tmp_path / "p.svg"
    code, out, _ = call(capsys, "poles", "--ell", "3", "--svg", str(svg))
    assert code == 0
    assert json.loads(out)["x_c"] == "0.682327804"
    assert svg.read_text().startswith("<svg")


def test_triple(capsys):
    code, out, _ = call(capsys, "triple", "freq", "pair_m35")
    assert json.loads(out)["frequencies"] == {"a": "1/3", "b": "16/51", "c": "6/17"}
    code, out, _ = call(capsys, "triple", "verify", "pair_m18", "--depth", "2")
    data = json.loads(out)
    assert data["valid"] and data["check_length"] == 2


def test_extent(capsys):
    code, out, _ = call(capsys, "extent", "--k", "1")
    assert [(r["n_min"], r["n_max"]) for r in json.loads(out)] == [(0, 3), (1, 7)]


def test_thermo_entropy_csv(capsys):
    code, out, _ = call(capsys, "thermo", "--n", "20", "--curve", "entropy", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "eps,P,q"


def test_analyze(capsys, tmp_path):
    counts = tmp_path / "counts.json"
    assert main(["count", "--n", "40", "--out", str(counts)]) == 0
    code, out, _ = call(capsys, "analyze", "--input", str(counts))
    assert code == 0
    assert 0.76 < json.loads(out)["x_c"] < 0.78


def test_budget_exit_code(capsys):
    code, _, err = call(capsys, "count", "--n", "30", "--budget", "100")
    assert code == 3
    data = json.loads(err)
    assert set(data) >= {"module", "operation", "reason"}


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("SQFREE_BUDGET", "100")
    code, _, _ = call(capsys, "count", "--n", "30")
    assert code == 3


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["module"] == "cli"
    code, _, err = call(capsys, "count", "--n", "4", "--ell", "2", "--by-letter")
    assert code == 2
    code, _, err = call(capsys, "triple", "freq", "no_such_fixture")
    assert code == 2
    code, _, err = call(capsys, "thermo", "--n", "10", "--svg", "x.svg")
    assert code == 2


def test_analyze_short_input(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text('{"ell": null, "series": ["1", "3", "6"]}')
    code, _, err = call(capsys, "analyze", "--input", str(path))
    assert code == 2 and json.loads(err)["module"] == "analysis"


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("count", budget=0)
    assert run(RunConfig("bogus")) == 2


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["count", "--n", "25", "--by-letter", "--out", str(a), "--threads", "1"])
    main(["count", "--n", "25", "--by-letter", "--out", str(b), "--threads", "2"])
    assert a.read_bytes() == b.read_bytes()
