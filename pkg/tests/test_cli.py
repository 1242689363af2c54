import json
import math

import pytest

from sswalk.cli import EXIT_DISAGREE, EXIT_OK, EXIT_USAGE, main
from sswalk.model import CoinProfile, WalkSpec, make_shift, make_site
from sswalk.scenario import dumps_scenario

SCEN = {
    "shift": {"p": 0.5, "q_re": math.sqrt(3) / 2},
    "coin": {"kind": "step", "limit_minus": {"a": 0.9}, "limit_plus": {"a": 0.0}},
}


@pytest.fixture
def scenario(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(SCEN))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_writes_csv(tmp_path, scenario, capsys):
    out = tmp_path / "r.csv"
    code, _, _ = run(capsys, "analyze", "--config", scenario, "--out", str(out))
    assert code == EXIT_OK
    header, row = out.read_text().strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert [fields[k] for k in ("witten_formula", "witten_winding", "witten_transfer", "witten_spectral")] == ["1"] * 4


def test_analyze_is_deterministic(tmp_path, scenario, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.csv"
        run(capsys, "analyze", "--config", scenario, "--methods", "formula,winding,transfer", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_analyze_inline_and_degenerate(capsys):
    doc = json.loads(json.dumps(SCEN))
    doc["coin"]["limit_plus"]["a"] = 0.5
    code, out, err = run(capsys, "analyze", "--config", json.dumps(doc), "--methods", "formula,winding")
    assert code == EXIT_OK
    assert ",false," in out and "not_fredholm" in out
    assert "not Fredholm" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("analyze", "--config", '{"shift": {"p": 0.5}}'),
        ("analyze", "--config", "/nonexistent/file.json"),
        ("analyze", "--config", json.dumps(SCEN), "--methods", "formula,guess"),
        ("sweep", "--p", "1:0:0.1", "--a-plus", "0", "--a-minus", "0.9"),
        ("dump-operator", "--config", json.dumps(SCEN), "--which", "delta", "--window", "5"),
        ("bogus",),
        (),
    ],
)
def test_usage_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(list(argv)))
    assert exc.value.code == EXIT_USAGE


def test_disagreement_exit_code(monkeypatch, scenario, capsys):
    import sswalk.analysis as analysis

    real = analysis.kernel_by_matching

    def broken(spec, *a, **k):
        kc = real(spec, *a, **k)
        return type(kc)(kc.dim_ker + 1, kc.dim_coker, kc.decay_rates)

    monkeypatch.setattr(analysis, "kernel_by_matching", broken)
    code, _, err = run(capsys, "analyze", "--config", scenario, "--methods", "transfer")
    assert code == EXIT_DISAGREE
    assert "disagreement" in err


def test_sweep_negative_ranges(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, err = run(
        capsys, "sweep", "--p", "-0.9:0.9:0.3", "--a-plus", "-0.95:0.95:0.19", "--a-minus", "0.9",
        "--b-phase", "-0.5", "--jobs", "2", "--out", str(out),
    )
    assert code == EXIT_OK
    assert len(out.read_text().strip().splitlines()) == 1 + 7 * 11
    assert "77 points" in err and "77/77 agree" in err


def test_sweep_marks_degenerate_rows(capsys):
    code, out, _ = run(capsys, "sweep", "--p", "0.5", "--a-plus", "0.4:0.6:0.1", "--a-minus", "0.9")
    assert code == EXIT_OK
    rows = out.strip().splitlines()[1:]
    assert [("not_fredholm" in r) for r in rows] == [False, True, False]


def test_verify_vacuous(capsys):
    code, out, err = run(capsys, "verify", "--seed", "42", "--counts", "0")
    assert code == EXIT_OK
    assert "vacuous" in out and "warning" in err


def test_verify_quick_is_deterministic(capsys):
    args = ("verify", "--seed", "5", "--counts", "winding_methods=50,root_formula=20,transfer=10,spectral=0,"
            "edge_states=0,toeplitz=3,finite_rank=3")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert first[0] == EXIT_OK
    assert "[PASS] transfer: 12/12" in first[1]


def test_verify_reports_failing_case(monkeypatch, capsys):
    import sswalk.suites as suites

    real = suites.kernel_by_matching

    def broken(spec, *a, **k):
        kc = real(spec, *a, **k)
        return type(kc)(kc.dim_ker + 1, kc.dim_coker, kc.decay_rates)

    monkeypatch.setattr(suites, "kernel_by_matching", broken)
    code, out, _ = run(capsys, "verify", "--seed", "1", "--counts", "transfer=2,winding_methods=0,root_formula=0,"
                       "spectral=0,edge_states=0,toeplitz=0,finite_rank=0")
    assert code == EXIT_USAGE
    assert "[FAIL] transfer" in out
    case = json.loads(out.split("first failing case (transfer):", 1)[1])
    spec = case["scenario"]
    assert set(spec) == {"shift", "coin"}


def test_spectrum(tmp_path, scenario, capsys):
    out = tmp_path / "sp.csv"
    assert main(["spectrum", "--config", scenario, "--window", "10", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "operator,index,re,im"
    assert sum(line.startswith("U,") for line in lines) == 42
    assert sum(line.startswith("Q,") for line in lines) == 42


@pytest.mark.parametrize("which", ["gamma", "coin", "u", "q", "qplus"])
def test_dump_operator(which, capsys):
    spec = WalkSpec(make_shift(0.5, math.sqrt(3) / 2), CoinProfile.step(make_site(0.9), make_site(0.0)))
    code, out, _ = run(capsys, "dump-operator", "--config", dumps_scenario(spec), "--which", which, "--window", "5")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "row,col,re,im"
    n = 11 if which == "qplus" else 22
    assert all(0 <= int(line.split(",")[0]) < n for line in lines[1:])
