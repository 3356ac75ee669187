import json
from pathlib import Path

import pytest

from garside import cli
from garside import normal_form as nf

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    return (GOLDEN / name).read_text()


# ---------------------------------------------------------------------------
# golden outputs


def test_nf_golden(capsys):
    code, out, _ = run(capsys, "nf", "n=3; -1")
    assert code == cli.EXIT_YES
    assert out == golden("nf_inverse_generator.json")
    assert json.loads(out)["factors"] == [[3, 1, 2]]


def test_nf_expand_golden_and_fixpoint(capsys):
    code, out, _ = run(capsys, "nf", "--expand", "n=4; 1 -3 2 2 -1")
    assert out == golden("nf_expand.txt")
    _, again, _ = run(capsys, "nf", "--expand", out.strip())
    assert again == out
    _, a, _ = run(capsys, "nf", "n=4; 1 -3 2 2 -1")
    _, b, _ = run(capsys, "nf", out.strip())
    assert a == b


def test_nf_delta_example(capsys):
    _, out, _ = run(capsys, "nf", "n=3; 1 2 1")
    data = json.loads(out)
    assert (data["inf"], data["factors"]) == (1, [])


def test_rsss_golden(capsys):
    code, out, _ = run(capsys, "rsss", "n=3; 1 1")
    assert code == cli.EXIT_YES
    assert out == golden("rsss_square.json")
    assert json.loads(out)["element_count"] == 2


def test_uss_budget_exhausted(capsys):
    code, out, _ = run(capsys, "uss", "n=5; 1 2 3 4 1 2 -3 2 1 4 4 3", "--budget", "1")
    assert code == cli.EXIT_UNRESOLVED
    assert out == golden("uss_budget.json")
    assert json.loads(out)["status"] == "budget exhausted"


def test_pacycle_golden(capsys):
    code, out, _ = run(capsys, "pacycle", "n=3; 2 1 1")
    assert code == cli.EXIT_YES
    assert out == golden("pacycle_delta.json")


def test_mc_golden_and_deterministic(capsys):
    argv = ("mc", "--experiment", "head-stability", "--n", "6", "--k", "5", "--samples", "200", "--seed", "7")
    _, out, _ = run(capsys, *argv)
    assert out == golden("mc_head_6_5.json")
    _, again, _ = run(capsys, *argv, "--jobs", "2")
    assert again == out


def test_mc_records_generated_seed(capsys):
    _, out, _ = run(capsys, "mc", "--experiment", "descent-count", "--n", "4", "--k", "1", "--samples", "20")
    data = json.loads(out)
    assert isinstance(data["seed"], int)
    _, again, _ = run(capsys, "mc", "--experiment", "descent-count", "--n", "4", "--k", "1",
                      "--samples", "20", "--seed", str(data["seed"]))
    assert json.loads(again) == data


@pytest.mark.slow
def test_dtable_golden(capsys):
    code, out, _ = run(capsys, "dtable")
    assert code == cli.EXIT_YES
    rows = out.splitlines()
    flagged = [r for r in rows if r.startswith("10,10,")]
    assert len(flagged) == 1 and "suspected-typo" in flagged[0]
    kept = "\n".join(r for r in rows if not r.startswith("10,10,")) + "\n"
    assert kept == golden("descent_grid.csv")


def test_dtable_json(capsys):
    _, out, _ = run(capsys, "dtable", "--format", "json", "--n-list", "4,6", "--k-list", "2")
    data = json.loads(out)
    assert data["schema_version"] == nf.SCHEMA_VERSION
    assert [r["value_3sf"] for r in data["rows"]] == ["6.04e-01", "8.58e-01"]


# ---------------------------------------------------------------------------
# conjugacy and exit codes


def test_conj_exit_codes(capsys):
    code, out, _ = run(capsys, "conj", "n=3; 1 1", "n=3; 2 2")
    cert = json.loads(out)
    assert code == cli.EXIT_YES and cert["verdict"] == "CONJUGATE"
    c = nf.word_to_braid(cert["witness"])
    assert nf.conjugate(nf.word_to_braid("n=3; 1 1"), c) == nf.word_to_braid("n=3; 2 2")
    code, out, _ = run(capsys, "conj", "n=3; 1 1", "n=3; 1 1 1")
    assert code == cli.EXIT_NO and json.loads(out)["separation"] is not None


def test_conj_json_shape(capsys):
    _, out, _ = run(capsys, "conj", "--mode", "exact", "n=3; 1 1", "n=3; 2 2")
    data = json.loads(out)
    assert data["schema_version"] == nf.SCHEMA_VERSION and data["mode"] == "exact"
    assert set(data) == {"schema_version", "verdict", "mode", "witness", "separation", "timings", "budget", "notes"}


def test_files_and_out_flag(tmp_path, capsys):
    word = tmp_path / "x.txt"
    word.write_text("n=3; 1 1\n")
    target = tmp_path / "nf.json"
    code, out, _ = run(capsys, "--out", str(target), "nf", str(word))
    assert code == cli.EXIT_YES and out == ""
    code, out, _ = run(capsys, "conj", str(target), "n=3; 2 2")
    assert code == cli.EXIT_YES


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "nf", "n=3; 1 x")
    assert code == cli.EXIT_USAGE and "column" in err
    code, _, err = run(capsys, "nf", str(tmp_path / "missing"))
    assert code == cli.EXIT_USAGE
    code, _, _ = run(capsys, "conj", "n=3; 1", "n=4; 1")
    assert code == cli.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "inf": 0, "factors": [[1, 2, 3]]}')
    code, _, _ = run(capsys, "nf", str(bad))
    assert code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["conj", "n=3; 1", "n=3; 1", "--mode", "quick"])
    assert exc.value.code == cli.EXIT_USAGE


def test_jobs_env_default(monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "3")
    args = cli.build_parser().parse_args(["mc", "--experiment", "wcw", "--n", "4", "--k", "2"])
    assert args.jobs == 3
    monkeypatch.setenv(cli.JOBS_ENV, "junk")
    assert cli._default_jobs() == 1


def test_probe_records_seed(capsys):
    _, out, _ = run(capsys, "probe", "--n", "4", "--k", "3", "--trials", "1", "--doublings", "1", "--seed", "5")
    data = json.loads(out)
    assert data["seed"] == 5 and data["schema_version"] == nf.SCHEMA_VERSION

