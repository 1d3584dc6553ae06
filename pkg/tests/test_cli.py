import json

import pytest
from typer.testing import CliRunner

from app import app, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_lattice_check(capsys):
    code, out, _ = run(capsys, "lattice", "check", "chain2")
    assert code == 0
    assert out.splitlines()[0] == "valid, distributive, chain"


def test_non_distributive_lattice_is_reported_not_rejected(capsys):
    code, report, _ = run_json(capsys, "lattice", "check", "m3")
    assert code == 0
    assert report["data"]["distributive"] is False
    assert len(report["data"]["witness"]) == 3


def test_gen_reaches_mu(capsys):
    code, report, _ = run_json(capsys, "gen", "--mu", "d8_mu", "--points", "b@r2,c@s")
    assert code == 0
    assert report["schema"] == 1
    assert report["data"]["equals_mu"] is True
    assert report["data"]["generated"]["values"]["sr2"] == "a"


def test_gen_needs_one_source(capsys):
    code, _, err = run(capsys, "gen", "--mu", "d8_mu")
    assert code == 2
    assert err.startswith("error:")


def test_s4_maximal(capsys):
    code, out, _ = run(capsys, "maximal", "--eta", "s4_eta", "--mu", "s4_mu")
    assert code == 0
    assert out.splitlines()[0] == "maximal: true (box 16, survivors 2)"


def test_lsub_check(capsys):
    code, out, _ = run(capsys, "lsub", "check", "d8_mu", "--mode", "all")
    assert code == 0
    assert out.splitlines()[0] == "L-subgroup: true"
    code, out, _ = run(capsys, "lsub", "check", "d8_eta")
    assert code == 1
    assert out.splitlines()[0] == "L-subgroup: false"


def test_group_info(capsys):
    code, report, _ = run_json(capsys, "group", "info", "d8")
    assert code == 0
    assert report["data"]["subgroup_count"] == 10
    assert report["data"]["normal_subgroup_count"] == 6
    assert report["data"]["abelian"] is False


def test_nilpotency(capsys):
    code, out, _ = run(capsys, "nilpotency", "--mu", "d8_one", "--crisp")
    assert code == 0
    assert out.splitlines()[0] == "nilpotent, class 2"
    code, report, _ = run_json(capsys, "nilpotency", "--mu", "s4_mu")
    assert report["data"]["class"] == 2


def test_normalizer_and_closure(capsys):
    code, report, _ = run_json(capsys, "normalizer", "--eta", "d8_s", "--mu", "d8_one", "--chain")
    assert code == 0
    assert report["data"]["normal"] is False
    assert report["data"]["reaches_mu"] is True
    assert len(report["data"]["chain"]) == 3
    code, report, _ = run_json(capsys, "closure", "--eta", "d8_s", "--mu", "d8_one", "--series")
    assert report["data"]["reaches_eta"] is True


def test_frattini_and_fingen(capsys):
    code, report, _ = run_json(capsys, "frattini", "--mu", "d8_mu", "--via", "both")
    assert code == 0
    assert report["data"]["agree"] is True
    assert report["data"]["maximal_count"] == 2
    assert report["data"]["frattini"]["values"]["r2"] == "a"
    code, report, _ = run_json(capsys, "fingen", "--mu", "d8_mu", "--k-max", "2")
    assert code == 0
    assert len(report["data"]["minimum"]) == 2
    assert report["data"]["lsubgroup_count"] == 30


def test_reconstruct_check(capsys):
    code, report, _ = run_json(capsys, "lattice", "reconstruct", "--check", "s4_lattice")
    assert code == 0
    assert report["data"]["compatible"] is True


def test_input_errors(capsys):
    code, out, err = run(capsys, "lattice", "check", "nowhere", "--json")
    assert code == 2
    assert err.startswith("error:")
    assert json.loads(out) == {"schema": 1, "error": json.loads(out)["error"], "exit_code": 2, "field": "nowhere"}
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2
    code, _, _ = run(capsys, "--budget", "0", "lattice", "check", "chain2")
    assert code == 2


def test_error_reports_name_the_field(capsys):
    code, out, _ = run(capsys, "--budget", "0", "lattice", "check", "chain2", "--json")
    assert code == 2
    assert json.loads(out)["field"] == "--budget"
    code, out, _ = run(capsys, "maximal", "--mu", "d8_mu", "--json")
    assert code == 2
    assert json.loads(out)["field"] == "--eta"
    code, out, _ = run(capsys, "verify", "nope", "--json")
    assert json.loads(out)["field"] == "suite"


def test_ragged_cayley_table_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "ragged.json"
    path.write_text(json.dumps({"name": "ragged", "kind": "cayley", "table": [[0, 1], [1]]}), encoding="utf-8")
    code, out, err = run(capsys, "group", "info", str(path), "--json")
    assert code == 2
    assert err.startswith("error:")
    assert json.loads(out)["field"] == "table"


def test_non_utf8_fixture_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b'{"name": "\xff\xfe"}')
    code, _, err = run(capsys, "lattice", "check", str(path))
    assert code == 2
    assert "not UTF-8" in err


def test_global_options_after_the_command(capsys):
    code, report, _ = run_json(capsys, "--seed", "7", "verify", "set_product_assoc", "--cases", "2")
    assert code == 0
    assert report["seed"] == 7
    code, report, _ = run_json(capsys, "verify", "set_product_assoc", "--cases", "2", "--seed", "7")
    assert report["seed"] == 7


def test_budget_exceeded(capsys):
    code, _, err = run(capsys, "--budget", "3", "maximal", "--mu", "d8_mu", "--list")
    assert code == 3
    assert "budget" in err


def test_verify_list(capsys):
    code, report, _ = run_json(capsys, "verify", "--list")
    assert code == 0
    ids = [s["suite_id"] for s in report["suites"]]
    assert len(ids) == 33
    assert "frat_lambda" in ids


def test_verify_runs_and_replays(capsys):
    code, report, _ = run_json(capsys, "verify", "set_product_assoc", "--cases", "3", "--seed", "7")
    assert code == 0
    assert report["cases_run"] == 3
    assert report["violations"] == []
    code, report, _ = run_json(capsys, "verify", "set_product_assoc", "--case", "1", "--seed", "7")
    assert report["cases_run"] == 1


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nope")
    assert code == 2
    assert "unknown suite" in err


@pytest.mark.parametrize("flag", ["--help", "--version"])
def test_help_exits_cleanly(capsys, flag):
    code, _, _ = run(capsys, flag)
    assert code == 0


def test_app_under_cli_runner():
    result = CliRunner().invoke(app, ["lattice", "check", "m3"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "valid, not distributive, not a chain"
    result = CliRunner().invoke(app, ["lsub", "check", "d8_eta"])
    assert result.exit_code == 1
