import json
import os
import subprocess


def run(cli, *args, env=None):
    p = subprocess.run([cli, *map(str, args)], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout


def run_err(cli, *args):
    p = subprocess.run([cli, *map(str, args)], capture_output=True, text=True)
    return p.returncode, p.stderr


def test_enumerate_counts_embeddings(cli, data):
    code, out = run(cli, "morph", "enumerate", data / "cli/k1.rsf", data / "cli/k3.rsf")
    assert code == 0
    assert json.loads(out)["count"] == 3


def test_four_values_failure_exits_one(cli, data):
    code, out = run(cli, "metric", "four-values", data / "cli/s1235.json")
    assert code == 1
    assert json.loads(out)["witness"] == ["1", "1", "3", "5", "2"]


def test_refuted_arrow_certificate_checks(cli, data, tmp_path):
    c, a, b = (data / "cli" / n for n in ("p3.rsf", "k1.rsf", "k2.rsf"))
    code, out = run(cli, "ramsey", "arrow", c, a, b, "-k", 2)
    assert code == 1
    assert json.loads(out)["verdict"] == "refuted"
    report = tmp_path / "report.json"
    report.write_text(out)
    code, out = run(cli, "ramsey", "check", c, a, b, report, "-k", 2)
    assert code == 1
    assert json.loads(out)["refutes"] is True


def test_proved_arrow(cli, data):
    code, out = run(cli, "ramsey", "arrow", *(data / "cli" / n for n in ("k3.rsf", "k1.rsf", "k2.rsf")), "-k", 2)
    assert code == 0
    assert json.loads(out)["verdict"] == "proved"


def test_cap_from_environment_is_inconclusive(cli, data):
    env = dict(os.environ, RAMSEYFORGE_CAP="3")
    code, out = run(cli, "morph", "enumerate", data / "cli/k2.rsf", data / "cli/k3.rsf", env=env)
    assert code == 2


def test_flag_cap_overrides_environment(cli, data):
    env = dict(os.environ, RAMSEYFORGE_CAP="3")
    code, _ = run(cli, "morph", "enumerate", data / "cli/k2.rsf", data / "cli/k3.rsf", "--cap", 100, env=env)
    assert code == 0


def test_malformed_input_reports_position(cli, data):
    code, err = run_err(cli, "morph", "find", data / "cli/malformed.rsf", data / "cli/k3.rsf")
    assert code == 3
    assert "line 5, column 21" in err


def test_missing_file_is_usage_error(cli, data):
    code, _ = run(cli, "morph", "find", data / "cli/absent.rsf", data / "cli/k3.rsf")
    assert code == 3


def test_pretty_table(cli, data):
    code, out = run(cli, "metric", "four-values", data / "cli/s1235.json", "--pretty")
    assert code == 1
    assert out.splitlines()[1].split() == ["holds", "false"]
