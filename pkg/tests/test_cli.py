import json
from fractions import Fraction

import pytest

from plq import cli
from plq.config import ConfigError, ParseError, RunConfig, build_config, load_config


def write(tmp_path, text, name="run.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_minimal_file_fills_defaults(tmp_path):
    cfg = load_config(write(tmp_path, 'case = "case1"\nn = 2\nlambda = "1"\n'))
    assert (cfg.case, cfg.n, cfg.lam) == ("case1", 2, Fraction(1))
    assert (cfg.seed, cfg.samples, cfg.tol) == (0, 1000, 1e-9)


def test_run_table_and_rationals(tmp_path):
    cfg = load_config(write(tmp_path, 'case = "mixed"\nn = 1\nlambda = "1/2"\nnu = "-1/3"\n'
                                      '[run]\nseed = 5\nsuites = ["unitary"]\nreport = "json"\n'))
    assert cfg.nu == Fraction(-1, 3) and cfg.seed == 5
    assert cfg.suites == ("unitary",) and cfg.report == "json"


def test_bad_rational_reports_location(tmp_path):
    with pytest.raises(ParseError) as info:
        load_config(write(tmp_path, 'case = "case2"\n  lambda = "1/0"\n'))
    assert info.value.line == 2 and info.value.column == 12


def test_floats_rejected():
    with pytest.raises(ConfigError):
        build_config({"lambda": 0.5})


def test_malformed_toml(tmp_path):
    with pytest.raises(ParseError) as info:
        load_config(write(tmp_path, 'case = "case2"\nn = = 2\n'))
    assert info.value.line == 2


def test_unknown_field_and_suite():
    with pytest.raises(ConfigError):
        build_config({"lamda": "1"})
    with pytest.raises(ConfigError):
        build_config({"suites": "liealg,bogus"})


def test_flags_override_file(tmp_path):
    path = write(tmp_path, 'case = "case2"\nn = 2\nlambda = "1/2"\n')
    args = cli.make_parser().parse_args(["--config", str(path), "--n", "1", "--lambda", "2/3"])
    cfg = cli.resolve_config(args)
    assert (cfg.case, cfg.n, cfg.lam) == ("case2", 1, Fraction(2, 3))


def test_ignored_field_warns(tmp_path, capsys):
    path = write(tmp_path, 'case = "case1"\nn = 1\nlambda = "1"\nJ = [[0]]\n[run]\nsuites = ["liealg"]\n')
    with pytest.warns(UserWarning, match="J is not used"):
        code = cli.main(["--config", str(path)])
    assert code == 0
    assert "warning: J is not used by case1; ignored" in capsys.readouterr().out


def test_case3_needs_two_dimensions(capsys):
    assert cli.main(["--case", "case3", "--n", "1"]) == cli.EXIT_CONFIG
    assert "n >= 2" in capsys.readouterr().err


def test_non_skew_J_is_a_config_error():
    assert cli.main(["--case", "case3", "--n", "2", "--J", "[[0,1],[1,0]]"]) == cli.EXIT_CONFIG


def test_case2_full_run(capsys):
    code = cli.main(["--case", "case2", "--n", "1", "--lambda", "1/2", "--suites", "all", "--report", "json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0 and report["summary"]["ok"] and report["summary"]["fail"] == 0
    assert report["schema"] == 1
    pent = [c for c in report["checks"] if c["name"].startswith("pentagon")]
    assert pent and all(c["exact_zero"] for c in pent)
    names = [(c["suite"], c["name"]) for c in report["checks"]]
    assert len(names) == len(set(names))


def test_case3_zero_J_notes_degeneration(capsys):
    code = cli.main(["--case", "case3", "--n", "2", "--J", "[[0,0],[0,0]]", "--report", "json"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert any("J = 0" in w for w in report["warnings"])


def test_report_dir_and_determinism(tmp_path, monkeypatch):
    monkeypatch.setenv("PLQ_REPORT_DIR", str(tmp_path))
    argv = ["--case", "case2", "--n", "1", "--lambda", "1/2", "--report", "json", "--seed", "11",
            "--force-numeric", "--samples", "200"]
    assert cli.main(argv) == 0
    path = tmp_path / "plq-case2-n1-seed11.json"
    first = path.read_bytes()
    assert cli.main(argv) == 0
    assert path.read_bytes() == first


def test_self_test_catches_every_fixture(tmp_path):
    out = tmp_path / "self.json"
    assert cli.main(["--self-test", "--report", "json", "--out", str(out)]) == 0
    checks = json.loads(out.read_text())["checks"]
    assert len(checks) >= 3 and all(c["status"] == "pass" and c["exact_zero"] is False for c in checks)


def test_failing_check_gives_exit_one(monkeypatch):
    from plq import suites

    def broken(case, opt):
        yield suites.run_check("liealg", "always", "test", lambda: Fraction(1))

    monkeypatch.setitem(suites.SUITE_FUNCS, "liealg", broken)
    assert cli.main(["--case", "case1", "--n", "1", "--suites", "liealg"]) == cli.EXIT_FAIL


def test_run_config_is_frozen():
    with pytest.raises(Exception):
        RunConfig().n = 3
