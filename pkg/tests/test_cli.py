"""Command-line interface: exit codes, report files, determinism."""

import json

import pytest

from ellipq.cli import IDENTITIES, SuiteConfig, main, run_suite
from ellipq.errors import UsageError


class TestExitCodes:
    def test_empty_identity_list_is_usage_error(self, capsys):
        assert main(["verify"]) == 2

    def test_unknown_identity_is_usage_error(self):
        assert main(["verify", "--identity", "nope"]) == 2

    def test_tolerance_below_floor_is_usage_error(self):
        assert main(["verify", "--identity", "theta-identity",
                     "--tol", "1e-80", "--prec", "128"]) == 2

    def test_passing_run_exits_zero(self, tmp_path):
        out = tmp_path / "rep.json"
        code = main(["verify", "--identity", "theta-identity", "--n", "2",
                     "--k", "1", "--prec", "160", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["schema_version"] == "1"
        assert payload["summary"]["failed"] == 0

    def test_list_identities(self, capsys):
        assert main(["list-identities"]) == 0
        seen = capsys.readouterr().out
        for name in IDENTITIES:
            assert name in seen


class TestEval:
    def test_macdonald_expansion(self, capsys):
        assert main(["eval", "macdonald", "--lambda", "2,0", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "m[2,0]" in out and "m[1,1]" in out

    def test_macdonald_alias(self, capsys):
        assert main(["macdonald", "--lambda", "1,1", "--n", "2"]) == 0
        assert "m[1,1]" in capsys.readouterr().out

    def test_gamma_numeric(self, capsys):
        assert main(["eval", "gamma", "--x", "0.5", "--p", "0.1", "--q", "0.2",
                     "--prec", "128"]) == 0
        out = capsys.readouterr().out
        assert "certified" in out

    def test_theta_numeric(self, capsys):
        assert main(["eval", "theta", "--x", "0.5+0.1j", "--p", "0.1"]) == 0

    def test_emacdonald_json(self, capsys):
        assert main(["eval", "emacdonald", "--lambda", "0,0", "--n", "2",
                     "--order", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["partition"] == "0,0"
        assert "1,-1" in payload["coefficients"]

    def test_kernel_expand_json(self, capsys):
        assert main(["eval", "kernel-expand", "--m", "0", "--n", "2",
                     "--order", "1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload["diagonal"]) == {"0,0", "1,-1"}

    def test_apply_json(self, capsys):
        assert main(["eval", "apply", "--op", "ruijsenaars", "--k", "1",
                     "--n", "2", "--order", "1", "--target", "1,0:1;0,1:1"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert "1,0" in payload["coefficients"]

    def test_bad_partition_is_usage_error(self, capsys):
        assert main(["eval", "macdonald", "--lambda", "2;0", "--n", "2"]) == 2


class TestSuite:
    def test_config_validation(self):
        cfg = SuiteConfig(identities=[])
        with pytest.raises(UsageError):
            cfg.validate()
        cfg = SuiteConfig(identities=[{"id": "bogus"}])
        with pytest.raises(UsageError):
            cfg.validate()

    def test_deterministic_report(self):
        cfg = SuiteConfig(precision_bits=192, tolerance=1e-10, seeds=[3],
                          identities=[{"id": "theta-identity", "n": 2, "k": 1}])
        rep1 = run_suite(cfg)
        rep2 = run_suite(cfg)
        d1, d2 = rep1.to_json_dict(), rep2.to_json_dict()
        # byte-identical modulo the wall-time fields
        for d in (d1, d2):
            d["total_wall_time_s"] = 0.0
            for r in d["reports"]:
                r["wall_time_s"] = 0.0
        assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)

    def test_toml_config(self, tmp_path):
        cfg_file = tmp_path / "suite.toml"
        cfg_file.write_text(
            '[suite]\nprecision_bits = 160\nseeds = [5]\n'
            '[[identity]]\nid = "theta-identity"\nn = 2\nk = 1\n')
        out = tmp_path / "rep.json"
        code = main(["verify", "--config", str(cfg_file), "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["precision_bits"] == 160
        assert payload["reports"][0]["seed"] == 5


class TestFailureExit:
    def test_identity_failure_exits_one(self, tmp_path):
        # an unreachable tolerance turns a passing identity into a failure
        out = tmp_path / "rep.json"
        code = main(["verify", "--identity", "qhqp", "--n", "1",
                     "--seed-list", "1", "--tol", "1e-42", "--prec", "256",
                     "--out", str(out)])
        assert code == 1
        payload = json.loads(out.read_text())
        assert payload["summary"]["failed"] == 1


class TestInfrastructureExit:
    def test_verifier_crash_exits_three(self):
        # the residue check does not support three variables
        assert main(["verify", "--identity", "ns-residue", "--n", "3"]) == 3
