import json
import subprocess
import sys

import pytest

from cayley_codes.cli import EXIT_INPUT, EXIT_LIMIT, EXIT_OK, SCHEMA, main, run
from cayley_codes.groups import parse_group
from cayley_codes.subsets import parse_subset
from cayley_codes.tiling import is_code

Z6X4 = ["--group", "6x4", "--conn", "{(1,1),(1,2),(3,2),(5,2),(5,3)}"]
Z42 = ["--group", "42", "--conn", "{1,5,6,7,11,12,13,17,18,19,23,24,25,29,30,31,35,36,37,41}"]


def call(*argv):
    code, text = run(list(argv))
    return code, json.loads(text) if text.startswith("{") else text


class TestExamples:
    def test_verify(self):
        code, out = call("verify", *Z6X4, "--code", "{(0,0),(0,2),(3,1),(3,3)}")
        assert code == EXIT_OK and out["schema"] == SCHEMA
        assert out["holds"] and out["graph_definition"] and out["group_ring_identity"]

    def test_verify_negative_is_still_success(self):
        code, out = call("verify", "--group", "12", "--conn", "{1,3,5,7,9,11}", "--code", "{0,6}", "--total")
        assert code == EXIT_OK and out["holds"] is False

    def test_enumerate(self):
        code, out = call("enumerate", "--group", "6", "--conn", "{1,5}")
        assert code == EXIT_OK and out["count"] == 3
        assert out["codes"] == ["{0,3}", "{1,4}", "{2,5}"]

    def test_reduce(self):
        code, out = call("reduce", *Z42, "--solve")
        assert code == EXIT_OK
        assert out["kernel"] == "<0,6,12,18,24,30,36>" and out["kernel_order"] == 7
        assert out["reduced"]["group"] == "6" and out["reduced"]["connection_set"] == "{1,5}"
        assert out["lifted_count"] == 147

    def test_lift(self):
        code, out = call("lift", *Z42, "--code", "{1,4}")
        assert code == EXIT_OK and out["count"] == 49 and "{13,22}" in out["codes"]

    def test_construct(self):
        code, out = call("construct", "--group", "9", "--conn", "{1,8}")
        assert out["moduli"] == [3] and out["code"] == "{0,3,6}"
        code, out = call("construct", "--group", "2x10", "--gens", "{(1,0),(0,5)}", "--total")
        assert code == EXIT_OK
        G = parse_group("2x10")
        assert is_code(G, parse_subset(G, out["connection_set"]), parse_subset(G, out["code"]), True)

    def test_theorem(self):
        code, out = call("theorem", "--group", "5x5", "--conn", "{(1,1),(1,4),(4,1),(4,4)}", "--id", "APCforP")
        assert code == EXIT_OK and out["verdicts"][0]["reason"] == "gate.divisibility"
        code, out = call("theorem", "--group", "4", "--conn", "{1,3}", "--id", "circulant")
        assert out["verdict"]["theorem_id"] == "CTPC.half-order" and out["verdict"]["predicted_admits"]
        code, out = call("theorem", "--group", "2x6", "--conn", "{(0,1),(0,5)}")
        assert all(not v["theorem_id"].startswith("CTPC") for v in out["verdicts"])

    def test_goodness(self):
        assert call("goodness", "--group", "5x5")[1]["matched_type"] == "{p,p}"
        assert call("goodness", "--group", "4x4x4")[1]["is_good"] is False

    def test_cyclotomic(self):
        assert call("cyclotomic", "--n", "4")[1]["coefficients"] == [1, 0, 1]
        code, out = call("cyclotomic", "--group", "9", "--conn", "{0,1,8}", "--prime", "3")
        assert code == EXIT_OK and out["divides"] == {"3": True}

    def test_crossvalidate(self):
        code, out = call("crossvalidate", "--max-cyclic", "12", "--max-two-factor", "8")
        assert code == EXIT_OK and out["clean"] and out["total_checked"] > 0
        code, out = call("crossvalidate", "--instance", "5x5", "{(1,1),(1,4),(4,1),(4,4)}")
        assert out["clean"] and out["total_checked"] == 0 and out["inapplicable"]


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["verify", "--group", "6", "--conn", "{1,5"],
            ["verify", "--group", "6", "--conn", "{1,2}", "--code", "{0}"],
            ["verify", "--group", "0", "--conn", "{}", "--code", "{0}"],
            ["enumerate", "--group", "6"],
            ["enumerate", "--group", "6", "--conn", "{1,5}", "--max-nodes", "0"],
            ["theorem", "--group", "6", "--conn", "{1,5}", "--id", "nope"],
            ["construct", "--group", "6"],
            ["cyclotomic", "--n", "0"],
            ["reduce", "--group", "6", "--conn", "{1,5}", "--total"],
            ["enumerate", "--group", "6", "--conn", "{1,5}", "--config", "/nonexistent.json"],
        ],
    )
    def test_input_errors(self, argv):
        code, out = call(*argv)
        assert code == EXIT_INPUT
        assert out["error"]["type"] in ("input", "precondition") and out["error"]["message"]

    def test_precondition_kind(self):
        code, out = call("reduce", "--group", "6", "--conn", "{1,5}", "--total")
        assert out["error"]["type"] == "precondition"

    def test_limits(self, monkeypatch):
        code, out = call("enumerate", *Z42, "--max-nodes", "20")
        assert code == EXIT_LIMIT and out["limit_hit"] == "max-nodes" and not out["exhaustive"]
        code, out = call("enumerate", *Z42, "--max-order", "10")
        assert code == EXIT_LIMIT and out["error"]["type"] == "limit-exceeded"
        monkeypatch.setenv("CAYLEY_CODES_MAX_ORDER", "10")
        assert call("enumerate", *Z42)[0] == EXIT_LIMIT

    def test_main_streams(self, capsys):
        assert main(["goodness", "--group", "6"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["is_good"]
        assert main(["goodness"]) == EXIT_INPUT
        assert "error" in capsys.readouterr().err


class TestOutput:
    def test_deterministic(self):
        argv = ["enumerate", *Z42, "--mode", "identity-orbit"]
        assert run(argv) == run(argv)
        a = run(["theorem", "--group", "30", "--conn", "{1,3,5,25,27,29}"])[1]
        b = run(["theorem", "--group", "30", "--conn", "{29,27,25,5,3,1}"])[1]
        assert a == b

    def test_round_trip(self):
        for argv, total in [
            (["enumerate", "--group", "6", "--conn", "{1,5}"], False),
            (["enumerate", "--group", "12", "--conn", "{1,3,5,7,9,11}", "--total"], True),
            (["enumerate", "--group", "5x5", "--conn", "{(1,1),(1,4),(4,1),(4,4)}"], False),
        ]:
            out = call(*argv)[1]
            G = parse_group(out["group"])
            S = parse_subset(G, out["connection_set"])
            assert out["codes"]
            for text in out["codes"]:
                assert is_code(G, S, parse_subset(G, text), total)

    def test_table(self):
        code, text = run(["goodness", "--group", "42", "--format", "table"])
        assert code == EXIT_OK
        rows = dict(line.split(None, 1) for line in text.splitlines())
        assert rows["is_good"] == "True" and rows["schema"] == SCHEMA
        code, text = run(["goodness", "--format", "table"])
        assert code == EXIT_INPUT and text.startswith("error")

    def test_config_file(self, tmp_path):
        conf = tmp_path / "limits.json"
        conf.write_text(json.dumps({"max-nodes": 20}))
        assert call("enumerate", *Z42, "--config", str(conf))[0] == EXIT_LIMIT
        # flags win over the file
        assert call("enumerate", *Z42, "--config", str(conf), "--max-nodes", "100000")[0] == EXIT_OK
        conf.write_text(json.dumps({"colour": "red"}))
        assert call("enumerate", *Z42, "--config", str(conf))[0] == EXIT_INPUT
        conf.write_text("{not json")
        assert call("enumerate", *Z42, "--config", str(conf))[0] == EXIT_INPUT

    @pytest.mark.skipif(sys.version_info >= (3, 11), reason="TOML is read natively from 3.11")
    def test_toml_needs_newer_python(self, tmp_path):
        conf = tmp_path / "limits.toml"
        conf.write_text("max_nodes = 20\n")
        code, out = call("enumerate", *Z42, "--config", str(conf))
        assert code == EXIT_INPUT and "3.11" in out["error"]["message"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cayley_codes.cli", "enumerate", "--group", "6", "--conn", "{1,5}"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 3
    proc = subprocess.run([sys.executable, "-m", "cayley_codes.cli", "verify"], capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stderr)["error"]["type"] == "input"
