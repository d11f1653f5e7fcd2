import asyncio
import os

import pandas as pd
import pytest
import ujson

import cantorsum.digits as digits
from cfcore.contfrac import CFExpansion, CFTail
from memory.artifact_store import ArtifactStore, read_json
from orchestrator import ExactApproxOrchestrator, main
from utils.config import OUT_ENV, RunConfig
from utils.evaluator import error_result, evaluate, verdict
from utils.errors import DepthExceededError, DigitSystemError, UnsupportedGammaError


@pytest.fixture(autouse=True)
def _no_out_override(monkeypatch):
    monkeypatch.delenv(OUT_ENV, raising=False)


def _stdout_json(capsys):
    return ujson.loads(capsys.readouterr().out)


def test_verdict_and_exit_codes():
    assert verdict({"a": True, "b": True}) == "passed"
    assert verdict({"a": True, "b": None}) == "undecided"
    assert verdict({"a": None, "b": False}) == "failed"
    assert evaluate({"status": "passed"}) == 0
    assert evaluate({"status": "undecided"}) == 2
    assert evaluate({"status": "failed"}) == 1
    assert evaluate({"type": "error", "status": "passed"}) == 1
    assert evaluate(None) == 1


def test_error_result_counts_depth_as_undecided():
    env = error_result("construct", DepthExceededError("ran out", blocking="x"), needs_more=(DepthExceededError,))
    assert env["status"] == "undecided"
    assert env["details"]["blocking"] == "x"
    env = error_result("construct", UnsupportedGammaError("too small"), needs_more=(DepthExceededError,))
    assert env["status"] == "failed"
    assert env["error"] == "UnsupportedGammaError"


def test_artifact_store_writers(tmp_path):
    store = ArtifactStore(str(tmp_path))
    json_path = store.add("a.json", {"b": 1, "a": "x/y"}, kind="rows")
    text = open(json_path, encoding="utf-8").read()
    assert text.index('"a"') < text.index('"b"')
    assert "x/y" in text and text.endswith("\n")
    csv_path = store.add("rows.csv", [{"q": 1, "p": 2}], kind="rows", columns=["q", "p"])
    assert open(csv_path, encoding="utf-8").read() == "q,p\n1,2\n"
    assert store.paths() == [json_path, csv_path]


def test_spectrum_through_the_orchestrator(tmp_path):
    orchestrator = ExactApproxOrchestrator(str(tmp_path), ["spectrum"])
    result = asyncio.run(orchestrator.handle_request(RunConfig.from_mapping({"command": "spectrum", "limit": 100})))
    assert result["status"] == "passed"
    assert result["markoff"] == [1, 2, 5, 13, 29, 34, 89]
    assert os.path.exists(tmp_path / "spectrum.json")
    assert len(read_json(str(tmp_path / "constants.json"))) >= 15


def test_main_spectrum_csv(tmp_path, capsys):
    rc = main(["spectrum", "--limit", "5", "--format", "csv", "--out", str(tmp_path)])
    assert rc == 0
    envelope = _stdout_json(capsys)
    assert envelope["result"]["markoff"] == [1, 2, 5]
    assert envelope["logs"]
    frame = pd.read_csv(tmp_path / "spectrum.csv")
    assert list(frame.columns) == ["m", "L_exact", "L_decimal"]
    metadata = read_json(str(tmp_path / "metadata.json"))
    assert metadata["exit_code"] == 0
    assert metadata["config"]["limit"] == 5
    assert metadata["finished"] is not None
    assert metadata["artifacts"] == [str(tmp_path / "spectrum.csv"), str(tmp_path / "constants.json")]


def test_main_rejects_gamma_below_the_threshold(tmp_path, capsys):
    rc = main(["construct", "--gamma", "4.5", "--mode", "two", "--out", str(tmp_path)])
    assert rc == 1
    assert _stdout_json(capsys)["result"]["error"] == "UnsupportedGammaError"


def test_main_rejects_a_bad_pad(tmp_path, capsys):
    rc = main(["construct", "--gamma", "6", "--pad", "power:3", "--out", str(tmp_path)])
    assert rc == 1
    assert _stdout_json(capsys)["result"]["details"]["position"] == 6


def test_main_log_pad_is_undecided(tmp_path, capsys):
    rc = main(["construct", "--gamma", "21/4", "--pad", "log", "--blocks", "1", "--lookahead", "40", "--out", str(tmp_path)])
    assert rc == 2
    result = _stdout_json(capsys)["result"]
    assert result["status"] == "undecided"
    assert "pad(q_k)" in result["details"]["blocking"]


def test_main_decompose(tmp_path, capsys):
    rc = main(["decompose", "--target", "6/5", "--system", "F_4", "--width-goal", "1/1000000000000", "--out", str(tmp_path)])
    assert rc == 0
    data = read_json(str(tmp_path / "decomposition.json"))
    assert data["checks"] == {"contains_target": True, "width_goal": True}
    assert set(data["b"]) <= {1, 2, 3, 4} and set(data["c"]) <= {1, 2, 3, 4}


def test_main_verify_golden_ratio(tmp_path, capsys):
    store = ArtifactStore(str(tmp_path))
    alpha_path = store.add("alpha.json", CFExpansion(1, (), CFTail.periodic((1,))).to_dict(), kind="alpha")
    rc = main(["verify", "--alpha", alpha_path, "--gamma", "3", "--Q", "100", "--workers", "2", "--out", str(tmp_path)])
    assert rc == 0
    result = _stdout_json(capsys)["result"]
    assert [1, 1] not in result["solutions"]
    assert [2, 1] in result["solutions"]
    frame = pd.read_csv(tmp_path / "solutions.csv")
    assert list(frame.columns) == ["q", "p", "lhs_hi", "rhs_lo", "verdict"]


@pytest.mark.slow
def test_full_pipeline(tmp_path, capsys):
    out = str(tmp_path)
    assert main(["construct", "--gamma", "7", "--blocks", "2", "--out", out]) == 0
    capsys.readouterr()
    alpha, cert = os.path.join(out, "alpha.json"), os.path.join(out, "certificate.json")
    rc = main(["verify", "--alpha", alpha, "--certificate", cert, "--gamma", "7", "--sign", "minus", "--Q", "3000", "--out", out])
    assert rc == 0
    assert _stdout_json(capsys)["result"]["checks"] == {"decided": True, "certificate": True}
    assert main(["recheck", "--certificate", cert, "--alpha", alpha, "--out", out]) == 0
    assert read_json(os.path.join(out, "recheck.json"))["ok"] is True


def test_startup_validates_the_digit_registry(tmp_path, monkeypatch, capsys):
    orchestrator = ExactApproxOrchestrator(str(tmp_path))
    assert {"F_3", "F_4", "FJ"} <= set(orchestrator.registry)
    monkeypatch.setattr(digits, "MAX_EXTREMAL_PERIOD", 0)
    with pytest.raises(DigitSystemError):
        ExactApproxOrchestrator(str(tmp_path))
    assert main(["spectrum", "--limit", "5", "--out", str(tmp_path)]) == 1
    assert "period" in _stdout_json(capsys)["result"]["response"]
