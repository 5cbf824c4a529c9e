"""Tests for the `pecker` command line."""

import json

import pytest

from config.settings import settings
from scripts.pecker_cli import main
from tests.conftest import DESIGNS_DIR, F1_BUG_LINE, STIMULI_DIR

REFERENCE = str(DESIGNS_DIR / "fsm_f1.v")
BUGGY = str(DESIGNS_DIR / "fsm_f1_buggy.v")
STIMULUS = str(STIMULI_DIR / "fsm_f1.json")
F1_EMPC_CSV = "stmt_id,empc\n0,1\n1,1\n2,1\n3,1\n4,1\n5,inf\n6,0\n"


class TestStaticCommands:
    def test_pdg(self, capsys):
        assert main(["pdg", BUGGY]) == 0
        out = capsys.readouterr().out
        assert out.startswith("digraph fsm_f1 {")
        assert "s4 [label=s4 shape=box]" in out

    def test_pdg_to_file(self, tmp_path):
        out = tmp_path / "f1.dot"
        assert main(["pdg", BUGGY, "--out", str(out)]) == 0
        assert "s3 -> s4 [style=dashed]" in out.read_text(encoding="utf-8")

    def test_parse_error_exits_one(self, tmp_path, capsys):
        broken = tmp_path / "broken.v"
        broken.write_text("module m (input a, output y) assign y = a; endmodule", encoding="utf-8")
        assert main(["pdg", str(broken)]) == 1
        assert capsys.readouterr().err.startswith("error: ")

    def test_non_utf8_design_exits_one(self, tmp_path, capsys):
        latin1 = tmp_path / "latin1.v"
        latin1.write_bytes(b"// \xff\nmodule m (input a, output y); assign y = a; endmodule\n")
        assert main(["pdg", str(latin1)]) == 1
        assert "not UTF-8 text" in capsys.readouterr().err


class TestDynamicCommands:
    @pytest.fixture
    def trace_file(self, tmp_path):
        path = tmp_path / "f1.jsonl"
        assert main(["trace", BUGGY, "--stimulus", STIMULUS, "--out", str(path)]) == 0
        return path

    def test_trace(self, trace_file):
        lines = trace_file.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4
        assert json.loads(lines[-1])["pass"] is False

    def test_empc_from_stimulus(self, capsys):
        assert main(["empc", BUGGY, "--stimulus", STIMULUS]) == 0
        assert capsys.readouterr().out == F1_EMPC_CSV

    def test_empc_from_trace(self, trace_file, capsys):
        assert main(["empc", BUGGY, "--trace", str(trace_file)]) == 0
        assert capsys.readouterr().out == F1_EMPC_CSV

    def test_empc_needs_a_failure(self, capsys):
        assert main(["empc", REFERENCE, "--stimulus", STIMULUS]) == 1
        assert "never fails" in capsys.readouterr().err

    def test_localize_report(self, tmp_path, capsys):
        report = tmp_path / "ranked.json"
        code = main(["localize", BUGGY, "--stimulus", STIMULUS, "--top", "3", "--report", str(report)])
        assert code == 0
        out = capsys.readouterr().out
        assert "RANKED STATEMENTS (mode=pecker, truncation=full, first fail at cycle 2)" in out
        assert f"fsm_f1_buggy.v:{F1_BUG_LINE}" in out
        document = json.loads(report.read_text(encoding="utf-8"))
        assert [e["stmt_id"] for e in document["entries"][:3]] == [4, 3, 0]

    def test_localize_from_traces(self, trace_file, capsys):
        assert main(["localize", BUGGY, "--trace", str(trace_file)]) == 0
        assert "  1. s4 " in capsys.readouterr().out

    @pytest.mark.parametrize(
        "flag, mode",
        [("--no-activation-localization", "pecker-no-al"), ("--no-pruning", "pecker-no-ntp")],
    )
    def test_ablation_flags(self, flag, mode, capsys):
        assert main(["localize", BUGGY, "--stimulus", STIMULUS, flag]) == 0
        assert f"mode={mode}" in capsys.readouterr().out

    def test_baseline_mode(self, capsys):
        assert main(["localize", BUGGY, "--stimulus", STIMULUS, "--mode", "ochiai"]) == 0
        out = capsys.readouterr().out
        assert "  1. s3 " in out
        assert "score=" in out

    def test_passing_design_exits_one(self, capsys):
        assert main(["localize", REFERENCE, "--stimulus", STIMULUS]) == 1
        assert capsys.readouterr().err.startswith("error: ")


class TestBenchAndSeed:
    @pytest.fixture
    def manifest(self, tmp_path):
        path = tmp_path / "corpus.json"
        entry = {
            "id": "f1",
            "category": "medium",
            "design": REFERENCE,
            "buggy_design": BUGGY,
            "stimulus": STIMULUS,
            "ground_truth_line": F1_BUG_LINE,
        }
        path.write_text(json.dumps({"name": "one", "entries": [entry]}), encoding="utf-8")
        return path

    def test_bench(self, manifest, tmp_path, capsys):
        out = tmp_path / "reports" / "bench.json"
        code = main(
            ["bench", "--corpus", str(manifest), "--modes", "pecker,ochiai", "--out", str(out), "--quiet"]
        )
        assert code == 0
        assert "Localization effectiveness: one (1 bugs)" in capsys.readouterr().out
        document = json.loads(out.read_text(encoding="utf-8"))
        assert document["bugs"][0]["ranks"] == {"pecker": 1, "ochiai": 6}

    def test_bench_defaults_to_report_dir(self, manifest, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(settings, "report_dir", tmp_path / "default")
        assert main(["bench", "--corpus", str(manifest), "--modes", "pecker", "--quiet"]) == 0
        out = tmp_path / "default" / "one.json"
        assert f"Report written to {out}" in capsys.readouterr().err
        assert json.loads(out.read_text(encoding="utf-8"))["corpus"] == "one"

    def test_bench_unknown_mode(self, manifest, capsys):
        assert main(["bench", "--corpus", str(manifest), "--modes", "pecker,magic"]) == 2
        assert "Unknown modes" in capsys.readouterr().err

    def test_bench_invalid_manifest(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"entries": [{"id": "x"}]}), encoding="utf-8")
        assert main(["bench", "--corpus", str(path), "--quiet"]) == 2
        assert "   - " in capsys.readouterr().err

    def test_seed_needs_inputs(self, capsys):
        assert main(["seed"]) == 2
        assert "--corpus" in capsys.readouterr().err

    def test_seed_mutants(self, capsys):
        code = main(
            ["seed", "--design", REFERENCE, "--stimulus", STIMULUS, "--operators", "wrong_operator"]
        )
        assert code == 0
        [entry] = json.loads(capsys.readouterr().out)["entries"]
        assert entry["id"] == "fsm_f1_0"
        assert entry["mutation"]["line"] == 28
        assert entry["true_activation_cycle"] == 0

    def test_seed_materialize(self, tmp_path, capsys):
        corpus = str(DESIGNS_DIR.parent / "corpus.json")
        assert main(["seed", "--corpus", corpus, "--out-dir", str(tmp_path / "buggy")]) == 0
        assert (tmp_path / "buggy" / "alu_sub.v").is_file()
        assert "MATERIALIZED 25 BUGGY DESIGN(S)" in capsys.readouterr().out
