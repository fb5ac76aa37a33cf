"""Command-line interface: exit codes, record shapes, and frozen goldens."""

from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from qapipe.cli import main

DATA_DIR = Path(__file__).parent / "data"


def run_json(argv: list[str], out_path: Path) -> dict:
    rc = main(argv + ["--output", str(out_path)])
    assert rc == 0
    lines = out_path.read_text("utf-8").splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


class TestExitCodes:
    def test_empty_question_is_bad_input(self, qa_env):
        rc = main(["analyze", "--config", str(qa_env.config), ""])
        assert rc == 3

    def test_missing_config_is_config_error(self, tmp_path):
        rc = main(["analyze", "--config", str(tmp_path / "absent.json"), "سؤال"])
        assert rc == 2

    def test_missing_data_file_is_data_error(self, qa_env, tmp_path):
        rc = main(
            [
                "train",
                "--config",
                str(qa_env.config),
                "--data",
                str(tmp_path / "absent.jsonl"),
                "--out",
                str(tmp_path / "model.json"),
            ]
        )
        assert rc == 4

    def test_no_focus_is_bad_input(self, qa_env):
        rc = main(["focus", "--config", str(qa_env.config), "لماذا؟"])
        assert rc == 3

    def test_classify_without_model_is_config_error(self):
        rc = main(["classify", "سؤال عادي"])
        assert rc == 2

    def test_bad_corpus_path_is_data_error(self, tmp_path):
        rc = main(
            [
                "index",
                "--corpus",
                str(tmp_path / "absent"),
                "--out",
                str(tmp_path / "index.json"),
            ]
        )
        assert rc == 4


class TestAnalyze:
    def test_record_shape(self, qa_env, tmp_path):
        record = run_json(
            [
                "analyze",
                "--config",
                str(qa_env.config),
                "من هو أول أمريكي صعد الفضاء؟",
            ],
            tmp_path / "out.json",
        )
        assert record["class"] == "HUMAN:individual"
        assert record["focus"]["head_text"] == "امريكي"
        assert [t["surface"] for t in record["tokens"]][0] == "من"

    def test_multi_word_question_joined(self, qa_env, tmp_path):
        record = run_json(
            ["analyze", "--config", str(qa_env.config), "من", "هو", "المخترع؟"],
            tmp_path / "out.json",
        )
        assert record["question"] == "من هو المخترع؟"

    def test_table_format(self, qa_env, capsys):
        rc = main(
            [
                "analyze",
                "--config",
                str(qa_env.config),
                "--format",
                "table",
                "من هو أول أمريكي صعد الفضاء؟",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("question: ")
        assert "tokens:" in out
        assert "expanded:" in out

    def test_stdout_default(self, qa_env, capsys):
        rc = main(["analyze", "--config", str(qa_env.config), "ما هي الجاذبية؟"])
        assert rc == 0
        record = json.loads(capsys.readouterr().out)
        assert record["question"] == "ما هي الجاذبية؟"


class TestClassify:
    def test_first_american_in_space(self, qa_env, tmp_path):
        record = run_json(
            [
                "classify",
                "--config",
                str(qa_env.config),
                "من هو أول أمريكي صعد الفضاء؟",
            ],
            tmp_path / "out.json",
        )
        assert record["class"] == "HUMAN:individual"
        assert record["margin"] >= 0.0

    def test_table_format(self, qa_env, capsys):
        rc = main(
            [
                "classify",
                "--config",
                str(qa_env.config),
                "--format",
                "table",
                "كم عدد الأشهر التي يحتاجها القمر حتى يدور حول الشمس؟",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("class: NUMERIC:count")
        assert "margin:" in out


class TestFocus:
    def test_focus_record(self, qa_env, tmp_path):
        record = run_json(
            [
                "focus",
                "--config",
                str(qa_env.config),
                "ما هي التقنية التي تستخدم لاكتشاف العيوب الخلقية؟",
            ],
            tmp_path / "out.json",
        )
        assert record["focus"]["head_text"] == "التقنية"
        kinds = {m["kind"] for m in record["focus"]["modifiers"]}
        assert "COMP" in kinds

    def test_table_format(self, qa_env, capsys):
        rc = main(
            [
                "focus",
                "--config",
                str(qa_env.config),
                "--format",
                "table",
                "من هو أول أمريكي صعد الفضاء؟",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert out.startswith("focus: اول امريكي صعد الفضاء")
        assert "head: امريكي" in out


class TestExpand:
    def test_synonyms_present(self, qa_env, tmp_path):
        record = run_json(
            [
                "expand",
                "--config",
                str(qa_env.config),
                "ما هي الكارثة الأكثر كلفة والتي واجهت سوق التأمين؟",
            ],
            tmp_path / "out.json",
        )
        by_term = {t["term"]: t for t in record["terms"]}
        assert by_term["كارثة"]["weight"] == 1.0
        assert by_term["كارثة"]["source"] is None
        assert by_term["نكبة"]["weight"] == 0.5
        assert by_term["نكبة"]["source"] == "كارثة"


class TestIndex:
    def test_builds_and_reports(self, qa_env, tmp_path):
        out_index = tmp_path / "index.json"
        record = run_json(
            [
                "index",
                "--corpus",
                str(qa_env.corpus),
                "--out",
                str(out_index),
            ],
            tmp_path / "record.json",
        )
        assert record["documents"] == 30
        assert record["terms"] > 0
        assert out_index.exists()


class TestTrain:
    def test_record_and_reproducible_model(self, qa_env, tmp_path):
        first_model = tmp_path / "m1.json"
        second_model = tmp_path / "m2.json"
        record = run_json(
            [
                "train",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--out",
                str(first_model),
            ],
            tmp_path / "r1.json",
        )
        assert record["examples"] == 25
        assert record["labels"] == 20
        assert record["seed"] == 13
        assert record["epochs"] == 20
        run_json(
            [
                "train",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--out",
                str(second_model),
            ],
            tmp_path / "r2.json",
        )
        assert first_model.read_bytes() == second_model.read_bytes()
        assert (tmp_path / "r1.json").read_text("utf-8").replace(
            str(first_model), "X"
        ) == (tmp_path / "r2.json").read_text("utf-8").replace(str(second_model), "X")

    def test_flag_overrides_config(self, qa_env, tmp_path):
        record = run_json(
            [
                "train",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--out",
                str(tmp_path / "model.json"),
                "--epochs",
                "3",
                "--seed",
                "7",
            ],
            tmp_path / "record.json",
        )
        assert record["epochs"] == 3
        assert record["seed"] == 7


class TestAsk:
    def test_first_president_golden(self, qa_env, tmp_path):
        record = run_json(
            [
                "ask",
                "--config",
                str(qa_env.config),
                "من هو أول رئيس للولايات المتحدة الأمريكية؟",
            ],
            tmp_path / "out.json",
        )
        assert record["class"] == "HUMAN:individual"
        assert record["answers"]
        assert "جورج واشنطن" in record["answers"][0]["text"]

    def test_table_format(self, qa_env, capsys):
        rc = main(
            [
                "ask",
                "--config",
                str(qa_env.config),
                "--format",
                "table",
                "من هو أول أمريكي صعد الفضاء؟",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "answers:" in out
        assert "شيبرد" in out


class TestEval:
    def test_table_matches_frozen_golden(self, qa_env, tmp_path):
        out = tmp_path / "table.txt"
        rc = main(
            [
                "eval",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--format",
                "table",
                "--output",
                str(out),
            ]
        )
        assert rc == 0
        golden = (DATA_DIR / "golden_eval_table.txt").read_text("utf-8")
        assert out.read_text("utf-8") == golden

    def test_record_matches_frozen_golden(self, qa_env, tmp_path):
        out = tmp_path / "record.json"
        rc = main(
            [
                "eval",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--output",
                str(out),
            ]
        )
        assert rc == 0
        golden = (DATA_DIR / "golden_eval_record.json").read_bytes()
        assert out.read_bytes() == golden

    def test_classify_mode(self, qa_env, tmp_path):
        record = run_json(
            [
                "eval",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--mode",
                "classify",
            ],
            tmp_path / "out.json",
        )
        assert record["mode"] == "classify"
        assert record["total"] == 25
        assert record["coarse_accuracy"] == 1.0
        assert record["fine_accuracy"] == 1.0
        assert sum(row["count"] for row in record["confusion"]) == 25

    def test_classify_mode_table(self, qa_env, capsys):
        rc = main(
            [
                "eval",
                "--config",
                str(qa_env.config),
                "--data",
                str(qa_env.questions),
                "--mode",
                "classify",
                "--format",
                "table",
            ]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "coarse accuracy: 1.00" in out
        assert "fine accuracy: 1.00" in out


class TestRepl:
    def test_reads_lines_and_reports_errors(self, qa_env, capsys, monkeypatch):
        monkeypatch.setattr(
            "sys.stdin",
            io.StringIO("من هو أول أمريكي صعد الفضاء؟\n\n؟؟؟\n"),
        )
        rc = main(["repl", "--config", str(qa_env.config)])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        answered = json.loads(lines[0])
        assert answered["answers"]
        failed = json.loads(lines[1])
        assert failed["question"] == "؟؟؟"
        assert "error" in failed


class TestParser:
    def test_help_lists_exit_codes(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--help"])
        assert exc_info.value.code == 0
        assert "exit codes" in capsys.readouterr().out

    def test_unknown_command_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["frobnicate"])
        assert exc_info.value.code == 2
