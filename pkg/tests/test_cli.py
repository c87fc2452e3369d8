import json
import subprocess
import sys

import pytest

from rls.cli import main
from rls.core import Theory


@pytest.fixture
def theory_file(tmp_path):
    from rls.core import Fact, Literal, LiteralKind, Polarity, Rule

    def attr(a, pred, b, pol="+"):
        return Literal(LiteralKind.ATTRIBUTE, a, pred, b, Polarity(pol))

    theory = Theory(
        facts=(
            Fact("f1", attr("Harry", "is", "young")),
            Fact("f2", attr("Harry", "is", "nice")),
        ),
        rules=(
            Rule("r1", (attr("someone", "is", "nice"),), attr("someone", "is", "round")),
        ),
    )
    path = tmp_path / "theory.json"
    path.write_text(theory.to_json())
    return str(path)


@pytest.fixture
def sentences_file(tmp_path):
    lines = [
        {"id": "s0", "text": "Harry is young and nice.", "role": "fact"},
        {"id": "s1", "text": "Nice people are usually round in shape.", "role": "rule"},
        {"id": "q0", "text": "Harry is round.", "role": "query"},
    ]
    path = tmp_path / "sentences.jsonl"
    path.write_text("\n".join(json.dumps(line) for line in lines) + "\n")
    return str(path)


class TestReason:
    def test_true_query_text(self, theory_file, capsys):
        code = main(
            [
                "reason",
                "--theory",
                theory_file,
                "--query",
                "<arg0> Harry <pred> is <arg1> round <pos>",
            ]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("true")
        assert "[rule r1" in out

    def test_json_format(self, theory_file, capsys):
        main(
            [
                "reason",
                "--theory",
                theory_file,
                "--query",
                "<arg0> Harry <pred> is <arg1> green <neg>",
                "--format",
                "json",
            ]
        )
        doc = json.loads(capsys.readouterr().out)
        assert doc["truth"] is True
        assert doc["proof"]["kind"] == "naf"

    def test_sentences_with_template_source(self, sentences_file, capsys):
        code = main(
            [
                "reason",
                "--sentences",
                sentences_file,
                "--source",
                "template",
                "--query",
                "<arg0> Harry <pred> is <arg1> round <pos>",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out.startswith("true")

    def test_malformed_query_errors(self, theory_file, capsys):
        code = main(["reason", "--theory", theory_file, "--query", "<arg0> nope"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestExtractAndEval:
    def test_extract_then_em_eval(self, tmp_path, capsys):
        golds = tmp_path / "gold.jsonl"
        code = main(
            [
                "gen",
                "--count",
                "4",
                "--depth",
                "2",
                "--seed",
                "11",
                "--out",
                str(tmp_path / "items.jsonl"),
                "--sentences-out",
                str(golds),
            ]
        )
        assert code == 0
        capsys.readouterr()

        predictions = tmp_path / "preds.jsonl"
        code = main(
            ["extract", "--sentences", str(golds), "--out", str(predictions)]
        )
        assert code == 0
        capsys.readouterr()

        code = main(
            [
                "eval",
                "--golds",
                str(golds),
                "--predictions",
                str(predictions),
                "--format",
                "json",
            ]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["em_accuracy"] == 1.0
        assert doc["malformed_count"] == 0

    def test_answer_eval_per_depth(self, tmp_path, capsys):
        items = tmp_path / "items.jsonl"
        main(["gen", "--count", "5", "--depth", "3", "--seed", "2", "--out", str(items)])
        capsys.readouterr()
        code = main(
            ["eval", "--dataset", str(items), "--source", "template", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["overall_accuracy"] == 1.0
        assert set(doc["per_depth"]) == {"0", "1", "2", "3"}

    def test_markdown_report_shape(self, tmp_path, capsys):
        items = tmp_path / "items.jsonl"
        main(["gen", "--count", "3", "--depth", "2", "--seed", "6", "--out", str(items)])
        capsys.readouterr()
        main(["eval", "--dataset", str(items)])
        out = capsys.readouterr().out
        assert "| Depth | Questions | Correct | Accuracy |" in out
        assert "| All |" in out


class TestOtherCommands:
    def test_enumerate(self, theory_file, capsys):
        main(["enumerate", "--theory", theory_file])
        assert "(Harry, is, round, +)  (depth 1)" in capsys.readouterr().out

    def test_contradictions_clean(self, theory_file, capsys):
        main(["contradictions", "--theory", theory_file])
        assert "no contradictions" in capsys.readouterr().out

    def test_abduce(self, tmp_path, capsys):
        theory = Theory.from_json(
            json.dumps(
                {
                    "facts": [
                        {"id": "f1", "a": "Harry", "pred": "is", "b": "young", "kind": "attr", "polarity": "+"}
                    ],
                    "rules": [
                        {
                            "id": "r1",
                            "antecedents": [
                                {"a": "someone", "pred": "is", "b": "nice", "kind": "attr", "polarity": "+"}
                            ],
                            "consequent": {"a": "someone", "pred": "is", "b": "round", "kind": "attr", "polarity": "+"},
                        }
                    ],
                }
            )
        )
        path = tmp_path / "t.json"
        path.write_text(theory.to_json())
        main(
            [
                "abduce",
                "--theory",
                str(path),
                "--query",
                "<arg0> Harry <pred> is <arg1> round <pos>",
            ]
        )
        assert "(Harry, is, nice, +)" in capsys.readouterr().out

    def test_unifier_flag(self, tmp_path, capsys):
        doc = {
            "facts": [
                {"id": "f1", "a": "Mary", "pred": "has", "b": "heart of gold", "kind": "rel", "polarity": "+"}
            ],
            "rules": [
                {
                    "id": "r1",
                    "antecedents": [
                        {"a": "Mary", "pred": "has", "b": "gold", "kind": "rel", "polarity": "+"}
                    ],
                    "consequent": {"a": "Mary", "pred": "is", "b": "rich", "kind": "attr", "polarity": "+"},
                }
            ],
        }
        path = tmp_path / "t.json"
        path.write_text(json.dumps(doc))
        main(
            [
                "reason",
                "--theory",
                str(path),
                "--unifier",
                "token:0.5",
                "--query",
                "<arg0> Mary <pred> is <arg1> rich <pos>",
            ]
        )
        out = capsys.readouterr().out
        assert out.startswith("true")
        assert "token_containment" in out

    def test_entry_point_runs(self):
        result = subprocess.run(
            [sys.executable, "-m", "rls.cli", "--help"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "extract" in result.stdout
