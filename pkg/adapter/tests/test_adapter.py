"""Adapter contract tests.

The slow one trains the tiny model on 100 generated sentences and
checks the shared-contract criterion: the predictions file is accepted
by the reasoning CLI's evaluator and scores at least 0.5 exact match
on the training sentences.
"""

import json
import subprocess
import sys

import pytest

from rls_adapter import AdapterError, TrainConfig, predict, train, validate_gold
from rls_adapter.adapter import RLS_CLI, read_sentences
from rls_adapter.vocab import TAG_TOKENS, Vocab


def _generate_sentences(path, count=12, seed=100):
    subprocess.run(
        RLS_CLI
        + [
            "gen",
            "--count", str(count),
            "--depth", "3",
            "--neg-prob", "0.2",
            "--seed", str(seed),
            "--out", str(path.parent / "items.jsonl"),
            "--sentences-out", str(path),
        ],
        check=True,
        capture_output=True,
    )


@pytest.fixture(scope="session")
def train_file(tmp_path_factory):
    root = tmp_path_factory.mktemp("data")
    full = root / "sentences_full.jsonl"
    _generate_sentences(full)
    lines = full.read_text().splitlines()[:100]
    assert len(lines) == 100
    path = root / "train100.jsonl"
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture(scope="session")
def artifact(train_file, tmp_path_factory):
    out = tmp_path_factory.mktemp("model") / "artifact"
    train(train_file, out, TrainConfig(epochs=60, seed=0))
    return out


class TestVocab:
    def test_tags_are_atomic_tokens(self):
        vocab = Vocab.build(["<arg0> Harry <pred> is <arg1> young <pos>"])
        for tag in TAG_TOKENS:
            assert tag in vocab.index
        assert vocab.decode(vocab.encode("<arg0> Harry")) == "<arg0> Harry"

    def test_unknown_words_survive_as_unk(self):
        vocab = Vocab.build(["hello world"])
        ids = vocab.encode("hello mars")
        assert vocab.decode(ids) == "hello <unk>"


class TestTrainValidation:
    def test_empty_file_aborts(self, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        with pytest.raises(AdapterError, match="no training records"):
            train(empty, tmp_path / "artifact")

    def test_missing_gold_aborts(self, tmp_path):
        path = tmp_path / "nogold.jsonl"
        path.write_text(json.dumps({"id": "s0", "text": "Harry is young.", "role": "fact"}) + "\n")
        with pytest.raises(AdapterError, match="without gold"):
            train(path, tmp_path / "artifact")

    def test_undecodable_gold_aborts_with_id(self, tmp_path):
        path = tmp_path / "badgold.jsonl"
        records = [
            {"id": "ok", "text": "Harry is young.", "role": "fact",
             "gold": "<arg0> Harry <pred> is <arg1> young <pos>"},
            {"id": "broken", "text": "x", "role": "fact", "gold": "<arg0> nope <impl>"},
        ]
        path.write_text("\n".join(json.dumps(r) for r in records) + "\n")
        with pytest.raises(AdapterError, match="broken"):
            train(path, tmp_path / "artifact")

    def test_gold_exceeding_max_length_aborts_with_id(self, train_file, tmp_path):
        with pytest.raises(AdapterError, match="max_length"):
            train(train_file, tmp_path / "artifact", TrainConfig(epochs=1, max_length=5))

    def test_validate_gold_passes_generated_data(self, train_file):
        validate_gold(read_sentences(train_file))


class TestPredictContract:
    def test_duplicate_ids_rejected_before_inference(self, artifact, tmp_path):
        path = tmp_path / "dup.jsonl"
        record = {"id": "same", "text": "Harry is young.", "role": "fact"}
        path.write_text(json.dumps(record) + "\n" + json.dumps(record) + "\n")
        with pytest.raises(AdapterError, match="duplicate ids"):
            predict(artifact, path, tmp_path / "preds.jsonl")

    def test_prediction_per_input_id_with_exact_schema(self, artifact, train_file, tmp_path):
        out = tmp_path / "preds.jsonl"
        outputs = predict(artifact, train_file, out)
        inputs = read_sentences(train_file)
        assert [o["id"] for o in outputs] == [r["id"] for r in inputs]
        for line, output in zip(out.read_text().splitlines(), outputs):
            doc = json.loads(line)
            assert set(doc) == {"id", "predicted"}
            assert isinstance(doc["predicted"], str)
            # written exactly as generated, no repair
            assert doc == output

    def test_unseen_sentence_still_gets_a_prediction(self, artifact, tmp_path):
        path = tmp_path / "unseen.jsonl"
        path.write_text(
            json.dumps({"id": "u0", "text": "Zanzibar flimflams quietly.", "role": "fact"}) + "\n"
        )
        outputs = predict(artifact, path, tmp_path / "preds.jsonl")
        assert len(outputs) == 1


class TestSharedContractCriterion:
    def test_eval_ingests_predictions_and_scores_above_floor(
        self, artifact, train_file, tmp_path
    ):
        """Toy model, 100 templated training sentences: the reasoning
        CLI must accept the predictions file and report EM >= 0.5."""
        preds = tmp_path / "preds.jsonl"
        predict(artifact, train_file, preds)
        result = subprocess.run(
            RLS_CLI
            + [
                "eval",
                "--golds", str(train_file),
                "--predictions", str(preds),
                "--format", "json",
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        print(
            f"PASS-CHECK: adapter train-set EM {report['em_accuracy']:.2f}, "
            f"malformed {report['malformed_count']}"
        )
        assert report["em_accuracy"] >= 0.5
        assert report["total"] == 100

    def test_training_log_written(self, artifact):
        log_lines = (artifact / "training_log.jsonl").read_text().splitlines()
        assert len(log_lines) == 60
        first, last = json.loads(log_lines[0]), json.loads(log_lines[-1])
        assert last["loss"] < first["loss"]
