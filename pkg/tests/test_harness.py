import io
import re

import pytest

from rls.codec import decode, encode
from rls.harness import (
    GenParams,
    GenerationFailed,
    generate_theory,
    eval_answers,
    eval_em,
    report_to_dict,
    report_to_markdown,
)
from rls.harness.metrics import (
    EvalItem,
    MissingPrediction,
    dump_eval_items_jsonl,
    read_eval_items,
)
from rls.ingest import extract_templated, load_predictions, PredictionRecord
from rls.naive import naive_closure


def formulas(*encodings):
    return {f"s{i}": decode(text) for i, text in enumerate(encodings)}


GOLD = formulas(
    "<arg0> Harry <pred> is <arg1> young <pos>",
    "<arg1> Sol <pred> son <arg2> Kent",
    "<arg0> mustard <pred> capable of <arg1> shade from sun <neg>",
)


class TestEvalEm:
    def test_perfect(self):
        report = eval_em(GOLD, GOLD)
        assert report.em_accuracy == 1.0
        assert report.malformed_count == 0

    def test_malformed_counts_as_wrong(self):
        predictions = dict(GOLD)
        loaded = load_predictions([PredictionRecord("s0", "<arg0> broken")])
        predictions["s0"] = loaded["s0"]
        report = eval_em(predictions, GOLD)
        assert report.malformed_count == 1
        assert report.em_accuracy == pytest.approx(2 / 3)
        assert report.failures[0][0] == "s0"

    def test_canonicalization_bridges_elided_polarity(self):
        predictions = dict(GOLD)
        predictions["s1"] = decode("<arg1> Sol <pred> son <arg2> Kent <pos>")
        report = eval_em(predictions, GOLD)
        assert report.em_accuracy == 1.0

    def test_missing_prediction(self):
        predictions = {k: v for k, v in GOLD.items() if k != "s2"}
        with pytest.raises(MissingPrediction):
            eval_em(predictions, GOLD)

    def test_self_score_is_one(self):
        for _ in range(3):
            assert eval_em(GOLD, GOLD).em_accuracy == 1.0


class TestGenerator:
    def test_deterministic(self):
        params = GenParams(seed=5, depth=4, negation_prob=0.3)
        first = generate_theory(params)
        second = generate_theory(params)
        assert [s.to_dict() for s in first.sentences] == [
            s.to_dict() for s in second.sentences
        ]
        assert [q.record.to_dict() for q in first.queries] == [
            q.record.to_dict() for q in second.queries
        ]

    def test_target_depth_reached(self):
        instance = generate_theory(GenParams(seed=3, depth=5, properties=12, rules=8))
        assert any(q.depth == 5 for q in instance.queries)
        oracle = naive_closure(instance.theory)
        assert 5 in set(oracle.depths.values())

    def test_depth_unreachable_fails(self):
        with pytest.raises(GenerationFailed):
            generate_theory(GenParams(seed=0, depth=5, properties=3))
        with pytest.raises(GenerationFailed):
            generate_theory(GenParams(seed=0, depth=5, rules=2))

    def test_negation_free_when_probability_zero(self):
        from rls.core import Polarity

        instance = generate_theory(GenParams(seed=9, depth=3, negation_prob=0.0))
        for fact in instance.theory.facts:
            assert fact.literal.polarity is Polarity.POSITIVE
        for rule in instance.theory.rules:
            for literal in rule.literals():
                assert literal.polarity is Polarity.POSITIVE

    def test_sentences_extract_to_gold(self):
        for seed in range(25):
            instance = generate_theory(
                GenParams(seed=seed, depth=seed % 5, negation_prob=0.3 if seed % 3 else 0.0)
            )
            for record in instance.sentences:
                formula = extract_templated(record.text)
                assert encode(formula) == record.gold, record.text

    def test_gold_source_accuracy_is_perfect(self):
        items = []
        for seed in range(10):
            items.extend(generate_theory(GenParams(seed=seed, depth=3)).eval_items(f"i{seed}:"))
        report = eval_answers(items, source="gold")
        assert report.overall_accuracy == 1.0
        for stats in report.per_depth.values():
            assert stats.accuracy == 1.0

    def test_unbuildable_theory_counts_as_wrong(self):
        instance = generate_theory(GenParams(seed=1, depth=2))
        items = instance.eval_items()
        predictions = {s.id: decode(s.gold) for s in instance.sentences}
        predictions.update({q.record.id: decode(q.record.gold) for q in instance.queries})
        broken = load_predictions(
            [PredictionRecord(items[0].sentences[0].id, "<arg0> nope")]
        )
        predictions[items[0].sentences[0].id] = broken[items[0].sentences[0].id]
        report = eval_answers(items, source="predictions", predictions=predictions)
        assert report.correct < report.total
        assert report.failures


class TestEvalItemsIo:
    def test_round_trip(self):
        instance = generate_theory(GenParams(seed=2, depth=2))
        items = instance.eval_items()
        buffer = io.StringIO()
        dump_eval_items_jsonl(items, buffer)
        again = read_eval_items(buffer.getvalue().splitlines())
        assert again == items


class TestReports:
    def report(self):
        items = generate_theory(GenParams(seed=4, depth=3)).eval_items()
        return eval_answers(items, source="gold")

    def test_json_schema(self):
        doc = report_to_dict(self.report())
        assert doc["schema_version"] == 1
        assert doc["total"] == sum(b["count"] for b in doc["per_depth"].values())

    def test_markdown_lossless(self):
        report = self.report()
        text = report_to_markdown(report)
        rows = re.findall(r"^\| (\S+) \| (\d+) \| (\d+) \| ([\d.]+) \|$", text, re.M)
        by_depth = {row[0]: (int(row[1]), int(row[2])) for row in rows}
        assert by_depth["All"] == (report.total, report.correct)
        for depth, stats in report.per_depth.items():
            assert by_depth[str(depth)] == (stats.count, stats.correct)
        for row in rows:
            count, correct = int(row[1]), int(row[2])
            rendered = float(row[3])
            assert rendered == pytest.approx(
                100.0 * (correct / count if count else 0.0), abs=0.005
            )

    def test_overall_is_weighted_mean(self):
        report = self.report()
        weighted = sum(s.correct for s in report.per_depth.values())
        counts = sum(s.count for s in report.per_depth.values())
        assert report.total == counts
        assert report.overall_accuracy == pytest.approx(weighted / counts)
