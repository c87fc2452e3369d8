"""Evaluation metrics: exact-match extraction accuracy and answer accuracy.

Exact match compares canonical encodings, so a prediction that differs
from the gold only in elidable detail (an explicit positive polarity
tag on a relation) still counts as a match, while any prediction that
fails to decode counts as wrong and is tallied in ``malformed_count``.
Answer accuracy runs the full pipeline per item: build the theory from
the configured source, extract the query, reason, compare with the
gold label and bucket by reasoning depth.  Items whose theory cannot
be built or whose evaluation errors out are scored wrong and listed,
never silently excluded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Optional, Union

from ..codec import Conjunction, Formula, MalformedSequence, encode
from ..core import Query, RlsError
from ..ingest import (
    SentenceRecord,
    TemplateGrammar,
    resolve_sentence,
    theory_from_sentences,
)
from ..reasoner import ReasonerConfig, answer


class MissingPrediction(RlsError):
    pass


@dataclass
class DepthStats:
    count: int = 0
    correct: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.count if self.count else 0.0


@dataclass
class EvalReport:
    total: int = 0
    correct: int = 0
    per_depth: dict[int, DepthStats] = field(default_factory=dict)
    em_accuracy: Optional[float] = None
    malformed_count: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def overall_accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0

    def record(self, depth: Optional[int], ok: bool) -> None:
        self.total += 1
        if ok:
            self.correct += 1
        if depth is not None:
            stats = self.per_depth.setdefault(depth, DepthStats())
            stats.count += 1
            if ok:
                stats.correct += 1


def eval_em(
    predictions: Mapping[str, Union[Formula, MalformedSequence]],
    golds: Mapping[str, Formula],
) -> EvalReport:
    """Exact-match accuracy of predicted formulas against gold ones."""
    report = EvalReport()
    for sentence_id in sorted(golds):
        if sentence_id not in predictions:
            raise MissingPrediction(f"no prediction for id {sentence_id!r}")
        gold_encoded = encode(golds[sentence_id])
        predicted = predictions[sentence_id]
        if isinstance(predicted, MalformedSequence):
            report.malformed_count += 1
            report.record(None, False)
            report.failures.append((sentence_id, gold_encoded, f"malformed: {predicted}"))
            continue
        got_encoded = encode(predicted)
        ok = got_encoded == gold_encoded
        report.record(None, ok)
        if not ok:
            report.failures.append((sentence_id, gold_encoded, got_encoded))
    report.em_accuracy = report.overall_accuracy
    return report


@dataclass(frozen=True)
class EvalItem:
    """One question: a theory's sentences, a query sentence, the gold
    truth value and the reasoning depth bucket it belongs to."""

    id: str
    sentences: tuple[SentenceRecord, ...]
    query: SentenceRecord
    label: bool
    depth: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "sentences": [s.to_dict() for s in self.sentences],
            "query": self.query.to_dict(),
            "label": self.label,
            "depth": self.depth,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "EvalItem":
        return cls(
            id=data["id"],
            sentences=tuple(SentenceRecord.from_dict(d) for d in data["sentences"]),
            query=SentenceRecord.from_dict(data["query"]),
            label=bool(data["label"]),
            depth=int(data["depth"]),
        )


def read_eval_items(lines: Iterable[str]) -> list[EvalItem]:
    return [EvalItem.from_dict(json.loads(line)) for line in lines if line.strip()]


def load_eval_items_jsonl(path) -> list[EvalItem]:
    with open(path, "r", encoding="utf-8") as fh:
        return read_eval_items(fh)


def dump_eval_items_jsonl(items: Iterable[EvalItem], fh: IO[str]) -> None:
    for item in items:
        fh.write(json.dumps(item.to_dict()) + "\n")


def _query_from_formula(formula: Formula) -> Query:
    if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
        raise RlsError("query sentence must extract to a single literal")
    return Query(formula.literals[0])


def eval_answers(
    items: Iterable[EvalItem],
    source: str = "gold",
    predictions: Optional[Mapping] = None,
    config: ReasonerConfig = ReasonerConfig(),
    grammar: Optional[TemplateGrammar] = None,
) -> EvalReport:
    """Answer accuracy of the extract-then-reason pipeline, per depth."""
    report = EvalReport()
    for item in items:
        try:
            theory = theory_from_sentences(
                item.sentences, source, predictions, grammar
            )
            query = _query_from_formula(
                resolve_sentence(item.query, source, predictions, grammar)
            )
            truth = answer(theory, query, config).truth
        except RlsError as err:
            report.record(item.depth, False)
            report.failures.append((item.id, str(item.label), f"error: {err}"))
            continue
        ok = truth == item.label
        report.record(item.depth, ok)
        if not ok:
            report.failures.append((item.id, str(item.label), str(truth)))
    return report
