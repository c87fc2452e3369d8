"""Dataset conversion, templated-sentence extraction, prediction loading.

Three converters turn dataset metadata into formulas:

* ``convert_ruletaker``: quoted-tuple annotations, facts and
  tuple-implication rules.
* ``convert_clutrr``: kinship edges with genders; every edge also
  emits the gendered inverse literal, from a table shipped as a data
  file (data/inverse_relations.json).
* ``convert_lot``: namespaced single-fact records; the predicate is
  de-namespaced by stripping the prefix and splitting case boundaries
  ("/r/CapableOf" becomes "capable of").  That rule is inferred from a
  single observed pair, so a caller can override it per predicate.

``extract_templated`` parses sentences from the templated family
deterministically, driven by the ordered patterns in
data/templates.json rather than by code, so new templates are data
edits.  Failure to match is an error, never a silent skip: dropping a
sentence would quietly inflate downstream accuracy.

Predictions produced by an external (e.g. neural) extractor arrive as
JSONL records ``{"id", "predicted"}``.  Malformed predictions are kept
as errors under their id; scoring counts them as wrong.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Mapping, Optional, Union

from .codec import Conjunction, Formula, MalformedSequence, RuleFormula, decode
from .core import (
    DEFAULT_VARIABLES,
    DuplicateId,
    Fact,
    InvalidRule,
    InvalidTheory,
    Literal,
    LiteralKind,
    Polarity,
    RlsError,
    Rule,
    Theory,
)


class BadAnnotation(RlsError):
    pass


class UnknownRelation(RlsError):
    pass


class MissingGender(RlsError):
    pass


class UnknownValidity(RlsError):
    pass


class NoTemplateMatch(RlsError):
    pass


class UnresolvedSentence(RlsError):
    """One or more sentences could not be turned into formulas."""

    def __init__(self, failures: list[tuple[str, str]]):
        detail = "; ".join(f"{sid}: {reason}" for sid, reason in failures[:5])
        more = "" if len(failures) <= 5 else f" (+{len(failures) - 5} more)"
        super().__init__(f"unresolved sentences: {detail}{more}")
        self.failures = failures


class SentenceRole(Enum):
    FACT = "fact"
    RULE = "rule"
    QUERY = "query"


@dataclass(frozen=True)
class SentenceRecord:
    id: str
    text: str
    role: SentenceRole
    gold: Optional[str] = None

    def __post_init__(self) -> None:
        if self.gold is not None:
            decode(self.gold)  # raises MalformedSequence on bad gold

    def to_dict(self) -> dict:
        doc = {"id": self.id, "text": self.text, "role": self.role.value}
        if self.gold is not None:
            doc["gold"] = self.gold
        return doc

    @classmethod
    def from_dict(cls, data: Mapping) -> "SentenceRecord":
        return cls(
            id=data["id"],
            text=data["text"],
            role=SentenceRole(data["role"]),
            gold=data.get("gold"),
        )


@dataclass(frozen=True)
class PredictionRecord:
    id: str
    predicted: str  # raw model output, possibly malformed by design


# ---------------------------------------------------------------------------
# dataset converters

_QUOTED = re.compile(r'"([^"]*)"')
_TUPLE = re.compile(r"\(([^()]*)\)")


def _annotation_literal(body: str) -> Literal:
    parts = _QUOTED.findall(body)
    if len(parts) != 4:
        raise BadAnnotation(
            f"expected 4 quoted elements in ({body.strip()}), got {len(parts)}"
        )
    a, pred, b, symbol = parts
    if symbol not in ("+", "-"):
        raise BadAnnotation(f"missing polarity symbol in ({body.strip()})")
    kind = LiteralKind.ATTRIBUTE if pred == "is" else LiteralKind.RELATION
    return Literal(kind, a, pred, b, Polarity(symbol))


def _annotation_literals(text: str) -> list[Literal]:
    bodies = _TUPLE.findall(text)
    if not bodies:
        raise BadAnnotation(f"no tuples found in {text.strip()!r}")
    return [_annotation_literal(body) for body in bodies]


def convert_ruletaker(annotation: str) -> Formula:
    """Quoted-tuple fact lists and tuple-implication rules."""
    if "->" in annotation:
        left, _, right = annotation.partition("->")
        if "->" in right:
            raise BadAnnotation("more than one '->' in rule annotation")
        consequents = _annotation_literals(right)
        if len(consequents) != 1:
            raise BadAnnotation("rule annotation needs exactly one consequent tuple")
        return RuleFormula(tuple(_annotation_literals(left)), consequents[0])
    return Conjunction(tuple(_annotation_literals(annotation)))


def _load_packaged_json(name: str) -> dict:
    with resources.files("rls.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


_INVERSE_TABLE: Optional[dict] = None


def inverse_relation_table() -> dict[str, dict[str, str]]:
    global _INVERSE_TABLE
    if _INVERSE_TABLE is None:
        _INVERSE_TABLE = _load_packaged_json("inverse_relations.json")["relations"]
    return _INVERSE_TABLE


def convert_clutrr(
    edges: list[tuple[str, str]],
    edge_types: list[str],
    genders: Mapping[str, str],
    table: Optional[Mapping[str, Mapping[str, str]]] = None,
) -> Conjunction:
    """Each edge (A, B) with relation r yields (A, r, B) and the
    gendered inverse (B, inv(r, gender of A), A), adjacently."""
    if len(edges) != len(edge_types):
        raise BadAnnotation(
            f"{len(edges)} edges but {len(edge_types)} edge types"
        )
    table = table if table is not None else inverse_relation_table()
    literals: list[Literal] = []
    for (a, b), relation in zip(edges, edge_types):
        for endpoint in (a, b):
            if endpoint not in genders:
                raise MissingGender(f"no gender entry for {endpoint!r}")
        if relation not in table:
            raise UnknownRelation(f"no inverse known for relation {relation!r}")
        gendered = table[relation]
        gender = genders[a]
        if gender not in gendered:
            raise MissingGender(f"unknown gender {gender!r} for {a!r}")
        literals.append(Literal(LiteralKind.RELATION, a, relation, b))
        literals.append(Literal(LiteralKind.RELATION, b, gendered[gender], a))
    if not literals:
        raise BadAnnotation("empty edge list")
    return Conjunction(tuple(literals))


_CAMEL = re.compile(r"[A-Z][a-z0-9]*|[a-z0-9]+")

_VALIDITY = {"never true": Polarity.NEGATIVE, "always true": Polarity.POSITIVE}


def denamespace_predicate(predicate: str) -> str:
    name = predicate.rsplit("/", 1)[-1]
    return " ".join(w.lower() for w in _CAMEL.findall(name))


def convert_lot(
    record: Mapping, predicate_overrides: Optional[Mapping[str, str]] = None
) -> Conjunction:
    validity = record["validity"].strip().lower()
    if validity not in _VALIDITY:
        raise UnknownValidity(f"unrecognized validity {record['validity']!r}")
    predicate = record["predicate"]
    if predicate_overrides and predicate in predicate_overrides:
        phrase = predicate_overrides[predicate]
    else:
        phrase = denamespace_predicate(predicate)
    literal = Literal(
        LiteralKind.ATTRIBUTE,
        record["subject"],
        phrase,
        record["object"],
        _VALIDITY[validity],
    )
    return Conjunction((literal,))


# ---------------------------------------------------------------------------
# templated extraction

class _Reject(Exception):
    """Internal: the pattern matched but the action could not build a formula."""


class TemplateGrammar:
    """Ordered sentence patterns plus the word tables they lean on."""

    def __init__(self, doc: Mapping):
        self.hedges: tuple[str, ...] = tuple(doc["hedges"])
        self.tails: tuple[str, ...] = tuple(doc["property_tails"])
        self.variable_words: tuple[str, ...] = tuple(doc["variable_words"])
        self.pronouns: set[str] = set(doc["pronouns"])
        self.third_forms: set[str] = {v["third"] for v in doc["verbs"]}
        self.base_to_third: dict[str, str] = {v["base"]: v["third"] for v in doc["verbs"]}
        verbs3 = "|".join(sorted(self.third_forms))
        verbsbase = "|".join(sorted(self.base_to_third))
        self.patterns: list[tuple[str, re.Pattern, str]] = []
        for entry in doc["patterns"]:
            regex = entry["regex"].replace("{verbs3}", verbs3).replace(
                "{verbsbase}", verbsbase
            )
            self.patterns.append(
                (entry["name"], re.compile(regex, re.IGNORECASE), entry["action"])
            )

    @classmethod
    def load_default(cls) -> "TemplateGrammar":
        return cls(_load_packaged_json("templates.json"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "TemplateGrammar":
        with open(path, "r", encoding="utf-8") as fh:
            return cls(json.load(fh))

    # -- word-level helpers

    def _clean_property(self, text: str) -> str:
        words = text.strip().split()
        while words and words[0].lower() in self.hedges:
            words = words[1:]
        phrase = " ".join(words)
        for tail in self.tails:
            if phrase.lower().endswith(" " + tail):
                phrase = phrase[: -(len(tail) + 1)]
                break
        phrase = phrase.strip()
        if not phrase:
            raise _Reject
        return phrase.lower()

    def _resolve_subject(self, raw: str, hint: Optional[str]) -> str:
        word = raw.strip()
        if word.lower() in self.variable_words:
            return word.lower()
        if word.lower() in self.pronouns:
            if hint is None:
                raise _Reject
            return hint
        return word

    def _split_list(self, text: str) -> list[str]:
        pieces = re.split(r",\s+|\s+and\s+", text.strip(), flags=re.IGNORECASE)
        return [p for p in (piece.strip() for piece in pieces) if p]

    # -- clause parsing (inside if/then bodies)

    _ATTR_CLAUSE = re.compile(r"^(?P<subj>.+?) (?:is|are) (?P<rest>.+)$", re.IGNORECASE)

    def _parse_clause(self, text: str, hint: Optional[str]) -> Optional[Literal]:
        rel_neg = re.match(
            r"^(?P<a>.+?) does not (?P<verb>\w+) (?P<b>.+)$", text, re.IGNORECASE
        )
        if rel_neg and rel_neg.group("verb").lower() in self.base_to_third:
            a = self._resolve_subject(rel_neg.group("a"), hint)
            pred = self.base_to_third[rel_neg.group("verb").lower()]
            return Literal(
                LiteralKind.RELATION, a, pred, rel_neg.group("b"), Polarity.NEGATIVE
            )
        tokens = text.split()
        for i, token in enumerate(tokens[:-1]):
            if i > 0 and token.lower() in self.third_forms:
                a = self._resolve_subject(" ".join(tokens[:i]), hint)
                b = " ".join(tokens[i + 1 :])
                return Literal(LiteralKind.RELATION, a, token.lower(), b)
        attr = self._ATTR_CLAUSE.match(text)
        if attr:
            subject = self._resolve_subject(attr.group("subj"), hint)
            rest = attr.group("rest").strip()
            polarity = Polarity.POSITIVE
            if rest.lower().startswith("not "):
                polarity = Polarity.NEGATIVE
                rest = rest[4:]
            return Literal(
                LiteralKind.ATTRIBUTE, subject, "is", self._clean_property(rest), polarity
            )
        return None

    # -- pattern actions

    def _action_fact_attr(self, m: re.Match) -> Formula:
        subject = self._resolve_subject(m.group("subj"), None)
        literals = []
        for piece in self._split_list(m.group("props")):
            polarity = Polarity.POSITIVE
            if piece.lower().startswith("not "):
                polarity = Polarity.NEGATIVE
                piece = piece[4:]
            literals.append(
                Literal(
                    LiteralKind.ATTRIBUTE, subject, "is", self._clean_property(piece), polarity
                )
            )
        return Conjunction(tuple(literals))

    def _action_fact_rel(self, m: re.Match) -> Formula:
        a = self._resolve_subject(m.group("a"), None)
        return Conjunction(
            (Literal(LiteralKind.RELATION, a, m.group("verb").lower(), m.group("b")),)
        )

    def _action_fact_rel_neg(self, m: re.Match) -> Formula:
        a = self._resolve_subject(m.group("a"), None)
        pred = self.base_to_third[m.group("verb").lower()]
        return Conjunction(
            (Literal(LiteralKind.RELATION, a, pred, m.group("b"), Polarity.NEGATIVE),)
        )

    def _action_rule_people(self, m: re.Match) -> Formula:
        subject = "someone" if m.group("noun").lower() == "people" else "something"
        antecedents = tuple(
            Literal(LiteralKind.ATTRIBUTE, subject, "is", self._clean_property(p))
            for p in self._split_list(m.group("props"))
        )
        rest = m.group("cons").strip()
        polarity = Polarity.POSITIVE
        if rest.lower().startswith("not "):
            polarity = Polarity.NEGATIVE
            rest = rest[4:]
        consequent = Literal(
            LiteralKind.ATTRIBUTE, subject, "is", self._clean_property(rest), polarity
        )
        return RuleFormula(antecedents, consequent)

    def _action_rule_if(self, m: re.Match) -> Formula:
        antecedents: list[Literal] = []
        hint: Optional[str] = None
        for piece in self._split_list(m.group("body")):
            literal = self._parse_clause(piece, hint)
            if literal is None and antecedents:
                # bare continuation: "... is young and nice ..."
                polarity = Polarity.POSITIVE
                if piece.lower().startswith("not "):
                    polarity = Polarity.NEGATIVE
                    piece = piece[4:]
                literal = Literal(
                    LiteralKind.ATTRIBUTE,
                    antecedents[-1].a,
                    "is",
                    self._clean_property(piece),
                    polarity,
                )
            if literal is None:
                raise _Reject
            antecedents.append(literal)
            hint = literal.a
        if not antecedents:
            raise _Reject
        consequent = self._parse_clause(m.group("head"), antecedents[0].a)
        if consequent is None:
            raise _Reject
        return RuleFormula(tuple(antecedents), consequent)

    _ACTIONS = {
        "fact_attr": _action_fact_attr,
        "fact_rel": _action_fact_rel,
        "fact_rel_neg": _action_fact_rel_neg,
        "rule_people": _action_rule_people,
        "rule_if": _action_rule_if,
    }

    def extract(self, sentence: str) -> Formula:
        text = " ".join(sentence.split()).strip()
        while text and text[-1] in ".!?":
            text = text[:-1].rstrip()
        if not text:
            raise NoTemplateMatch("empty sentence")
        for name, pattern, action in self.patterns:
            m = pattern.match(text)
            if not m:
                continue
            try:
                return self._ACTIONS[action](self, m)
            except _Reject:
                continue
        raise NoTemplateMatch(f"no template matches {sentence!r}")


_DEFAULT_GRAMMAR: Optional[TemplateGrammar] = None


def default_grammar() -> TemplateGrammar:
    global _DEFAULT_GRAMMAR
    if _DEFAULT_GRAMMAR is None:
        _DEFAULT_GRAMMAR = TemplateGrammar.load_default()
    return _DEFAULT_GRAMMAR


def extract_templated(sentence: str, grammar: Optional[TemplateGrammar] = None) -> Formula:
    """Deterministic extraction for the templated sentence family."""
    return (grammar or default_grammar()).extract(sentence)


# ---------------------------------------------------------------------------
# predictions and theory assembly

def load_predictions(
    records: Iterable[PredictionRecord],
) -> dict[str, Union[Formula, MalformedSequence]]:
    """Decode predictions; parse failures stay in the map under their id."""
    out: dict[str, Union[Formula, MalformedSequence]] = {}
    for record in records:
        if record.id in out:
            raise DuplicateId(f"duplicate prediction id {record.id!r}")
        try:
            out[record.id] = decode(record.predicted)
        except MalformedSequence as err:
            out[record.id] = err
    return out


def resolve_sentence(
    record: SentenceRecord,
    source: str,
    predictions: Optional[Mapping[str, Union[Formula, MalformedSequence]]] = None,
    grammar: Optional[TemplateGrammar] = None,
) -> Formula:
    """Formula for a sentence from the chosen source (gold | template | predictions)."""
    if source == "gold":
        if record.gold is None:
            raise RlsError("sentence has no gold encoding")
        return decode(record.gold)
    if source == "template":
        return extract_templated(record.text, grammar)
    if source == "predictions":
        if predictions is None or record.id not in predictions:
            raise RlsError("no prediction for this sentence")
        result = predictions[record.id]
        if isinstance(result, MalformedSequence):
            raise result
        return result
    raise RlsError(f"unknown source {source!r} (use gold | template | predictions)")


def theory_from_sentences(
    records: Iterable[SentenceRecord],
    source: str = "gold",
    predictions: Optional[Mapping[str, Union[Formula, MalformedSequence]]] = None,
    grammar: Optional[TemplateGrammar] = None,
    variables: frozenset[str] = DEFAULT_VARIABLES,
) -> Theory:
    """Build a theory from fact and rule sentences.

    Fact conjunctions expand to one fact per literal (ids "sid:0",
    "sid:1", ...); a rule sentence keeps its sentence id.  Query-role
    records are skipped.  Raises UnresolvedSentence listing every
    record that failed, rather than dropping any silently.
    """
    facts: list[Fact] = []
    rules: list[Rule] = []
    provenance: dict[str, str] = {}
    failures: list[tuple[str, str]] = []

    for record in records:
        if record.role is SentenceRole.QUERY:
            continue
        try:
            formula = resolve_sentence(record, source, predictions, grammar)
        except RlsError as err:
            failures.append((record.id, str(err)))
            continue
        if record.role is SentenceRole.FACT:
            if not isinstance(formula, Conjunction):
                failures.append((record.id, "rule-shaped formula for a fact sentence"))
                continue
            bad = [l for l in formula.literals if not l.is_ground(variables)]
            if bad:
                failures.append((record.id, f"fact literal is not ground: {bad[0]}"))
                continue
            for index, literal in enumerate(formula.literals):
                fact_id = f"{record.id}:{index}"
                facts.append(Fact(fact_id, literal))
                provenance[fact_id] = record.id
        else:
            if not isinstance(formula, RuleFormula):
                failures.append((record.id, "fact-shaped formula for a rule sentence"))
                continue
            rule = Rule(record.id, formula.antecedents, formula.consequent)
            try:
                rule.variable(variables)
            except InvalidRule as err:
                failures.append((record.id, str(err)))
                continue
            rules.append(rule)
            provenance[record.id] = record.id

    if failures:
        raise UnresolvedSentence(failures)
    try:
        return Theory(tuple(facts), tuple(rules), provenance, variables)
    except InvalidTheory as err:
        raise UnresolvedSentence([("theory", str(err))])


# ---------------------------------------------------------------------------
# file formats

def read_sentences(lines: Iterable[str]) -> list[SentenceRecord]:
    return [
        SentenceRecord.from_dict(json.loads(line))
        for line in lines
        if line.strip()
    ]


def load_sentences_jsonl(path: Union[str, Path]) -> list[SentenceRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return read_sentences(fh)


def dump_sentences_jsonl(records: Iterable[SentenceRecord], fh: IO[str]) -> None:
    for record in records:
        fh.write(json.dumps(record.to_dict()) + "\n")


def read_prediction_records(lines: Iterable[str]) -> list[PredictionRecord]:
    out = []
    for line in lines:
        if not line.strip():
            continue
        doc = json.loads(line)
        out.append(PredictionRecord(id=doc["id"], predicted=doc["predicted"]))
    return out


def load_predictions_jsonl(
    path: Union[str, Path]
) -> dict[str, Union[Formula, MalformedSequence]]:
    with open(path, "r", encoding="utf-8") as fh:
        return load_predictions(read_prediction_records(fh))


def dump_predictions_jsonl(records: Iterable[PredictionRecord], fh: IO[str]) -> None:
    for record in records:
        fh.write(json.dumps({"id": record.id, "predicted": record.predicted}) + "\n")


def load_clutrr_csv(path: Union[str, Path]) -> list[dict]:
    """Thin loader for CLUTRR-style story metadata.

    Expected columns: id, edges, edge_types, genders.  The edges and
    edge_types cells hold JSON (or Python-literal) lists; genders holds
    either a JSON object or "Name:gender,Name:gender" pairs.
    """
    import ast

    def parse_cell(cell: str):
        cell = cell.strip()
        try:
            return json.loads(cell)
        except json.JSONDecodeError:
            return ast.literal_eval(cell)

    def parse_genders(cell: str) -> dict:
        cell = cell.strip()
        if cell.startswith("{"):
            return parse_cell(cell)
        pairs = [piece.split(":") for piece in cell.split(",") if piece.strip()]
        return {name.strip(): gender.strip() for name, gender in pairs}

    stories = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            stories.append(
                {
                    "id": row["id"],
                    "edges": [tuple(edge) for edge in parse_cell(row["edges"])],
                    "edge_types": list(parse_cell(row["edge_types"])),
                    "genders": parse_genders(row["genders"]),
                }
            )
    return stories
