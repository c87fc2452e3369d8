import io
import json

import pytest

from rls.codec import Conjunction, MalformedSequence, RuleFormula, encode
from rls.core import DuplicateId, Literal, LiteralKind, Polarity
from rls.ingest import (
    BadAnnotation,
    MissingGender,
    NoTemplateMatch,
    PredictionRecord,
    SentenceRecord,
    SentenceRole,
    UnknownRelation,
    UnknownValidity,
    UnresolvedSentence,
    convert_clutrr,
    convert_lot,
    convert_ruletaker,
    denamespace_predicate,
    dump_predictions_jsonl,
    extract_templated,
    load_predictions,
    read_prediction_records,
    read_sentences,
    theory_from_sentences,
)


def attr(a, pred, b, pol="+"):
    return Literal(LiteralKind.ATTRIBUTE, a, pred, b, Polarity(pol))


def rel(a, pred, b, pol="+"):
    return Literal(LiteralKind.RELATION, a, pred, b, Polarity(pol))


class TestConvertRuletaker:
    def test_fact_pair(self):
        formula = convert_ruletaker('("Harry" "is" "young" "+")  ("Harry" "is" "nice" "+")')
        assert formula == Conjunction((attr("Harry", "is", "young"), attr("Harry", "is", "nice")))

    def test_rule(self):
        formula = convert_ruletaker('("someone" "is" "nice" "+") -> ("someone" "is" "round" "+")')
        assert formula == RuleFormula(
            (attr("someone", "is", "nice"),), attr("someone", "is", "round")
        )

    def test_relation_kind(self):
        formula = convert_ruletaker('("Harry" "sees" "Bob" "-")')
        assert formula.literals[0].kind is LiteralKind.RELATION
        assert formula.literals[0].polarity is Polarity.NEGATIVE

    def test_arity_three_rejected(self):
        with pytest.raises(BadAnnotation):
            convert_ruletaker('("Harry" "is" "young")')

    def test_bad_polarity_symbol_rejected(self):
        with pytest.raises(BadAnnotation):
            convert_ruletaker('("Harry" "is" "young" "?")')

    def test_gold_encoding_matches_table(self):
        formula = convert_ruletaker('("Harry" "is" "young" "+")  ("Harry" "is" "nice" "+")')
        assert encode(formula) == (
            "<arg0> Harry <pred> is <arg1> young <pos> <and> "
            "<arg0> Harry <pred> is <arg1> nice <pos>"
        )


class TestConvertClutrr:
    def test_gendered_inverse(self):
        formula = convert_clutrr(
            [("Sol", "Kent")], ["son"], {"Sol": "female", "Kent": "male"}
        )
        assert formula == Conjunction((rel("Sol", "son", "Kent"), rel("Kent", "mother", "Sol")))

    def test_male_inverse(self):
        formula = convert_clutrr(
            [("Sol", "Kent")], ["son"], {"Sol": "male", "Kent": "male"}
        )
        assert formula.literals[1] == rel("Kent", "father", "Sol")

    def test_unknown_relation(self):
        with pytest.raises(UnknownRelation):
            convert_clutrr([("A", "B")], ["neighbor"], {"A": "female", "B": "male"})

    def test_missing_gender(self):
        with pytest.raises(MissingGender):
            convert_clutrr([("A", "B")], ["son"], {"A": "female"})

    def test_even_literal_count_with_adjacent_inverses(self):
        formula = convert_clutrr(
            [("A", "B"), ("B", "C")],
            ["sister", "uncle"],
            {"A": "female", "B": "male", "C": "female"},
        )
        assert len(formula.literals) % 2 == 0
        for k in range(0, len(formula.literals), 2):
            forward, inverse = formula.literals[k], formula.literals[k + 1]
            assert forward.a == inverse.b and forward.b == inverse.a

    def test_encoding_matches_table(self):
        formula = convert_clutrr(
            [("Sol", "Kent")], ["son"], {"Sol": "female", "Kent": "male"}
        )
        assert encode(formula) == (
            "<arg1> Sol <pred> son <arg2> Kent <and> <arg1> Kent <pred> mother <arg2> Sol"
        )


class TestConvertLot:
    RECORD = {
        "subject": "mustard",
        "predicate": "/r/CapableOf",
        "object": "shade from sun",
        "validity": "never true",
    }

    def test_table_row(self):
        formula = convert_lot(self.RECORD)
        assert formula == Conjunction((attr("mustard", "capable of", "shade from sun", "-"),))
        assert encode(formula) == "<arg0> mustard <pred> capable of <arg1> shade from sun <neg>"

    def test_always_true_is_positive(self):
        record = dict(self.RECORD, validity="always true")
        assert convert_lot(record).literals[0].polarity is Polarity.POSITIVE

    def test_unknown_validity(self):
        with pytest.raises(UnknownValidity):
            convert_lot(dict(self.RECORD, validity="sometimes"))

    def test_denamespacing(self):
        assert denamespace_predicate("/r/CapableOf") == "capable of"
        assert denamespace_predicate("/r/IsA") == "is a"
        assert denamespace_predicate("HasPart") == "has part"

    def test_override(self):
        formula = convert_lot(self.RECORD, predicate_overrides={"/r/CapableOf": "can"})
        assert formula.literals[0].pred == "can"


class TestExtractTemplated:
    def test_table_fact(self):
        formula = extract_templated("Harry is young and nice.")
        assert formula == Conjunction((attr("Harry", "is", "young"), attr("Harry", "is", "nice")))

    def test_table_rule_with_hedge_and_tail(self):
        formula = extract_templated("Nice people are usually round in shape.")
        assert formula == RuleFormula(
            (attr("someone", "is", "nice"),), attr("someone", "is", "round")
        )

    def test_out_of_grammar(self):
        with pytest.raises(NoTemplateMatch):
            extract_templated("To his chagrin, blorp zag.")

    def test_negated_attribute(self):
        formula = extract_templated("Harry is not young.")
        assert formula == Conjunction((attr("Harry", "is", "young", "-"),))

    def test_relation_fact(self):
        assert extract_templated("Harry sees Bob.") == Conjunction((rel("Harry", "sees", "Bob"),))

    def test_negated_relation(self):
        formula = extract_templated("Harry does not see Bob.")
        assert formula == Conjunction((rel("Harry", "sees", "Bob", "-"),))

    def test_if_then_with_pronoun(self):
        formula = extract_templated("If someone is nice and young then they are round.")
        assert formula == RuleFormula(
            (attr("someone", "is", "nice"), attr("someone", "is", "young")),
            attr("someone", "is", "round"),
        )

    def test_if_then_ground_subject(self):
        formula = extract_templated("If Harry is nice then Harry is round.")
        assert formula == RuleFormula((attr("Harry", "is", "nice"),), attr("Harry", "is", "round"))

    def test_if_then_negative_consequent(self):
        formula = extract_templated("If someone is cold then they are not happy.")
        assert formula.consequent == attr("someone", "is", "happy", "-")

    def test_if_then_negative_antecedent(self):
        formula = extract_templated("If someone is not cold then they are happy.")
        assert formula.antecedents == (attr("someone", "is", "cold", "-"),)

    def test_all_people_rule(self):
        formula = extract_templated("All green things are big.")
        assert formula == RuleFormula(
            (attr("something", "is", "green"),), attr("something", "is", "big")
        )

    def test_relation_antecedent(self):
        formula = extract_templated("If someone sees Bob then they are happy.")
        assert formula == RuleFormula(
            (rel("someone", "sees", "Bob"),), attr("someone", "is", "happy")
        )

    def test_bare_continuation_in_body(self):
        formula = extract_templated("If someone is nice and kind and Bob sees Anne then they are happy.")
        assert formula.antecedents == (
            attr("someone", "is", "nice"),
            attr("someone", "is", "kind"),
            rel("Bob", "sees", "Anne"),
        )


class TestPredictions:
    def test_load_and_keep_malformed(self):
        records = [
            PredictionRecord("a", "<arg0> Harry <pred> is <arg1> young <pos>"),
            PredictionRecord("b", "<arg0> Harry <pred> is"),
        ]
        loaded = load_predictions(records)
        assert isinstance(loaded["a"], Conjunction)
        assert isinstance(loaded["b"], MalformedSequence)

    def test_duplicate_id(self):
        records = [PredictionRecord("a", "x"), PredictionRecord("a", "y")]
        with pytest.raises(DuplicateId):
            load_predictions(records)

    def test_jsonl_round_trip(self):
        records = [PredictionRecord("a", "<arg1> Sol <pred> son <arg2> Kent")]
        buffer = io.StringIO()
        dump_predictions_jsonl(records, buffer)
        assert read_prediction_records(buffer.getvalue().splitlines()) == records


class TestTheoryFromSentences:
    def sentences(self):
        return [
            SentenceRecord(
                "s0",
                "Harry is young and nice.",
                SentenceRole.FACT,
                gold="<arg0> Harry <pred> is <arg1> young <pos> <and> <arg0> Harry <pred> is <arg1> nice <pos>",
            ),
            SentenceRecord(
                "s1",
                "Nice people are usually round in shape.",
                SentenceRole.RULE,
                gold="<arg0> someone <pred> is <arg1> nice <pos> <impl> <arg0> someone <pred> is <arg1> round <pos>",
            ),
        ]

    def test_gold_source(self):
        theory = theory_from_sentences(self.sentences(), source="gold")
        assert len(theory.facts) == 2
        assert len(theory.rules) == 1
        assert theory.provenance["s0:0"] == "s0"
        assert theory.provenance["s1"] == "s1"

    def test_template_source_matches_gold(self):
        gold = theory_from_sentences(self.sentences(), source="gold")
        templated = theory_from_sentences(self.sentences(), source="template")
        assert gold.to_dict() == templated.to_dict()

    def test_empty_records(self):
        theory = theory_from_sentences([])
        assert theory.facts == () and theory.rules == ()

    def test_malformed_prediction_reported(self):
        predictions = load_predictions(
            [PredictionRecord("s0", "garbage"), PredictionRecord("s1", "garbage")]
        )
        with pytest.raises(UnresolvedSentence) as err:
            theory_from_sentences(self.sentences(), source="predictions", predictions=predictions)
        assert {sid for sid, _ in err.value.failures} == {"s0", "s1"}

    def test_role_mismatch_reported(self):
        records = [
            SentenceRecord(
                "s0",
                "Harry is young.",
                SentenceRole.RULE,
                gold="<arg0> Harry <pred> is <arg1> young <pos>",
            )
        ]
        with pytest.raises(UnresolvedSentence):
            theory_from_sentences(records, source="gold")

    def test_gold_invariant_on_sentence_record(self):
        with pytest.raises(MalformedSequence):
            SentenceRecord("s0", "x", SentenceRole.FACT, gold="<arg0> broken")

    def test_read_sentences_jsonl(self):
        lines = [
            json.dumps({"id": "s0", "text": "Harry is young.", "role": "fact"}),
            json.dumps({"id": "q0", "text": "Harry is young.", "role": "query"}),
        ]
        records = read_sentences(lines)
        assert records[0].role is SentenceRole.FACT
        assert records[1].role is SentenceRole.QUERY
