import pytest

from rls.core import Literal, LiteralKind, Polarity
from rls.unify import (
    InvalidThreshold,
    UnifierChoice,
    best_match,
    normalize_match_term,
    unify_exact,
    unify_normalized,
    unify_token_containment,
)


def rel(a, pred, b, pol="+"):
    return Literal(LiteralKind.RELATION, a, pred, b, Polarity(pol))


def attr(a, pred, b, pol="+"):
    return Literal(LiteralKind.ATTRIBUTE, a, pred, b, Polarity(pol))


GOLD = rel("Mary", "has", "gold")
HEART_OF_GOLD = rel("Mary", "has", "heart of gold")


class TestExact:
    def test_identity(self):
        record = unify_exact(GOLD, GOLD)
        assert record is not None and record.score == 1.0

    def test_figure_pair_rejected(self):
        assert unify_exact(GOLD, HEART_OF_GOLD) is None

    def test_polarity_mismatch(self):
        assert unify_exact(GOLD, GOLD.negated()) is None


class TestNormalized:
    def test_article_and_case(self):
        needed = attr("mustard", "capable of", "shade from sun", "-")
        candidate = attr("A mustard", "capable of", "shade from sun", "-")
        record = unify_normalized(needed, candidate)
        assert record is not None and record.score == 1.0

    def test_exact_subset(self):
        assert unify_normalized(GOLD, GOLD).score == 1.0

    def test_different_predicates(self):
        assert unify_normalized(GOLD, rel("Mary", "wants", "gold")) is None

    def test_term_normalization(self):
        assert normalize_match_term("The  Heart of Gold") == "heart of gold"
        assert normalize_match_term("a an the sun") == "sun"


class TestTokenContainment:
    def test_figure_example_scores_full(self):
        record = unify_token_containment(GOLD, HEART_OF_GOLD, threshold=0.5)
        assert record is not None
        assert record.score == 1.0

    def test_identity_any_threshold(self):
        for threshold in (0.1, 0.5, 1.0):
            assert unify_token_containment(GOLD, GOLD, threshold).score == 1.0

    def test_disjoint_content(self):
        assert unify_token_containment(GOLD, rel("Mary", "owns", "cats"), 0.3) is None

    def test_subjects_must_match(self):
        assert unify_token_containment(GOLD, rel("Bob", "has", "gold"), 0.5) is None

    def test_polarity_must_match(self):
        assert unify_token_containment(GOLD, HEART_OF_GOLD.negated(), 0.5) is None

    def test_partial_score(self):
        needed = rel("Mary", "has", "shiny gold")
        record = unify_token_containment(needed, GOLD, threshold=0.5)
        # needed tokens {has, shiny, gold}; candidate {has, gold}
        assert record is not None
        assert record.score == pytest.approx(2 / 3)

    def test_below_threshold_rejected(self):
        needed = rel("Mary", "has", "shiny new gold")
        assert unify_token_containment(needed, GOLD, threshold=0.9) is None

    def test_bad_threshold(self):
        with pytest.raises(InvalidThreshold):
            unify_token_containment(GOLD, GOLD, threshold=0.0)
        with pytest.raises(InvalidThreshold):
            unify_token_containment(GOLD, GOLD, threshold=1.5)


class TestAcceptanceNesting:
    PAIRS = [
        (GOLD, GOLD),
        (GOLD, HEART_OF_GOLD),
        (attr("mustard", "capable of", "sun", "-"), attr("The mustard", "capable of", "sun", "-")),
        (rel("Mary", "has", "gold"), rel("mary", "has", "the gold")),
    ]

    def test_exact_implies_normalized_implies_containment(self):
        for needed, candidate in self.PAIRS:
            if unify_exact(needed, candidate):
                assert unify_normalized(needed, candidate)
            if unify_normalized(needed, candidate):
                for threshold in (0.25, 0.5, 1.0):
                    assert unify_token_containment(needed, candidate, threshold)

    def test_scores_in_unit_interval(self):
        for needed, candidate in self.PAIRS:
            record = unify_token_containment(needed, candidate, 0.1)
            if record:
                assert 0.0 <= record.score <= 1.0


class TestBestMatch:
    def test_exact_preferred_over_weak_equal_score(self):
        atoms = {GOLD, HEART_OF_GOLD}
        record = best_match(GOLD, atoms, UnifierChoice.token_containment(0.5))
        assert record.operator == "exact"
        assert record.matched == GOLD

    def test_empty_atoms(self):
        assert best_match(GOLD, set(), UnifierChoice.exact()) is None

    def test_highest_score_wins(self):
        needed = rel("Mary", "has", "bright gold coins")
        # {has, bright, gold, coins}: 3/4 vs 2/4
        strong = rel("Mary", "has", "bright gold")
        weak = rel("Mary", "has", "gold")
        record = best_match(needed, {strong, weak}, UnifierChoice.token_containment(0.4))
        assert record.matched == strong
        assert record.score == 0.75

    def test_deterministic_under_iteration_order(self):
        needed = rel("Mary", "has", "gold")
        a = rel("Mary", "has", "gold bars")
        b = rel("Mary", "has", "gold coins")
        first = best_match(needed, [a, b], UnifierChoice.token_containment(0.4))
        second = best_match(needed, [b, a], UnifierChoice.token_containment(0.4))
        assert first == second


class TestChoiceParsing:
    def test_parse_forms(self):
        assert UnifierChoice.parse("exact").operator == "exact"
        assert UnifierChoice.parse("normalized").operator == "normalized"
        token = UnifierChoice.parse("token:0.7")
        assert token.operator == "token_containment"
        assert token.threshold == 0.7
        assert UnifierChoice.parse("token").threshold == 0.5

    def test_parse_rejects_bad_threshold(self):
        with pytest.raises(InvalidThreshold):
            UnifierChoice.parse("token:2.0")

    def test_spec_round_trip(self):
        for text in ("exact", "normalized", "token:0.5"):
            assert UnifierChoice.parse(text).spec() == text
