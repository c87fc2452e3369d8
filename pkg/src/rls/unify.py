"""Literal-matching operators for antecedent satisfaction.

Exact matching is the baseline; the weaker operators let the reasoner
bridge small surface differences ("gold" vs "heart of gold") while
recording every match it makes, so the proof shows which equivalences
were assumed.

Three operators ship:

* ``exact``       - strict equality of all fields.
* ``normalized``  - equality after lowercasing, whitespace collapsing
                    and stripping leading articles (a/an/the).
* ``token_containment`` - subjects must agree under normalization and
  polarity must match; the score is the fraction of the needed
  literal's predicate+object tokens found in the candidate's.
  Containment rather than symmetric overlap: a needed "(Mary, has,
  gold)" should match the richer fact "(Mary, has, heart of gold)" at
  full score, which Jaccard would halve.

Operators accept in a strict chain: exact implies normalized implies
containment at any threshold.  An interface for model-backed scoring
exists (register_operator) but no trained operator ships.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import Literal, RlsError

ARTICLES = ("a", "an", "the")

OPERATOR_EXACT = "exact"
OPERATOR_NORMALIZED = "normalized"
OPERATOR_TOKEN_CONTAINMENT = "token_containment"


class InvalidThreshold(RlsError):
    pass


@dataclass(frozen=True)
class UnificationRecord:
    """One accepted match: which literal was needed, which atom was used."""

    needed: Literal
    matched: Literal
    score: float
    operator: str

    def to_dict(self) -> dict:
        return {
            "needed": self.needed.to_dict(),
            "matched": self.matched.to_dict(),
            "score": self.score,
            "operator": self.operator,
        }


@dataclass(frozen=True)
class UnifierChoice:
    """Which operator the reasoner should use; parsed from ``exact``,
    ``normalized`` or ``token:<threshold>``."""

    operator: str = OPERATOR_EXACT
    threshold: float = 1.0

    def __post_init__(self) -> None:
        if self.operator == OPERATOR_TOKEN_CONTAINMENT:
            _check_threshold(self.threshold)

    @classmethod
    def exact(cls) -> "UnifierChoice":
        return cls(OPERATOR_EXACT)

    @classmethod
    def normalized(cls) -> "UnifierChoice":
        return cls(OPERATOR_NORMALIZED)

    @classmethod
    def token_containment(cls, threshold: float = 0.5) -> "UnifierChoice":
        return cls(OPERATOR_TOKEN_CONTAINMENT, threshold)

    @classmethod
    def parse(cls, text: str) -> "UnifierChoice":
        text = text.strip()
        if text == "exact":
            return cls.exact()
        if text == "normalized":
            return cls.normalized()
        if text == "token":
            return cls.token_containment()
        if text.startswith("token:"):
            try:
                threshold = float(text.split(":", 1)[1])
            except ValueError:
                raise InvalidThreshold(f"bad threshold in {text!r}")
            return cls.token_containment(threshold)
        raise RlsError(f"unknown unifier {text!r} (use exact | normalized | token:<t>)")

    def spec(self) -> str:
        if self.operator == OPERATOR_TOKEN_CONTAINMENT:
            return f"token:{self.threshold}"
        return self.operator


def _check_threshold(threshold: float) -> None:
    if not (0.0 < threshold <= 1.0):
        raise InvalidThreshold(f"threshold must be in (0, 1], got {threshold}")


def _strip_articles(words: list[str]) -> list[str]:
    while words and words[0] in ARTICLES:
        words = words[1:]
    return words


def normalize_match_term(term: str) -> str:
    """Lowercase, collapse whitespace, drop leading articles."""
    words = _strip_articles(term.lower().split())
    return " ".join(words)


def _normalized_tuple(lit: Literal) -> tuple:
    return (
        lit.kind,
        normalize_match_term(lit.a),
        normalize_match_term(lit.pred),
        normalize_match_term(lit.b),
        lit.polarity,
    )


def unify_exact(needed: Literal, candidate: Literal) -> Optional[UnificationRecord]:
    if needed == candidate:
        return UnificationRecord(needed, candidate, 1.0, OPERATOR_EXACT)
    return None


def unify_normalized(needed: Literal, candidate: Literal) -> Optional[UnificationRecord]:
    if _normalized_tuple(needed) == _normalized_tuple(candidate):
        return UnificationRecord(needed, candidate, 1.0, OPERATOR_NORMALIZED)
    return None


def _content_tokens(lit: Literal) -> set[str]:
    return set(normalize_match_term(lit.pred).split()) | set(
        normalize_match_term(lit.b).split()
    )


def unify_token_containment(
    needed: Literal, candidate: Literal, threshold: float = 0.5
) -> Optional[UnificationRecord]:
    """Match when the needed literal's content tokens are (mostly)
    contained in the candidate's.

    Subjects must agree under normalization even here: matching across
    entities would silently corrupt closed-world answers.
    """
    _check_threshold(threshold)
    if needed.kind is not candidate.kind:
        return None
    if needed.polarity is not candidate.polarity:
        return None
    if normalize_match_term(needed.a) != normalize_match_term(candidate.a):
        return None
    needed_tokens = _content_tokens(needed)
    candidate_tokens = _content_tokens(candidate)
    score = len(needed_tokens & candidate_tokens) / len(needed_tokens)
    if score >= threshold:
        return UnificationRecord(needed, candidate, score, OPERATOR_TOKEN_CONTAINMENT)
    return None


MatchFn = Callable[[Literal, Literal], Optional[UnificationRecord]]

_REGISTRY: dict[str, Callable[[UnifierChoice], MatchFn]] = {}


def register_operator(name: str, factory: Callable[[UnifierChoice], MatchFn]) -> None:
    """Hook for additional operators (e.g. model-backed similarity)."""
    _REGISTRY[name] = factory


def match_fn(choice: UnifierChoice) -> MatchFn:
    if choice.operator == OPERATOR_EXACT:
        return unify_exact
    if choice.operator == OPERATOR_NORMALIZED:
        return unify_normalized
    if choice.operator == OPERATOR_TOKEN_CONTAINMENT:
        threshold = choice.threshold
        return lambda needed, candidate: unify_token_containment(
            needed, candidate, threshold
        )
    if choice.operator in _REGISTRY:
        return _REGISTRY[choice.operator](choice)
    raise RlsError(f"unknown unification operator {choice.operator!r}")


def best_match(
    needed: Literal, atoms: Iterable[Literal], choice: UnifierChoice
) -> Optional[UnificationRecord]:
    """Highest-scoring match among ``atoms``.

    Exact presence always wins, whatever the operator; remaining ties
    break lexicographically on the candidate literal so the result is
    independent of set iteration order.
    """
    atoms = list(atoms)
    if needed in atoms:
        return unify_exact(needed, needed)
    fn = match_fn(choice)
    best: Optional[UnificationRecord] = None
    for candidate in sorted(atoms, key=Literal.sort_key):
        record = fn(needed, candidate)
        if record is None:
            continue
        if best is None or record.score > best.score:
            best = record
    return best
