"""Tag-delimited sequence encoding of formulas, and its parser.

The wire format is a flat token string.  Attribute literals are written
``<arg0> subject <pred> predicate <arg1> property <pos|neg>`` and
relation literals ``<arg1> entity <pred> relation <arg2> entity`` with
the polarity tag required only when negative (positive is the default
and is elided on canonical output).  Literals join with ``<and>``; a
rule joins its antecedent block to the consequent with ``<impl>``.

Grammar (terminals are literal tokens, SP a single space)::

    formula      = conjunction | rule ;
    rule         = conjunction SP "<impl>" SP literal ;
    conjunction  = literal { SP "<and>" SP literal } ;
    literal      = attr | rel ;
    attr         = "<arg0>" SP text SP "<pred>" SP text SP "<arg1>" SP text SP pol ;
    rel          = "<arg1>" SP text SP "<pred>" SP text SP "<arg2>" SP text [ SP pol ] ;
    pol          = "<pos>" | "<neg>" ;
    text         = word { SP word } ;

Terms may span several words ("shade from sun"); a term ends only at
the next tag.  The leading tag disambiguates the literal pattern:
``<arg0>`` starts an attribute, ``<arg1>`` a relation.

``decode`` accepts arbitrary input and either returns a formula or
raises :class:`MalformedSequence` with the offending token position.
It never crashes: model predictions are often malformed and that
outcome must be observable, not fatal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .core import Literal, LiteralKind, Polarity, RlsError

TAG_ARG0 = "<arg0>"
TAG_ARG1 = "<arg1>"
TAG_ARG2 = "<arg2>"
TAG_PRED = "<pred>"
TAG_POS = "<pos>"
TAG_NEG = "<neg>"
TAG_AND = "<and>"
TAG_IMPL = "<impl>"

ALL_TAGS = (TAG_ARG0, TAG_ARG1, TAG_ARG2, TAG_PRED, TAG_POS, TAG_NEG, TAG_AND, TAG_IMPL)

_POLARITY_TAG = {Polarity.POSITIVE: TAG_POS, Polarity.NEGATIVE: TAG_NEG}


class MalformedSequence(RlsError):
    """A token string that does not parse under the grammar.

    ``position`` indexes into the whitespace-split token stream.
    """

    def __init__(self, position: int, reason: str):
        super().__init__(f"at token {position}: {reason}")
        self.position = position
        self.reason = reason


@dataclass(frozen=True)
class Conjunction:
    """One or more literals joined by <and>; the shape of fact sentences."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise RlsError("conjunction must contain at least one literal")


@dataclass(frozen=True)
class RuleFormula:
    """Antecedent literals implying one consequent; the shape of rule sentences."""

    antecedents: tuple[Literal, ...]
    consequent: Literal

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", tuple(self.antecedents))
        if not self.antecedents:
            raise RlsError("rule formula must have at least one antecedent")


Formula = Union[Conjunction, RuleFormula]


def encode_literal(lit: Literal, always_emit_polarity: bool = False) -> str:
    if lit.kind is LiteralKind.ATTRIBUTE:
        return (
            f"{TAG_ARG0} {lit.a} {TAG_PRED} {lit.pred} {TAG_ARG1} {lit.b} "
            f"{_POLARITY_TAG[lit.polarity]}"
        )
    base = f"{TAG_ARG1} {lit.a} {TAG_PRED} {lit.pred} {TAG_ARG2} {lit.b}"
    if lit.polarity is Polarity.NEGATIVE or always_emit_polarity:
        return f"{base} {_POLARITY_TAG[lit.polarity]}"
    return base


def encode(formula: Formula, always_emit_polarity: bool = False) -> str:
    """Canonical serialization of a formula."""
    if isinstance(formula, Conjunction):
        return f" {TAG_AND} ".join(
            encode_literal(lit, always_emit_polarity) for lit in formula.literals
        )
    body = f" {TAG_AND} ".join(
        encode_literal(lit, always_emit_polarity) for lit in formula.antecedents
    )
    head = encode_literal(formula.consequent, always_emit_polarity)
    return f"{body} {TAG_IMPL} {head}"


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def fail(self, reason: str) -> MalformedSequence:
        return MalformedSequence(self.pos, reason)

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> str | None:
        return None if self.done() else self.tokens[self.pos]

    def take(self) -> str:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_tag(self, tag: str) -> None:
        token = self.peek()
        if token is None:
            raise self.fail(f"unexpected end of input, expected {tag}")
        if token != tag:
            if token in ALL_TAGS:
                raise self.fail(f"out-of-order tag {token}, expected {tag}")
            raise self.fail(f"expected {tag}, found {token!r}")
        self.take()

    def text(self) -> str:
        """Words until the next tag; at least one required."""
        words: list[str] = []
        while not self.done():
            token = self.peek()
            if token in ALL_TAGS:
                break
            if "<" in token or ">" in token:
                raise self.fail(f"unknown tag {token!r}")
            words.append(self.take())
        if not words:
            raise self.fail("empty term between tags")
        return " ".join(words)

    def polarity(self, required: bool) -> Polarity:
        token = self.peek()
        if token == TAG_POS:
            self.take()
            return Polarity.POSITIVE
        if token == TAG_NEG:
            self.take()
            return Polarity.NEGATIVE
        if required:
            if token is None:
                raise self.fail("missing polarity tag")
            raise self.fail(f"missing polarity tag before {token!r}")
        return Polarity.POSITIVE

    def literal(self) -> Literal:
        token = self.peek()
        if token is None:
            raise self.fail("unexpected end of input, expected a literal")
        if token == TAG_ARG0:
            self.take()
            a = self.text()
            self.expect_tag(TAG_PRED)
            pred = self.text()
            self.expect_tag(TAG_ARG1)
            b = self.text()
            pol = self.polarity(required=True)
            return Literal(LiteralKind.ATTRIBUTE, a, pred, b, pol)
        if token == TAG_ARG1:
            self.take()
            a = self.text()
            self.expect_tag(TAG_PRED)
            pred = self.text()
            self.expect_tag(TAG_ARG2)
            b = self.text()
            pol = self.polarity(required=False)
            return Literal(LiteralKind.RELATION, a, pred, b, pol)
        if token in ALL_TAGS:
            raise self.fail(f"out-of-order tag {token}, expected <arg0> or <arg1>")
        if "<" in token or ">" in token:
            raise self.fail(f"unknown tag {token!r}")
        raise self.fail(f"expected <arg0> or <arg1>, found {token!r}")


def decode(text: str) -> Formula:
    """Parse a token string into a formula.

    Whitespace is normalized before parsing.  A relation literal with no
    polarity tag defaults to positive.  Raises MalformedSequence on any
    grammar violation.
    """
    tokens = text.split()
    parser = _Parser(tokens)
    if parser.done():
        raise parser.fail("empty input")

    literals = [parser.literal()]
    while parser.peek() == TAG_AND:
        parser.take()
        literals.append(parser.literal())

    if parser.peek() == TAG_IMPL:
        parser.take()
        consequent = parser.literal()
        if not parser.done():
            if parser.peek() == TAG_IMPL:
                raise parser.fail("more than one <impl>")
            raise parser.fail(f"trailing content after consequent: {parser.peek()!r}")
        return RuleFormula(tuple(literals), consequent)

    if not parser.done():
        raise parser.fail(f"trailing content: {parser.peek()!r}")
    return Conjunction(tuple(literals))


def canonicalize(text: str) -> str:
    """Decode then re-encode; the canonical form used for exact matching."""
    return encode(decode(text))


def decode_literal(text: str) -> Literal:
    """Parse a single encoded literal (queries, fact edits)."""
    formula = decode(text)
    if isinstance(formula, RuleFormula) or len(formula.literals) != 1:
        raise MalformedSequence(0, "expected a single literal")
    return formula.literals[0]
