"""Core domain model: terms, literals, rules, facts and theories.

A literal is a polarized tuple of text terms, either an attribute
``(subject, is, property, +/-)`` or a relation ``(entity, relation,
entity, +/-)``.  Rules are conjunctions of antecedent literals implying
one consequent literal; a theory bundles facts and rules together with
provenance back to source sentences.

Design notes:

* Everything is an immutable value.  Theories are safe to share
  read-only across threads; edits produce new theories.
* Terms are normalized at construction (whitespace collapsed, angle
  brackets rejected so the tag codec stays injective).  Comparison is
  exact string equality; case-insensitive matching lives in
  :mod:`rls.unify`, not here.
* Variables are plain tokens ("someone", "something" by default).  The
  vocabulary is a theory-level setting because none of the source
  datasets agree on a fixed set.  A rule may use at most one distinct
  variable, and a variable in the consequent must also occur in an
  antecedent.
* Ordering is deterministic everywhere: facts and rules keep insertion
  order, entity iteration is lexicographic.  Reproducible proofs and
  reports depend on this.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

RESERVED_TAGS = ("<arg0>", "<arg1>", "<arg2>", "<pred>", "<pos>", "<neg>", "<and>", "<impl>")

DEFAULT_VARIABLES = frozenset({"someone", "something"})


class RlsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTerm(RlsError):
    pass


class InvalidRule(RlsError):
    pass


class InvalidTheory(RlsError):
    pass


class DuplicateId(InvalidTheory):
    pass


class NoVariable(RlsError):
    """Raised when grounding a rule that has no variable occurrence."""


def normalize_term(text: str) -> str:
    """Collapse whitespace and validate a term.

    Raises InvalidTerm when the result is empty or contains angle
    brackets (which would collide with the sequence-encoding tags).
    """
    collapsed = " ".join(text.split())
    if not collapsed:
        raise InvalidTerm("term must be a nonempty string")
    if "<" in collapsed or ">" in collapsed:
        raise InvalidTerm(f"term may not contain angle brackets: {collapsed!r}")
    return collapsed


class Polarity(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flipped(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE

    @classmethod
    def from_symbol(cls, symbol: str) -> "Polarity":
        if symbol == "+":
            return cls.POSITIVE
        if symbol == "-":
            return cls.NEGATIVE
        raise InvalidTerm(f"unknown polarity symbol {symbol!r}")


class LiteralKind(Enum):
    ATTRIBUTE = "attr"
    RELATION = "rel"


@dataclass(frozen=True, order=False)
class Literal:
    """A polarized tuple of terms.

    ``kind`` selects the tuple pattern: an ATTRIBUTE reads
    ``(subject, is, property)`` and a RELATION ``(entity, relation,
    entity)``.  Attribute objects are properties, not entities, which
    matters for grounding (see :func:`entities`).
    """

    kind: LiteralKind
    a: str
    pred: str
    b: str
    polarity: Polarity = Polarity.POSITIVE

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", normalize_term(self.a))
        object.__setattr__(self, "pred", normalize_term(self.pred))
        object.__setattr__(self, "b", normalize_term(self.b))

    def negated(self) -> "Literal":
        return Literal(self.kind, self.a, self.pred, self.b, self.polarity.flipped())

    def atom(self) -> "Literal":
        """The positive form of this literal."""
        if self.polarity is Polarity.POSITIVE:
            return self
        return self.negated()

    def is_ground(self, variables: frozenset[str] = DEFAULT_VARIABLES) -> bool:
        return self.a not in variables and self.b not in variables

    def terms(self) -> tuple[str, str, str]:
        return (self.a, self.pred, self.b)

    def substitute(self, old: str, new: str) -> "Literal":
        """Replace whole-term occurrences of ``old`` in any position."""
        return Literal(
            self.kind,
            new if self.a == old else self.a,
            new if self.pred == old else self.pred,
            new if self.b == old else self.b,
            self.polarity,
        )

    def sort_key(self) -> tuple:
        return (self.kind.value, self.a, self.pred, self.b, self.polarity.value)

    def __str__(self) -> str:
        return f"({self.a}, {self.pred}, {self.b}, {self.polarity.value})"

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "pred": self.pred,
            "b": self.b,
            "kind": self.kind.value,
            "polarity": self.polarity.value,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Literal":
        return cls(
            kind=LiteralKind(data["kind"]),
            a=data["a"],
            pred=data["pred"],
            b=data["b"],
            polarity=Polarity(data.get("polarity", "+")),
        )


def negate(literal: Literal) -> Literal:
    """Flip the polarity of a literal; an involution."""
    return literal.negated()


@dataclass(frozen=True)
class Rule:
    id: str
    antecedents: tuple[Literal, ...]
    consequent: Literal

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", tuple(self.antecedents))
        if not self.antecedents:
            raise InvalidRule(f"rule {self.id!r} must have at least one antecedent")

    def literals(self) -> tuple[Literal, ...]:
        return self.antecedents + (self.consequent,)

    def variable(self, variables: frozenset[str] = DEFAULT_VARIABLES) -> Optional[str]:
        """The rule's single variable token, or None when ground.

        Raises InvalidRule when more than one distinct variable occurs,
        or when the consequent uses a variable no antecedent mentions.
        """
        seen: set[str] = set()
        for lit in self.literals():
            for term in lit.terms():
                if term in variables:
                    seen.add(term)
        if len(seen) > 1:
            raise InvalidRule(
                f"rule {self.id!r} uses more than one variable: {sorted(seen)}"
            )
        if not seen:
            return None
        var = seen.pop()
        in_consequent = var in self.consequent.terms()
        in_antecedent = any(var in lit.terms() for lit in self.antecedents)
        if in_consequent and not in_antecedent:
            raise InvalidRule(
                f"rule {self.id!r} binds {var!r} in the consequent only"
            )
        return var

    def is_ground(self, variables: frozenset[str] = DEFAULT_VARIABLES) -> bool:
        return self.variable(variables) is None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "antecedents": [lit.to_dict() for lit in self.antecedents],
            "consequent": self.consequent.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Rule":
        return cls(
            id=data["id"],
            antecedents=tuple(Literal.from_dict(d) for d in data["antecedents"]),
            consequent=Literal.from_dict(data["consequent"]),
        )

    def __str__(self) -> str:
        body = " & ".join(str(lit) for lit in self.antecedents)
        return f"{body} -> {self.consequent}"


@dataclass(frozen=True)
class Fact:
    id: str
    literal: Literal

    def to_dict(self) -> dict:
        return {"id": self.id, **self.literal.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Fact":
        return cls(id=data["id"], literal=Literal.from_dict(data))


@dataclass(frozen=True)
class Query:
    literal: Literal


@dataclass(frozen=True)
class Theory:
    """Facts plus rules, with optional provenance back to sentences.

    Validation happens here rather than on Fact/Rule because groundness
    depends on the theory's variable vocabulary.  Facts and rules are
    kept id-sorted so a theory is a value: equality and serialization
    do not depend on construction sequence, and any edit followed by
    its inverse restores the identical serialized form.
    """

    facts: tuple[Fact, ...] = ()
    rules: tuple[Rule, ...] = ()
    provenance: Mapping[str, str] = field(default_factory=dict)
    variables: frozenset[str] = DEFAULT_VARIABLES

    def __post_init__(self) -> None:
        object.__setattr__(self, "facts", tuple(sorted(self.facts, key=lambda f: f.id)))
        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=lambda r: r.id)))
        object.__setattr__(self, "provenance", dict(self.provenance))
        object.__setattr__(self, "variables", frozenset(self.variables))
        seen: set[str] = set()
        for item_id in [f.id for f in self.facts] + [r.id for r in self.rules]:
            if item_id in seen:
                raise DuplicateId(f"duplicate fact/rule id {item_id!r}")
            seen.add(item_id)
        for fact in self.facts:
            if not fact.literal.is_ground(self.variables):
                raise InvalidTheory(
                    f"fact {fact.id!r} is not ground: {fact.literal}"
                )
        for rule in self.rules:
            rule.variable(self.variables)  # validates the rule

    def fact_ids(self) -> set[str]:
        return {f.id for f in self.facts}

    def rule_ids(self) -> set[str]:
        return {r.id for r in self.rules}

    def fact_literals(self) -> set[Literal]:
        return {f.literal for f in self.facts}

    def to_dict(self) -> dict:
        def with_source(item_id: str, base: dict) -> dict:
            if item_id in self.provenance:
                base["source"] = self.provenance[item_id]
            return base

        doc = {
            "facts": [with_source(f.id, f.to_dict()) for f in self.facts],
            "rules": [with_source(r.id, r.to_dict()) for r in self.rules],
        }
        if self.variables != DEFAULT_VARIABLES:
            doc["variables"] = sorted(self.variables)
        return doc

    @classmethod
    def from_dict(cls, data: Mapping) -> "Theory":
        provenance = {}
        facts = []
        for fd in data.get("facts", []):
            facts.append(Fact.from_dict(fd))
            if "source" in fd:
                provenance[fd["id"]] = fd["source"]
        rules = []
        for rd in data.get("rules", []):
            rules.append(Rule.from_dict(rd))
            if "source" in rd:
                provenance[rd["id"]] = rd["source"]
        variables = frozenset(data.get("variables", DEFAULT_VARIABLES))
        return cls(tuple(facts), tuple(rules), provenance, variables)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Theory":
        return cls.from_dict(json.loads(text))


def entities(theory: Theory) -> frozenset[str]:
    """The grounding domain: every non-variable term in an entity slot.

    Entity slots are the ``a`` position of any literal and the ``b``
    position of relation literals.  Attribute objects are properties
    ("young", "round") and grounding a variable to them would generate
    rules no dataset contains, so they are excluded.
    """
    found: set[str] = set()
    all_literals: list[Literal] = [f.literal for f in theory.facts]
    for rule in theory.rules:
        all_literals.extend(rule.literals())
    for lit in all_literals:
        if lit.a not in theory.variables:
            found.add(lit.a)
        if lit.kind is LiteralKind.RELATION and lit.b not in theory.variables:
            found.add(lit.b)
    return frozenset(found)


def ground(rule: Rule, entity: str, variables: frozenset[str] = DEFAULT_VARIABLES) -> Rule:
    """Substitute ``entity`` for the rule's variable everywhere.

    Raises NoVariable when the rule is already ground; callers must
    check rather than rely on a silent no-op.
    """
    if entity in variables:
        raise InvalidTerm(f"cannot ground to variable token {entity!r}")
    var = rule.variable(variables)
    if var is None:
        raise NoVariable(f"rule {rule.id!r} is already ground")
    return Rule(
        id=rule.id,
        antecedents=tuple(lit.substitute(var, entity) for lit in rule.antecedents),
        consequent=rule.consequent.substitute(var, entity),
    )


def ground_all(theory: Theory) -> list[Rule]:
    """Propositionalize: one rule per (variable rule, entity) pair.

    Ground rules pass through unchanged.  Output order is rule order,
    then entity lexicographic order, so results are reproducible.
    """
    domain = sorted(entities(theory))
    out: list[Rule] = []
    for rule in theory.rules:
        if rule.is_ground(theory.variables):
            out.append(rule)
        else:
            for entity in domain:
                out.append(ground(rule, entity, theory.variables))
    return out
