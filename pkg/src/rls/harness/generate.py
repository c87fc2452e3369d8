"""Synthetic theory generator with oracle-labeled queries.

Instances follow the templated sentence family the extractor ships
with, so the full pipeline (render, extract, reason) can be tested
end to end without any external dataset.  Construction is seeded and
deterministic.

Each instance is built around a property chain p0 -> p1 -> ... -> pD:
one seed fact asserts p0 for a designated entity and one rule per step
lifts p(i) to p(i+1), so the chain entity reaches pD at exactly depth
D.  Noise facts and rules only touch properties off the chain, which
keeps the intended depths intact; the instance is discarded and
rebuilt if the independent oracle disagrees with any intended label or
depth anyway (the oracle, not the construction, is the authority).
With a nonzero negation probability some chain rules get a guard
condition "not g" on a property no rule or fact can ever derive
(failure always succeeds, stratification is trivially preserved) and
some noise facts become explicit negatives on properties nothing
derives positively, so theories stay contradiction free.

Per depth d the instance carries one query about p(d), drawn from four
variants: the chain entity positively (true), a different entity
positively (false under the closed world), the chain entity negated
(false), a different entity negated (true).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..codec import Conjunction, RuleFormula, encode
from ..core import Literal, LiteralKind, Polarity, RlsError, Theory
from ..ingest import SentenceRecord, SentenceRole, default_grammar, theory_from_sentences
from ..naive import naive_answer, naive_closure
from .metrics import EvalItem

ENTITY_POOL = [
    "Anne", "Bob", "Carl", "Dave", "Erin", "Fred",
    "Gail", "Harry", "Iris", "Jack", "Kate", "Liam",
]

PROPERTY_POOL = [
    "big", "blue", "bright", "calm", "cold", "furry", "gentle", "green",
    "happy", "kind", "loud", "nice", "quiet", "red", "rough", "round",
    "sharp", "slow", "smart", "soft", "tall", "warm", "wild", "young",
]


class GenerationFailed(RlsError):
    pass


@dataclass(frozen=True)
class GenParams:
    entities: int = 3
    properties: int = 10
    rules: int = 6
    facts: int = 5
    depth: int = 3
    negation_prob: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.entities, self.properties, self.facts) < 1 or self.rules < 0:
            raise GenerationFailed("all counts must be positive")
        if self.depth < 0:
            raise GenerationFailed("depth must be nonnegative")
        if not (0.0 <= self.negation_prob <= 1.0):
            raise GenerationFailed("negation_prob must be in [0, 1]")


@dataclass(frozen=True)
class GeneratedQuery:
    record: SentenceRecord
    literal: Literal
    label: bool
    depth: int


@dataclass(frozen=True)
class GeneratedInstance:
    sentences: tuple[SentenceRecord, ...]
    theory: Theory
    queries: tuple[GeneratedQuery, ...]

    def eval_items(self, prefix: str = "") -> list[EvalItem]:
        return [
            EvalItem(
                id=f"{prefix}{q.record.id}",
                sentences=self.sentences,
                query=q.record,
                label=q.label,
                depth=q.depth,
            )
            for q in self.queries
        ]


def _names(pool: list[str], count: int, rng: random.Random) -> list[str]:
    names = list(pool)
    suffix = 2
    while len(names) < count:
        names.extend(f"{name}{suffix}" for name in pool)
        suffix += 1
    return rng.sample(names[: max(count, len(pool))], count)


def _attr(a: str, b: str, pol: Polarity = Polarity.POSITIVE) -> Literal:
    return Literal(LiteralKind.ATTRIBUTE, a, "is", b, pol)


def _rel(a: str, pred: str, b: str, pol: Polarity = Polarity.POSITIVE) -> Literal:
    return Literal(LiteralKind.RELATION, a, pred, b, pol)


# ---------------------------------------------------------------------------
# sentence rendering (inverse of the template grammar)

def _render_attr_clause(lit: Literal, subject: str) -> str:
    negation = "not " if lit.polarity is Polarity.NEGATIVE else ""
    copula = "are" if subject == "they" else "is"
    return f"{subject} {copula} {negation}{lit.b}"


def _render_rel_clause(lit: Literal, subject: str, third_to_base: dict[str, str]) -> str:
    if lit.polarity is Polarity.NEGATIVE:
        return f"{subject} does not {third_to_base[lit.pred]} {lit.b}"
    return f"{subject} {lit.pred} {lit.b}"


def _render_fact_sentence(
    literals: list[Literal], rng: random.Random, third_to_base: dict[str, str]
) -> str:
    first = literals[0]
    if first.kind is LiteralKind.RELATION:
        return _render_rel_clause(first, first.a, third_to_base) + "."
    if len(literals) == 2:
        return f"{first.a} is {first.b} and {literals[1].b}."
    return _render_attr_clause(first, first.a) + "."


def _decorate_property(prop: str, rng: random.Random) -> str:
    if rng.random() < 0.25:
        prop = f"usually {prop}"
    if rng.random() < 0.15:
        prop = f"{prop} in shape"
    return prop


def _render_rule_sentence(
    antecedents: tuple[Literal, ...],
    consequent: Literal,
    rng: random.Random,
    third_to_base: dict[str, str],
) -> str:
    subject = antecedents[0].a
    is_variable = subject in ("someone", "something")

    people_eligible = (
        is_variable
        and consequent.kind is LiteralKind.ATTRIBUTE
        and all(
            a.kind is LiteralKind.ATTRIBUTE
            and a.polarity is Polarity.POSITIVE
            and a.a == subject
            for a in antecedents
        )
    )
    if people_eligible and rng.random() < 0.5:
        noun = "people" if subject == "someone" else "things"
        props = " and ".join(a.b for a in antecedents)
        head = _decorate_property(consequent.b, rng)
        if consequent.polarity is Polarity.NEGATIVE:
            head = f"not {head}"
        prefix = "All " if rng.random() < 0.4 else ""
        sentence = f"{prefix}{props} {noun} are {head}."
        return sentence if prefix else sentence[0].upper() + sentence[1:]

    clauses = []
    previous = None
    for ant in antecedents:
        if (
            previous is not None
            and ant.kind is LiteralKind.ATTRIBUTE
            and previous.kind is LiteralKind.ATTRIBUTE
            and ant.a == previous.a
            and rng.random() < 0.5
        ):
            # bare continuation: "... and kind" / "... and not slow"
            negation = "not " if ant.polarity is Polarity.NEGATIVE else ""
            clauses.append(f"{negation}{ant.b}")
        elif ant.kind is LiteralKind.ATTRIBUTE:
            clauses.append(_render_attr_clause(ant, ant.a))
        else:
            clauses.append(_render_rel_clause(ant, ant.a, third_to_base))
        previous = ant

    if consequent.a in ("someone", "something"):
        head_subject = "they" if consequent.a == "someone" else "it"
    else:
        head_subject = consequent.a
    if consequent.kind is LiteralKind.ATTRIBUTE:
        negation = "not " if consequent.polarity is Polarity.NEGATIVE else ""
        copula = "are" if head_subject == "they" else "is"
        head = f"{head_subject} {copula} {negation}{_decorate_property(consequent.b, rng)}"
    else:
        head = _render_rel_clause(consequent, head_subject, third_to_base)
    return f"If {' and '.join(clauses)} then {head}."


# ---------------------------------------------------------------------------
# instance construction

def _build(params: GenParams, rng: random.Random) -> Optional[GeneratedInstance]:
    grammar = default_grammar()
    third_to_base = {third: base for base, third in grammar.base_to_third.items()}
    verbs = sorted(third_to_base)

    entity_names = _names(ENTITY_POOL, params.entities, rng)
    chain_entity = entity_names[0]
    properties = _names(PROPERTY_POOL, params.properties, rng)
    if len(properties) < params.depth + 1:
        raise GenerationFailed(
            f"need at least {params.depth + 1} properties for depth {params.depth}"
        )
    if params.rules < params.depth:
        raise GenerationFailed(
            f"need at least {params.depth} rules for depth {params.depth}"
        )
    chain = properties[: params.depth + 1]
    noise_props = properties[params.depth + 1 :]

    # chain rules, optionally guarded by an underivable negative condition
    rules: list[tuple[tuple[Literal, ...], Literal]] = []
    guards: set[str] = set()
    for i in range(params.depth):
        subject = rng.choice(["someone", "something", chain_entity])
        antecedents = [_attr(subject, chain[i])]
        if noise_props and rng.random() < params.negation_prob:
            guard = rng.choice(noise_props)
            guards.add(guard)
            antecedents.append(_attr(subject, guard, Polarity.NEGATIVE))
        rules.append((tuple(antecedents), _attr(subject, chain[i + 1])))

    # noise rules live entirely off the chain
    free_props = [p for p in noise_props if p not in guards]
    noise_consequents: set[str] = set()
    for _ in range(params.rules - params.depth):
        if not free_props:
            break
        subject = rng.choice(["someone", "something"] + entity_names)
        if rng.random() < 0.2:
            antecedents = [_rel(subject, rng.choice(verbs), rng.choice(entity_names))]
        else:
            count = min(rng.randint(1, 2), len(free_props))
            antecedents = [_attr(subject, p) for p in rng.sample(free_props, count)]
        body_props = {a.b for a in antecedents}
        available = [p for p in free_props if p not in body_props] or free_props
        consequent_prop = rng.choice(available)
        noise_consequents.add(consequent_prop)
        rules.append((tuple(antecedents), _attr(subject, consequent_prop)))

    # facts: the chain seed plus noise
    facts: list[Literal] = [_attr(chain_entity, chain[0])]
    used_pairs = {(chain_entity, chain[0])}
    negfact_pool = [p for p in free_props if p not in noise_consequents]
    for _ in range(params.facts - 1):
        entity = rng.choice(entity_names)
        if rng.random() < 0.2:
            other = rng.choice(entity_names)
            facts.append(_rel(entity, rng.choice(verbs), other))
            continue
        if negfact_pool and rng.random() < params.negation_prob:
            prop = rng.choice(negfact_pool)
            if (entity, prop) in used_pairs:
                continue
            used_pairs.add((entity, prop))
            facts.append(_attr(entity, prop, Polarity.NEGATIVE))
            continue
        if not free_props:
            continue
        prop = rng.choice(free_props)
        if (entity, prop) in used_pairs:
            continue
        used_pairs.add((entity, prop))
        facts.append(_attr(entity, prop))

    # sentences: group a few same-subject positive attribute facts in pairs
    formulas: list[tuple[SentenceRole, object]] = []
    index = 0
    while index < len(facts):
        current = facts[index]
        nxt = facts[index + 1] if index + 1 < len(facts) else None
        if (
            nxt is not None
            and current.kind is nxt.kind is LiteralKind.ATTRIBUTE
            and current.a == nxt.a
            and current.polarity is nxt.polarity is Polarity.POSITIVE
            and rng.random() < 0.35
        ):
            formulas.append((SentenceRole.FACT, Conjunction((current, nxt))))
            index += 2
        else:
            formulas.append((SentenceRole.FACT, Conjunction((current,))))
            index += 1
    for antecedents, consequent in rules:
        formulas.append((SentenceRole.RULE, RuleFormula(antecedents, consequent)))
    rng.shuffle(formulas)

    records: list[SentenceRecord] = []
    for i, (role, formula) in enumerate(formulas):
        if role is SentenceRole.FACT:
            text = _render_fact_sentence(list(formula.literals), rng, third_to_base)
        else:
            text = _render_rule_sentence(
                formula.antecedents, formula.consequent, rng, third_to_base
            )
        records.append(SentenceRecord(f"s{i}", text, role, gold=encode(formula)))

    theory = theory_from_sentences(records, source="gold")
    oracle = naive_closure(theory)
    for d, prop in enumerate(chain):
        literal = _attr(chain_entity, prop)
        if oracle.depths.get(literal) != d:
            return None  # construction missed its target; retry

    other_entities = entity_names[1:]
    queries: list[GeneratedQuery] = []
    for d, prop in enumerate(chain):
        variants = ["true_positive", "false_negative"]
        if other_entities:
            variants += ["false_positive", "true_negative"]
        variant = rng.choice(variants)
        if variant == "true_positive":
            literal = _attr(chain_entity, prop)
        elif variant == "false_negative":
            literal = _attr(chain_entity, prop, Polarity.NEGATIVE)
        elif variant == "false_positive":
            literal = _attr(rng.choice(other_entities), prop)
        else:
            literal = _attr(rng.choice(other_entities), prop, Polarity.NEGATIVE)
        truth, _ = naive_answer(theory, literal)
        expected = variant in ("true_positive", "true_negative")
        if truth != expected:
            return None
        negation = "not " if literal.polarity is Polarity.NEGATIVE else ""
        record = SentenceRecord(
            f"q{d}",
            f"{literal.a} is {negation}{literal.b}.",
            SentenceRole.QUERY,
            gold=encode(Conjunction((literal,))),
        )
        queries.append(GeneratedQuery(record, literal, truth, d))

    return GeneratedInstance(tuple(records), theory, tuple(queries))


def generate_theory(params: GenParams) -> GeneratedInstance:
    """Deterministic per seed; raises GenerationFailed when the target
    depth cannot be realized after bounded retries."""
    last_error: Optional[str] = None
    for attempt in range(8):
        rng = random.Random(params.seed * 1000003 + attempt)
        try:
            instance = _build(params, rng)
        except GenerationFailed as err:
            raise err
        if instance is not None:
            return instance
        last_error = f"attempt {attempt} missed the target depth"
    raise GenerationFailed(last_error or "generation failed")
