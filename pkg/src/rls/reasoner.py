"""Deterministic inference over theories under the closed-world assumption.

The engine grounds every rule over the theory's entity domain, computes
the model, then answers queries with full proof trees.  Negation is
negation-as-failure with stratification: the ground-atom dependency
graph is built (negative dependencies from rule antecedents of the form
"not p" to their consequents), atoms are layered so negative edges only
point strictly downward, and each layer is closed to fixpoint before
the next.  Explicit negatives ("Harry is not green" as an asserted or
derived literal) are ordinary atoms of the opposite sign; a negative
antecedent is satisfied either by such an atom or by the failure to
derive its positive counterpart.

Evaluation runs in two phases:

1. Model computation, semi-naive (only atoms derived in the previous
   round re-trigger rule checks).  With a weak unifier the dependency
   graph is built conservatively over every atom the unifier could
   match, so a NotStratified report may be stricter than the exact-
   match one.
2. Depth and justification assignment by rounds against the finished
   model.  Facts are depth 0; an atom gets depth k when some rule
   derives it from children of depth at most k-1, failure leaves
   counting 0.  This second pass is what makes recorded depths minimal
   even when several atoms weakly match one antecedent at different
   depths.  Proof ties break on (rule id, lexicographic children).

Everything here is pure with respect to the theory; closures of the
same theory from any fact/rule ordering produce identical results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import (
    Fact,
    Literal,
    LiteralKind,
    Polarity,
    Query,
    RlsError,
    Rule,
    Theory,
    entities,
    ground,
    negate,
)
from .unify import UnificationRecord, UnifierChoice, match_fn, unify_exact


class NotStratified(RlsError):
    def __init__(self, description: str):
        super().__init__(f"theory is not stratified: {description}")
        self.description = description


class AlreadyProvable(RlsError):
    pass


class UnknownId(RlsError):
    pass


class NonstratifiedPolicy(Enum):
    ERROR = "error"
    BEST_EFFORT = "best_effort"


@dataclass(frozen=True)
class ReasonerConfig:
    """max_depth None means unlimited; the ground atom space is finite
    so closure terminates regardless."""

    max_depth: Optional[int] = None
    unifier: UnifierChoice = UnifierChoice.exact()
    nonstratified_policy: NonstratifiedPolicy = NonstratifiedPolicy.ERROR


@dataclass(frozen=True)
class ProofNode:
    """One step of a justification.

    kind "asserted": a fact, depth 0.
    kind "rule": a rule application; children line up with the grounded
    rule's antecedents (matched atoms, or failure leaves for negative
    antecedents).
    kind "naf": a negative literal holding because its positive
    counterpart is underivable; always a leaf, always negative.
    """

    literal: Literal
    kind: str
    depth: int
    fact_id: Optional[str] = None
    rule_id: Optional[str] = None
    binding: Optional[str] = None
    unifications: tuple[UnificationRecord, ...] = ()
    children: tuple["ProofNode", ...] = ()

    def to_dict(self) -> dict:
        doc: dict = {
            "literal": self.literal.to_dict(),
            "kind": self.kind,
            "depth": self.depth,
            "children": [c.to_dict() for c in self.children],
        }
        if self.fact_id is not None:
            doc["fact_id"] = self.fact_id
        if self.rule_id is not None:
            doc["rule_id"] = self.rule_id
            doc["binding"] = self.binding
            doc["unifications"] = [u.to_dict() for u in self.unifications]
        return doc


ProofTree = ProofNode


@dataclass(frozen=True)
class ClosureResult:
    derived: dict[Literal, int]
    explicit_negatives: frozenset[Literal]
    contradictions: tuple[tuple[Literal, Literal], ...]
    unifications_used: tuple[UnificationRecord, ...]
    warnings: tuple[str, ...] = ()
    depth_truncated: bool = False


@dataclass(frozen=True)
class Answer:
    truth: bool
    proof: ProofNode
    unification: Optional[UnificationRecord] = None

    def to_dict(self) -> dict:
        doc = {"truth": self.truth, "proof": self.proof.to_dict()}
        if self.unification is not None:
            doc["unification"] = self.unification.to_dict()
        return doc


# ---------------------------------------------------------------------------
# grounding with binding records

@dataclass(frozen=True)
class _Instance:
    rule_id: str
    binding: Optional[str]
    antecedents: tuple[Literal, ...]
    consequent: Literal


def _instances(theory: Theory, extra_entities: Iterable[str] = ()) -> list[_Instance]:
    domain = sorted(entities(theory) | set(extra_entities))
    out = []
    for rule in theory.rules:
        if rule.is_ground(theory.variables):
            out.append(_Instance(rule.id, None, rule.antecedents, rule.consequent))
        else:
            for entity in domain:
                grounded = ground(rule, entity, theory.variables)
                out.append(
                    _Instance(rule.id, entity, grounded.antecedents, grounded.consequent)
                )
    out.sort(key=lambda inst: (inst.rule_id, inst.binding or ""))
    return out


# ---------------------------------------------------------------------------
# matching helpers

def _any_match(needed: Literal, atoms: set[Literal], choice: UnifierChoice) -> bool:
    if needed in atoms:
        return True
    if choice.operator == "exact":
        return False
    fn = match_fn(choice)
    return any(fn(needed, candidate) is not None for candidate in atoms)


def _all_matches(
    needed: Literal, atoms: Iterable[Literal], choice: UnifierChoice
) -> list[UnificationRecord]:
    fn = match_fn(choice)
    records = []
    for candidate in atoms:
        if candidate == needed:
            records.append(unify_exact(needed, needed))
        else:
            record = fn(needed, candidate)
            if record is not None:
                records.append(record)
    return records


# ---------------------------------------------------------------------------
# stratification

def _stratify(
    instances: Sequence[_Instance],
    fact_literals: set[Literal],
    choice: UnifierChoice,
) -> tuple[dict[Literal, int], Optional[str]]:
    """Layer the potential ground atoms; None description means success.

    The potential universe is facts plus rule consequents, signed.  For
    a consequent c: a positive antecedent contributes non-decreasing
    edges from every atom it could match; a negative antecedent
    contributes strictly-increasing edges from every positive atom its
    counterpart could match (the failure check) and non-decreasing
    edges from matching explicit negatives.
    """
    universe = set(fact_literals)
    universe.update(inst.consequent for inst in instances)
    positives = {l for l in universe if l.polarity is Polarity.POSITIVE}
    negatives = universe - positives

    edges: list[tuple[Literal, Literal, bool]] = []  # (src, dst, is_negative)
    for inst in instances:
        cons = inst.consequent
        for ant in inst.antecedents:
            if ant.polarity is Polarity.POSITIVE:
                for rec in _all_matches(ant, positives, choice):
                    edges.append((rec.matched, cons, False))
            else:
                for rec in _all_matches(ant.atom(), positives, choice):
                    edges.append((rec.matched, cons, True))
                for rec in _all_matches(ant, negatives, choice):
                    edges.append((rec.matched, cons, False))

    stratum = {atom: 0 for atom in universe}
    limit = len(universe) + 1
    for _ in range(limit):
        changed = False
        for src, dst, is_negative in edges:
            required = stratum[src] + (1 if is_negative else 0)
            if stratum[dst] < required:
                stratum[dst] = required
                changed = True
        if not changed:
            return stratum, None
    unstable = sorted(
        {str(dst) for src, dst, neg in edges if neg and stratum[dst] >= limit - 1}
    )
    if unstable:
        description = "negative dependency cycle involving " + ", ".join(unstable[:6])
    else:
        description = "negative dependency cycle detected"
    return stratum, description


# ---------------------------------------------------------------------------
# phase 1: model computation

def _compute_model(
    instances: Sequence[_Instance],
    fact_literals: list[Literal],
    strata: Optional[dict[Literal, int]],
    choice: UnifierChoice,
) -> tuple[set[Literal], set[Literal], list[str]]:
    pos: set[Literal] = {l for l in fact_literals if l.polarity is Polarity.POSITIVE}
    neg: set[Literal] = {l for l in fact_literals if l.polarity is Polarity.NEGATIVE}
    warnings: list[str] = []

    def satisfied(ant: Literal) -> bool:
        if ant.polarity is Polarity.POSITIVE:
            return _any_match(ant, pos, choice)
        return _any_match(ant, neg, choice) or not _any_match(ant.atom(), pos, choice)

    def triggered(inst: _Instance, new_pos: set[Literal], new_neg: set[Literal]) -> bool:
        for ant in inst.antecedents:
            if ant.polarity is Polarity.POSITIVE:
                if _any_match(ant, new_pos, choice):
                    return True
            elif _any_match(ant, new_neg, choice):
                return True
        return False

    if strata is None:
        layers = [list(instances)]
        warnings.append(
            "not stratified: negative conditions evaluated against the running set"
        )
    else:
        by_layer: dict[int, list[_Instance]] = {}
        for inst in instances:
            by_layer.setdefault(strata[inst.consequent], []).append(inst)
        layers = [by_layer[k] for k in sorted(by_layer)]

    for layer in layers:
        new_pos: Optional[set[Literal]] = None
        new_neg: Optional[set[Literal]] = None
        while True:
            added_pos: set[Literal] = set()
            added_neg: set[Literal] = set()
            for inst in layer:
                cons = inst.consequent
                if cons in pos or cons in neg:
                    continue
                if new_pos is not None and not triggered(inst, new_pos, new_neg):
                    continue
                if all(satisfied(ant) for ant in inst.antecedents):
                    target = added_pos if cons.polarity is Polarity.POSITIVE else added_neg
                    target.add(cons)
            if not added_pos and not added_neg:
                break
            pos.update(added_pos)
            neg.update(added_neg)
            new_pos, new_neg = added_pos, added_neg

    return pos, neg, warnings


# ---------------------------------------------------------------------------
# phase 2: depths and justifications against the finished model

_NAF_CHILD = "naf"
_ATOM_CHILD = "atom"


@dataclass(frozen=True)
class _Child:
    kind: str  # "atom" | "naf"
    literal: Literal
    record: Optional[UnificationRecord] = None


@dataclass(frozen=True)
class _Just:
    kind: str  # "fact" | "rule"
    fact_id: Optional[str] = None
    rule_id: Optional[str] = None
    binding: Optional[str] = None
    children: tuple[_Child, ...] = ()


@dataclass
class _ClosureState:
    theory: Theory
    config: ReasonerConfig
    depths: dict[Literal, int]
    justifications: dict[Literal, _Just]
    model_pos: set[Literal]
    model_neg: set[Literal]
    warnings: list[str]
    depth_truncated: bool = False

    def derived_positive(self) -> dict[Literal, int]:
        return {
            l: d
            for l, d in self.depths.items()
            if l.polarity is Polarity.POSITIVE and l in self.model_pos
        }

    def derived_negative(self) -> dict[Literal, int]:
        return {
            l: d
            for l, d in self.depths.items()
            if l.polarity is Polarity.NEGATIVE and l in self.model_neg
        }


def _pick_child(
    needed: Literal,
    pool: Mapping[Literal, int],
    choice: UnifierChoice,
) -> Optional[_Child]:
    """Cheapest assigned atom matching ``needed``.

    Order: minimal depth, then exact presence, then higher score, then
    lexicographic literal.  Minimal depth first keeps recorded proof
    depths minimal; the remaining keys make the pick deterministic.
    """
    best: Optional[tuple] = None
    best_child: Optional[_Child] = None
    for record in _all_matches(needed, pool.keys(), choice):
        candidate = record.matched
        key = (
            pool[candidate],
            0 if record.operator == "exact" else 1,
            -record.score,
            candidate.sort_key(),
        )
        if best is None or key < best:
            best = key
            best_child = _Child(_ATOM_CHILD, candidate, record)
    return best_child


def _assign_depths(
    theory: Theory,
    instances: Sequence[_Instance],
    model_pos: set[Literal],
    model_neg: set[Literal],
    choice: UnifierChoice,
) -> tuple[dict[Literal, int], dict[Literal, _Just], list[str]]:
    depths: dict[Literal, int] = {}
    justifications: dict[Literal, _Just] = {}
    warnings: list[str] = []

    for fact in theory.facts:  # first id for a repeated literal wins, by sorted id
        lit = fact.literal
        if lit not in justifications or fact.id < justifications[lit].fact_id:
            justifications[lit] = _Just("fact", fact_id=fact.id)
            depths[lit] = 0

    model = model_pos | model_neg
    while True:
        pos_pool = {l: d for l, d in depths.items() if l.polarity is Polarity.POSITIVE}
        neg_pool = {l: d for l, d in depths.items() if l.polarity is Polarity.NEGATIVE}
        candidates: dict[Literal, tuple] = {}
        for inst in instances:
            cons = inst.consequent
            if cons not in model or cons in depths:
                continue
            children: list[_Child] = []
            ready = True
            for ant in inst.antecedents:
                if ant.polarity is Polarity.POSITIVE:
                    child = _pick_child(ant, pos_pool, choice)
                else:
                    if not _any_match(ant.atom(), model_pos, choice):
                        child = _Child(_NAF_CHILD, ant)
                    else:
                        child = _pick_child(ant, neg_pool, choice)
                if child is None:
                    ready = False
                    break
                children.append(child)
            if not ready:
                continue
            depth = 1 + max(
                (0 if c.kind == _NAF_CHILD else depths[c.literal]) for c in children
            )
            key = (inst.rule_id, tuple(c.literal.sort_key() for c in children))
            entry = (depth, key, inst, tuple(children))
            held = candidates.get(cons)
            if held is None or (entry[0], entry[1]) < (held[0], held[1]):
                candidates[cons] = entry
        if not candidates:
            break
        for cons, (depth, _key, inst, children) in candidates.items():
            depths[cons] = depth
            justifications[cons] = _Just(
                "rule",
                rule_id=inst.rule_id,
                binding=inst.binding,
                children=children,
            )

    unassigned = sorted(str(l) for l in model - set(depths))
    if unassigned:
        # Only reachable in best-effort mode: atoms whose derivation relied
        # on an evaluation order the final model does not support.
        warnings.append(
            "dropped atoms without a model-consistent justification: "
            + ", ".join(unassigned)
        )
        model_pos.difference_update({l for l in model if l not in depths})
        model_neg.difference_update({l for l in model if l not in depths})
    return depths, justifications, warnings


# ---------------------------------------------------------------------------
# public operations

def _close(theory: Theory, config: ReasonerConfig) -> _ClosureState:
    instances = _instances(theory)
    fact_literals = [f.literal for f in theory.facts]
    strata, failure = _stratify(instances, set(fact_literals), config.unifier)
    warnings: list[str] = []
    if failure is not None:
        if config.nonstratified_policy is NonstratifiedPolicy.ERROR:
            raise NotStratified(failure)
        strata = None
    model_pos, model_neg, model_warnings = _compute_model(
        instances, fact_literals, strata, config.unifier
    )
    warnings.extend(model_warnings)
    depths, justifications, depth_warnings = _assign_depths(
        theory, instances, model_pos, model_neg, config.unifier
    )
    warnings.extend(depth_warnings)

    state = _ClosureState(
        theory=theory,
        config=config,
        depths=depths,
        justifications=justifications,
        model_pos=model_pos,
        model_neg=model_neg,
        warnings=warnings,
    )

    if config.max_depth is not None:
        too_deep = [l for l, d in depths.items() if d > config.max_depth]
        if too_deep:
            state.depth_truncated = True
            for lit in too_deep:
                del state.depths[lit]
                del state.justifications[lit]
                state.model_pos.discard(lit)
                state.model_neg.discard(lit)
    return state


def _used_records(state: _ClosureState) -> tuple[UnificationRecord, ...]:
    seen: set[tuple] = set()
    records: list[UnificationRecord] = []
    for just in state.justifications.values():
        for child in just.children:
            if child.record is None:
                continue
            key = (
                child.record.needed.sort_key(),
                child.record.matched.sort_key(),
                child.record.operator,
            )
            if key not in seen:
                seen.add(key)
                records.append(child.record)
    records.sort(key=lambda r: (r.needed.sort_key(), r.matched.sort_key(), r.operator))
    return tuple(records)


def _contradictions(state: _ClosureState) -> tuple[tuple[Literal, Literal], ...]:
    pairs = []
    for neg in state.model_neg:
        pos = neg.atom()
        if pos in state.model_pos:
            pairs.append((pos, neg))
    pairs.sort(key=lambda p: p[0].sort_key())
    return tuple(pairs)


def closure(theory: Theory, config: ReasonerConfig = ReasonerConfig()) -> ClosureResult:
    """Least fixpoint of ground-rule application from the asserted facts."""
    state = _close(theory, config)
    return ClosureResult(
        derived=state.derived_positive(),
        explicit_negatives=frozenset(state.model_neg),
        contradictions=_contradictions(state),
        unifications_used=_used_records(state),
        warnings=tuple(state.warnings),
        depth_truncated=state.depth_truncated,
    )


def _build_proof(state: _ClosureState, literal: Literal) -> ProofNode:
    just = state.justifications[literal]
    if just.kind == "fact":
        return ProofNode(literal, "asserted", 0, fact_id=just.fact_id)
    children = []
    records = []
    for child in just.children:
        if child.kind == _NAF_CHILD:
            children.append(ProofNode(child.literal, "naf", 0))
        else:
            children.append(_build_proof(state, child.literal))
            records.append(child.record)
    depth = 1 + max(c.depth for c in children)
    return ProofNode(
        literal,
        "rule",
        depth,
        rule_id=just.rule_id,
        binding=just.binding,
        unifications=tuple(records),
        children=tuple(children),
    )


def _naf_node(negative: Literal) -> ProofNode:
    return ProofNode(negative, "naf", 0)


def _pick_query_match(
    needed: Literal, pool: Mapping[Literal, int], choice: UnifierChoice
) -> Optional[UnificationRecord]:
    child = _pick_child(needed, pool, choice)
    return None if child is None else child.record


def answer(theory: Theory, query: Query, config: ReasonerConfig = ReasonerConfig()) -> Answer:
    """Truth of a ground query, with the proof that justifies it.

    A false positive query gets a closed-world failure leaf as its
    proof; a false negative query gets the derivation of its positive
    counterpart as the contradicting evidence.
    """
    lit = query.literal
    if not lit.is_ground(theory.variables):
        raise RlsError(f"query must be ground: {lit}")
    state = _close(theory, config)
    choice = config.unifier

    if lit.polarity is Polarity.POSITIVE:
        record = _pick_query_match(lit, state.derived_positive(), choice)
        if record is not None:
            return Answer(True, _build_proof(state, record.matched), record)
        return Answer(False, _naf_node(negate(lit)))

    record = _pick_query_match(lit, state.derived_negative(), choice)
    if record is not None:
        return Answer(True, _build_proof(state, record.matched), record)
    counter = _pick_query_match(lit.atom(), state.derived_positive(), choice)
    if counter is None:
        return Answer(True, _naf_node(lit))
    return Answer(False, _build_proof(state, counter.matched), counter)


def enumerate_implications(
    theory: Theory, config: ReasonerConfig = ReasonerConfig()
) -> list[tuple[Literal, int]]:
    """Every derived positive atom that was not asserted, with its depth."""
    state = _close(theory, config)
    asserted = theory.fact_literals()
    out = [
        (lit, depth)
        for lit, depth in state.derived_positive().items()
        if lit not in asserted
    ]
    out.sort(key=lambda item: (item[1], item[0].sort_key()))
    return out


def detect_contradictions(
    theory: Theory, config: ReasonerConfig = ReasonerConfig()
) -> list[tuple[Literal, Literal]]:
    state = _close(theory, config)
    return list(_contradictions(state))


def abduce(
    theory: Theory,
    query: Query,
    max_set_size: int = 2,
    config: ReasonerConfig = ReasonerConfig(),
) -> list[tuple[Literal, ...]]:
    """Minimal fact sets whose addition makes the query provable.

    Candidates are the ground instantiations of rule antecedents that
    are not already satisfied; unrestricted atom invention would be
    unbounded.  Every returned set is minimal (no proper subset works)
    and the list is sorted by size then lexicographically.
    """
    if max_set_size < 1:
        raise RlsError("max_set_size must be positive")
    if answer(theory, query, config).truth:
        raise AlreadyProvable(f"query already provable: {query.literal}")

    state = _close(theory, config)
    choice = config.unifier
    # Candidate generation also grounds over the query's own entities:
    # the goal may mention an entity no remaining fact does.
    query_entities = {query.literal.a}
    if query.literal.kind is LiteralKind.RELATION:
        query_entities.add(query.literal.b)
    query_entities = {e for e in query_entities if e not in theory.variables}
    candidates: set[Literal] = set()
    for inst in _instances(theory, extra_entities=query_entities):
        for ant in inst.antecedents:
            if ant.polarity is Polarity.POSITIVE:
                if not _any_match(ant, state.model_pos, choice):
                    candidates.add(ant)
            else:
                satisfied = _any_match(ant, state.model_neg, choice) or not _any_match(
                    ant.atom(), state.model_pos, choice
                )
                if not satisfied:
                    candidates.add(ant)

    ordered = sorted(candidates, key=Literal.sort_key)
    existing_ids = theory.fact_ids() | theory.rule_ids()
    results: list[tuple[Literal, ...]] = []
    for size in range(1, max_set_size + 1):
        for combo in itertools.combinations(ordered, size):
            if any(set(prev) <= set(combo) for prev in results):
                continue
            extra = []
            for i, lit in enumerate(combo):
                fact_id = f"hypothesis-{i}"
                while fact_id in existing_ids:
                    fact_id += "'"
                extra.append(Fact(fact_id, lit))
            candidate_theory = Theory(
                theory.facts + tuple(extra),
                theory.rules,
                theory.provenance,
                theory.variables,
            )
            if answer(candidate_theory, query, config).truth:
                results.append(combo)
    results.sort(key=lambda combo: (len(combo), [l.sort_key() for l in combo]))
    return results


# ---------------------------------------------------------------------------
# edits and what-if evaluation

@dataclass(frozen=True)
class AddFact:
    fact: Fact
    source: Optional[str] = None


@dataclass(frozen=True)
class RemoveFact:
    id: str


@dataclass(frozen=True)
class AddRule:
    rule: Rule
    source: Optional[str] = None


@dataclass(frozen=True)
class RemoveRule:
    id: str


@dataclass(frozen=True)
class ReplaceFact:
    id: str
    literal: Literal


Edit = Union[AddFact, RemoveFact, AddRule, RemoveRule, ReplaceFact]


def apply_edits(theory: Theory, edits: Sequence[Edit]) -> Theory:
    facts = list(theory.facts)
    rules = list(theory.rules)
    provenance = dict(theory.provenance)

    def drop_provenance(item_id: str) -> None:
        provenance.pop(item_id, None)

    for edit in edits:
        if isinstance(edit, AddFact):
            facts.append(edit.fact)
            if edit.source is not None:
                provenance[edit.fact.id] = edit.source
        elif isinstance(edit, AddRule):
            rules.append(edit.rule)
            if edit.source is not None:
                provenance[edit.rule.id] = edit.source
        elif isinstance(edit, RemoveFact):
            if edit.id not in {f.id for f in facts}:
                raise UnknownId(f"no fact with id {edit.id!r}")
            facts = [f for f in facts if f.id != edit.id]
            drop_provenance(edit.id)
        elif isinstance(edit, RemoveRule):
            if edit.id not in {r.id for r in rules}:
                raise UnknownId(f"no rule with id {edit.id!r}")
            rules = [r for r in rules if r.id != edit.id]
            drop_provenance(edit.id)
        elif isinstance(edit, ReplaceFact):
            index = next((i for i, f in enumerate(facts) if f.id == edit.id), None)
            if index is None:
                raise UnknownId(f"no fact with id {edit.id!r}")
            facts[index] = Fact(edit.id, edit.literal)
        else:
            raise RlsError(f"unknown edit {edit!r}")
    return Theory(tuple(facts), tuple(rules), provenance, theory.variables)


@dataclass(frozen=True)
class WhatIfResult:
    truth: bool
    proof: ProofNode
    unification: Optional[UnificationRecord]
    added: tuple[tuple[Literal, int], ...]
    removed: tuple[tuple[Literal, int], ...]

    def to_dict(self) -> dict:
        doc = {
            "truth": self.truth,
            "proof": self.proof.to_dict(),
            "delta": {
                "added": [
                    {"literal": l.to_dict(), "depth": d} for l, d in self.added
                ],
                "removed": [
                    {"literal": l.to_dict(), "depth": d} for l, d in self.removed
                ],
            },
        }
        if self.unification is not None:
            doc["unification"] = self.unification.to_dict()
        return doc


def what_if(
    theory: Theory,
    edits: Sequence[Edit],
    query: Query,
    config: ReasonerConfig = ReasonerConfig(),
) -> WhatIfResult:
    """Answer the query on an edited copy; the original theory is untouched."""
    edited = apply_edits(theory, edits)
    result = answer(edited, query, config)
    before = enumerate_implications(theory, config)
    after = enumerate_implications(edited, config)
    before_atoms = {lit for lit, _ in before}
    after_atoms = {lit for lit, _ in after}
    added = tuple((lit, d) for lit, d in after if lit not in before_atoms)
    removed = tuple((lit, d) for lit, d in before if lit not in after_atoms)
    return WhatIfResult(result.truth, result.proof, result.unification, added, removed)
