"""Brute-force reference evaluator, kept independent of the main engine.

This module recomputes consequences the slow, obvious way so the main
reasoner has something to be checked against.  It shares only the data
types with :mod:`rls.reasoner`, none of the evaluation machinery:

* grounding is a direct substitution loop (no shared helper),
* the model comes from an alternating fixpoint (compute consequences
  assuming a reference set for negation-as-failure checks, feed the
  result back in, repeat until stable), which for stratified theories
  converges to the same model a stratified evaluation produces without
  ever computing strata,
* depths are labeled afterwards by plain rounds: facts are depth 0 and
  an atom gets depth k when some rule derives it from children of
  depth at most k-1 (failure leaves count 0).

Matching is exact only.  The synthetic-data generator labels its
queries with this oracle, and the equivalence tests in the suite
compare the production engine against it on random theories.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Literal, LiteralKind, Polarity, Theory


def _domain(theory: Theory) -> list[str]:
    found: set[str] = set()
    literals = [f.literal for f in theory.facts]
    for rule in theory.rules:
        literals.extend(rule.antecedents)
        literals.append(rule.consequent)
    for lit in literals:
        if lit.a not in theory.variables:
            found.add(lit.a)
        if lit.kind is LiteralKind.RELATION and lit.b not in theory.variables:
            found.add(lit.b)
    return sorted(found)


def _ground_rules(theory: Theory) -> list[tuple[tuple[Literal, ...], Literal]]:
    out = []
    for rule in theory.rules:
        variables = {
            term
            for lit in rule.antecedents + (rule.consequent,)
            for term in lit.terms()
            if term in theory.variables
        }
        if not variables:
            out.append((rule.antecedents, rule.consequent))
            continue
        var = min(variables)
        for entity in _domain(theory):
            ants = tuple(l.substitute(var, entity) for l in rule.antecedents)
            out.append((ants, rule.consequent.substitute(var, entity)))
    return out


def _consequences(
    ground_rules: list[tuple[tuple[Literal, ...], Literal]],
    base: frozenset[Literal],
    naf_reference: frozenset[Literal],
) -> frozenset[Literal]:
    """All atoms derivable when failure checks consult ``naf_reference``."""
    derived = set(base)
    changed = True
    while changed:
        changed = False
        for ants, cons in ground_rules:
            if cons in derived:
                continue
            ok = True
            for ant in ants:
                if ant.polarity is Polarity.POSITIVE:
                    if ant not in derived:
                        ok = False
                        break
                else:
                    if ant not in derived and ant.atom() in naf_reference:
                        ok = False
                        break
            if ok:
                derived.add(cons)
                changed = True
    return frozenset(derived)


@dataclass(frozen=True)
class NaiveResult:
    model: frozenset[Literal]
    depths: dict[Literal, int]

    def positives(self) -> dict[Literal, int]:
        return {
            lit: d for lit, d in self.depths.items() if lit.polarity is Polarity.POSITIVE
        }

    def negatives(self) -> frozenset[Literal]:
        return frozenset(l for l in self.model if l.polarity is Polarity.NEGATIVE)


def naive_closure(theory: Theory) -> NaiveResult:
    """Model and minimal proof depths for a (stratified) theory."""
    ground_rules = _ground_rules(theory)
    base = frozenset(f.literal for f in theory.facts)

    model: frozenset[Literal] = frozenset()
    while True:
        step = _consequences(ground_rules, base, _consequences(ground_rules, base, model))
        if step == model:
            break
        model = step

    depths: dict[Literal, int] = {lit: 0 for lit in base}
    while True:
        additions: dict[Literal, int] = {}
        for ants, cons in ground_rules:
            if cons not in model or cons in depths:
                continue
            child_depths = []
            ready = True
            for ant in ants:
                if ant.polarity is Polarity.NEGATIVE and ant.atom() not in model:
                    child_depths.append(0)  # failure leaf
                elif ant in depths:
                    child_depths.append(depths[ant])
                else:
                    ready = False
                    break
            if not ready:
                continue
            depth = 1 + max(child_depths)
            if cons not in additions or depth < additions[cons]:
                additions[cons] = depth
        if not additions:
            break
        depths.update(additions)

    return NaiveResult(model=model, depths=depths)


def naive_answer(theory: Theory, literal: Literal) -> tuple[bool, Optional[int]]:
    """Truth of a ground literal under the closed-world assumption.

    Returns (truth, depth); depth is None when the answer rests purely
    on the absence of a derivation.
    """
    result = naive_closure(theory)
    if literal.polarity is Polarity.POSITIVE:
        if literal in result.model:
            return True, result.depths.get(literal)
        return False, None
    if literal in result.model:
        return True, result.depths.get(literal)
    if literal.atom() not in result.model:
        return True, None
    return False, None
