"""Weak unification: matching "gold" against "heart of gold".

Exact matching is brittle on natural text.  The token-containment
operator accepts a known atom whose content covers the needed one, and
the reasoner records every such assumption in the proof, so you can
see exactly which equivalences the answer leans on.
"""

from rls import (
    Fact,
    Literal,
    LiteralKind,
    Query,
    ReasonerConfig,
    Rule,
    Theory,
    UnifierChoice,
    answer,
    closure,
)
from rls.proofs import render_proof
from rls.unify import unify_token_containment

mary_has = Literal(LiteralKind.RELATION, "Mary", "has", "heart of gold")
needs_gold = Literal(LiteralKind.RELATION, "Mary", "has", "gold")

record = unify_token_containment(needs_gold, mary_has, threshold=0.5)
print("operator-level match:", record.matched, "score", record.score)

theory = Theory(
    facts=(Fact("f1", mary_has),),
    rules=(
        Rule("r1", (needs_gold,), Literal(LiteralKind.ATTRIBUTE, "Mary", "is", "rich")),
    ),
    provenance={"f1": "Mary is a young woman with a heart of gold.",
                "r1": "If Mary has gold then she is rich."},
)

exact = answer(theory, Query(Literal(LiteralKind.ATTRIBUTE, "Mary", "is", "rich")))
print("\nwith exact matching, is Mary rich?", exact.truth)

config = ReasonerConfig(unifier=UnifierChoice.token_containment(0.5))
weak = answer(theory, Query(Literal(LiteralKind.ATTRIBUTE, "Mary", "is", "rich")), config)
print("with token containment at 0.5, is Mary rich?", weak.truth)
print(render_proof(weak.proof))

print("\nassumptions the closure made:")
for used in closure(theory, config).unifications_used:
    if used.operator != "exact":
        print(f"  treated {used.needed} as matched by {used.matched} (score {used.score})")
