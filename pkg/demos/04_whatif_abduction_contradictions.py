"""Counterfactuals, missing-fact hypotheses, and clash detection.

Because reasoning is symbolic, these all come for free from the same
closure: what-if evaluates edits without committing them, abduction
searches for minimal fact sets that would prove a failed query, and
contradiction detection surfaces atom pairs asserted with both signs.
"""

from rls import (
    Fact,
    Literal,
    LiteralKind,
    Polarity,
    Query,
    RemoveFact,
    Rule,
    Theory,
    abduce,
    answer,
    detect_contradictions,
    what_if,
)
from rls.proofs import render_proof


def attr(a, pred, b, pol="+"):
    return Literal(LiteralKind.ATTRIBUTE, a, pred, b, Polarity(pol))


theory = Theory(
    facts=(
        Fact("f1", attr("Harry", "is", "young")),
        Fact("f2", attr("Harry", "is", "nice")),
    ),
    rules=(
        Rule("r1", (attr("someone", "is", "nice"),), attr("someone", "is", "round")),
    ),
)

# "What if Harry was young but not nice?"
result = what_if(theory, [RemoveFact("f2")], Query(attr("Harry", "is", "round")))
print("without the nice fact, is Harry round?", result.truth)
print(render_proof(result.proof))
print("conclusions lost:", [str(l) for l, _ in result.removed])
print("original theory untouched:", len(theory.facts) == 2)

# abduction: what would make the query true again?
reduced = Theory(facts=(theory.facts[0],), rules=theory.rules)
hypotheses = abduce(reduced, Query(attr("Harry", "is", "round")), max_set_size=2)
print("\nminimal fact sets that would prove roundness:")
for combo in hypotheses:
    print("  " + " + ".join(str(l) for l in combo))

# contradiction detection
clashing = Theory(
    facts=(
        Fact("f1", attr("Anne", "is", "nice")),
        Fact("f2", attr("Anne", "is", "kind", "-")),
    ),
    rules=(Rule("r1", (attr("Anne", "is", "nice"),), attr("Anne", "is", "kind")),),
)
print("\nclashes (derived vs asserted):")
for positive, negative in detect_contradictions(clashing):
    print(f"  {positive}  vs  {negative}")
