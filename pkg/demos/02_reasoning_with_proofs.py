"""Closed-world reasoning with full proof trees.

Facts plus rules close under forward chaining; every answer carries a
machine-checkable justification, including "false" answers, which get
an explicit closed-world leaf.  Depth is never a limit: the last
section runs a 40-step chain.
"""

from rls import (
    Fact,
    Literal,
    LiteralKind,
    Polarity,
    Query,
    Rule,
    Theory,
    answer,
    closure,
    enumerate_implications,
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
    provenance={"f1": "s0", "f2": "s0", "r1": "s1"},
)

result = answer(theory, Query(attr("Harry", "is", "round")))
print("is Harry round?", result.truth)
print(render_proof(result.proof))

result = answer(theory, Query(attr("Harry", "is", "green")))
print("\nis Harry green?", result.truth)
print(render_proof(result.proof))

result = answer(theory, Query(attr("Harry", "is", "green", "-")))
print("\nis Harry not green?", result.truth, "(closed world)")

print("\neverything derivable but not asserted:")
for literal, depth in enumerate_implications(theory):
    print(f"  {literal} at depth {depth}")

# negation as failure: rules may test for the absence of an atom
guarded = Theory(
    facts=(Fact("f1", attr("Bob", "is", "quiet")),),
    rules=(
        Rule(
            "r1",
            (attr("Bob", "is", "quiet"), attr("Bob", "is", "loud", "-")),
            attr("Bob", "is", "calm"),
        ),
    ),
)
result = answer(guarded, Query(attr("Bob", "is", "calm")))
print("\nis Bob calm (given he is not provably loud)?", result.truth)
print(render_proof(result.proof))

# arbitrary depth: a 40-step chain
chain = Theory(
    facts=(Fact("f0", attr("Harry", "is", "p0")),),
    rules=tuple(
        Rule(f"r{i:02d}", (attr("someone", "is", f"p{i}"),), attr("someone", "is", f"p{i+1}"))
        for i in range(40)
    ),
)
depths = closure(chain).derived
print("\n40-step chain: p40 derived at depth", depths[attr("Harry", "is", "p40")])
