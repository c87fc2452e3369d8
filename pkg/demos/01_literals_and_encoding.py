"""Literals, formulas, and the tag-encoded wire format.

Statements become polarized tuples: attributes like (Harry, is, young, +)
and relations like (Sol, son, Kent, +).  Formulas serialize to a flat
token string that a sequence model can emit and a parser can check.
"""

from rls import (
    Conjunction,
    Literal,
    LiteralKind,
    MalformedSequence,
    Polarity,
    RuleFormula,
    canonicalize,
    decode,
    encode,
    negate,
)

harry_young = Literal(LiteralKind.ATTRIBUTE, "Harry", "is", "young")
harry_nice = Literal(LiteralKind.ATTRIBUTE, "Harry", "is", "nice")
print("two attribute literals:", harry_young, harry_nice)
print("negation flips polarity:", negate(harry_young))

fact = Conjunction((harry_young, harry_nice))
print("\nencoded fact sentence:")
print(" ", encode(fact))

rule = RuleFormula(
    (Literal(LiteralKind.ATTRIBUTE, "someone", "is", "nice"),),
    Literal(LiteralKind.ATTRIBUTE, "someone", "is", "round"),
)
print("encoded rule sentence:")
print(" ", encode(rule))

kinship = Conjunction(
    (
        Literal(LiteralKind.RELATION, "Sol", "son", "Kent"),
        Literal(LiteralKind.RELATION, "Kent", "mother", "Sol"),
    )
)
print("relation literals elide the positive polarity tag:")
print(" ", encode(kinship))

# decode is total: it either returns a formula or a typed error
print("\nround trip:", decode(encode(fact)) == fact)
print("canonicalization normalizes spacing and elidable tags:")
print(" ", canonicalize("<arg1>  Sol <pred> son   <arg2> Kent <pos>"))

try:
    decode("<arg0> Harry <pred> is <arg1>")
except MalformedSequence as err:
    print("malformed input is a first-class outcome:", err)
