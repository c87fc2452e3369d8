"""Turning dataset metadata and templated sentences into formulas.

Three converters cover the source annotation shapes (quoted tuples,
kinship edges with genders, namespaced single facts), and a pattern
grammar extracts formulas from templated sentences directly.
"""

from rls import encode
from rls.ingest import (
    NoTemplateMatch,
    convert_clutrr,
    convert_lot,
    convert_ruletaker,
    extract_templated,
)

print("quoted-tuple fact annotation:")
formula = convert_ruletaker('("Harry" "is" "young" "+")  ("Harry" "is" "nice" "+")')
print(" ", encode(formula))

print("tuple-implication rule annotation:")
formula = convert_ruletaker('("someone" "is" "nice" "+") -> ("someone" "is" "round" "+")')
print(" ", encode(formula))

print("\nkinship edge with gendered inverse:")
formula = convert_clutrr([("Sol", "Kent")], ["son"], {"Sol": "female", "Kent": "male"})
print(" ", encode(formula))

print("\nnamespaced single-fact record:")
formula = convert_lot(
    {
        "subject": "mustard",
        "predicate": "/r/CapableOf",
        "object": "shade from sun",
        "validity": "never true",
    }
)
print(" ", encode(formula))

print("\ntemplated sentences:")
for sentence in [
    "Harry is young and nice.",
    "Nice people are usually round in shape.",
    "If someone is cold and not wet then they are happy.",
    "Harry does not see Bob.",
]:
    print(f"  {sentence!r}")
    print("   ->", encode(extract_templated(sentence)))

try:
    extract_templated("To his chagrin, blorp zag.")
except NoTemplateMatch as err:
    print("\nout-of-grammar input is an error, never a silent skip:")
    print(" ", err)
