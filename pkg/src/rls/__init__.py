"""Extract, encode and reason over the logical structure of natural-language arguments.

The package is organized as:

* :mod:`rls.core` - literals, rules, facts, theories, grounding
* :mod:`rls.codec` - tag-encoded sequence format and its parser
* :mod:`rls.unify` - exact and weak literal-matching operators
* :mod:`rls.reasoner` - closed-world inference with proof trees
* :mod:`rls.naive` - the slow reference evaluator used as a test oracle
* :mod:`rls.ingest` - dataset converters, templated extraction, predictions
* :mod:`rls.harness` - metrics, synthetic data, reports, REPL, HTTP service
* :mod:`rls.cli` - the ``rls`` command
"""

from .codec import (
    Conjunction,
    Formula,
    MalformedSequence,
    RuleFormula,
    canonicalize,
    decode,
    encode,
)
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
    ground_all,
    negate,
)
from .reasoner import (
    AddFact,
    AddRule,
    Answer,
    ClosureResult,
    NonstratifiedPolicy,
    NotStratified,
    ProofNode,
    ReasonerConfig,
    RemoveFact,
    RemoveRule,
    ReplaceFact,
    abduce,
    answer,
    apply_edits,
    closure,
    detect_contradictions,
    enumerate_implications,
    what_if,
)
from .unify import UnificationRecord, UnifierChoice, best_match

__version__ = "0.1.0"

__all__ = [
    "Conjunction",
    "Formula",
    "MalformedSequence",
    "RuleFormula",
    "canonicalize",
    "decode",
    "encode",
    "Fact",
    "Literal",
    "LiteralKind",
    "Polarity",
    "Query",
    "RlsError",
    "Rule",
    "Theory",
    "entities",
    "ground",
    "ground_all",
    "negate",
    "AddFact",
    "AddRule",
    "Answer",
    "ClosureResult",
    "NonstratifiedPolicy",
    "NotStratified",
    "ProofNode",
    "ReasonerConfig",
    "RemoveFact",
    "RemoveRule",
    "ReplaceFact",
    "abduce",
    "answer",
    "apply_edits",
    "closure",
    "detect_contradictions",
    "enumerate_implications",
    "what_if",
    "UnificationRecord",
    "UnifierChoice",
    "best_match",
    "__version__",
]
