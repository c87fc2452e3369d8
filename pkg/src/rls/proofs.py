"""Plain-text proof rendering: an indented tree, one literal per line,
with rule ids, bindings and any non-exact unifications annotated."""

from __future__ import annotations

from .reasoner import ProofNode


def _describe(node: ProofNode) -> str:
    if node.kind == "asserted":
        return f"{node.literal}  [fact {node.fact_id}]"
    if node.kind == "naf":
        return f"{node.literal}  [closed world: no derivation of {node.literal.atom()}]"
    binding = f" {node.binding}" if node.binding else ""
    return f"{node.literal}  [rule {node.rule_id}{binding}, depth {node.depth}]"


def render_proof(node: ProofNode, indent: int = 0) -> str:
    pad = "  " * indent
    lines = [pad + _describe(node)]
    for record in node.unifications:
        if record.operator != "exact":
            lines.append(
                f"{pad}  ~ {record.needed} matched {record.matched} "
                f"({record.operator}, score {record.score:.2f})"
            )
    for child in node.children:
        lines.append(render_proof(child, indent + 1))
    return "\n".join(lines)
