"""Interactive rectification session over a loaded theory.

Commands:

    show                         list facts and rules with provenance
    ask <encoded literal>        answer a query, keep the proof around
    proof                        render the proof of the last answer
    edit <id> <encoded>          replace a fact or rule, revalidated
    drop <id>                    remove a fact or rule
    add <encoded>                add a fact (or rule when it has <impl>)
    whatif <edits> ? <encoded>   preview edits without committing them
    save <path>                  write the theory JSON to disk
    help, quit

Every edit re-validates through the codec and re-runs the closure from
scratch; at this scale correctness beats incrementality.  Command
errors are echoed and the session continues.
"""

from __future__ import annotations

import sys
from typing import IO, Optional

from ..codec import Conjunction, RuleFormula, decode
from ..core import Fact, Query, RlsError, Rule, Theory
from ..proofs import render_proof
from ..reasoner import (
    AddFact,
    AddRule,
    Answer,
    Edit,
    ReasonerConfig,
    RemoveFact,
    RemoveRule,
    ReplaceFact,
    answer,
    apply_edits,
    what_if,
)


class StopSession(Exception):
    pass


def _fresh_id(theory: Theory, prefix: str) -> str:
    taken = theory.fact_ids() | theory.rule_ids()
    index = 0
    while f"{prefix}{index}" in taken:
        index += 1
    return f"{prefix}{index}"


class Repl:
    def __init__(self, theory: Theory, config: ReasonerConfig = ReasonerConfig()):
        self.theory = theory
        self.config = config
        self.last: Optional[Answer] = None

    # -- command implementations, each returns the text to print

    def _cmd_show(self, _arg: str) -> str:
        lines = ["facts:"]
        for fact in self.theory.facts:
            source = self.theory.provenance.get(fact.id)
            suffix = f"   (from {source})" if source else ""
            lines.append(f"  {fact.id}: {fact.literal}{suffix}")
        lines.append("rules:")
        for rule in self.theory.rules:
            source = self.theory.provenance.get(rule.id)
            suffix = f"   (from {source})" if source else ""
            lines.append(f"  {rule.id}: {rule}{suffix}")
        return "\n".join(lines)

    def _cmd_ask(self, arg: str) -> str:
        formula = decode(arg)
        if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
            return "error: ask expects a single encoded literal"
        result = answer(self.theory, Query(formula.literals[0]), self.config)
        self.last = result
        verdict = "true" if result.truth else "false"
        if result.proof.kind == "naf":
            verdict += " (closed world)"
        return f"{verdict}\n{render_proof(result.proof)}"

    def _cmd_proof(self, _arg: str) -> str:
        if self.last is None:
            return "error: no answer yet; ask something first"
        return render_proof(self.last.proof)

    @staticmethod
    def _edit_for(theory: Theory, item_id: str, encoded: str) -> list[Edit]:
        formula = decode(encoded)
        if item_id in theory.fact_ids():
            if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
                raise RlsError(f"{item_id} is a fact; give a single encoded literal")
            return [ReplaceFact(item_id, formula.literals[0])]
        if item_id in theory.rule_ids():
            if not isinstance(formula, RuleFormula):
                raise RlsError(f"{item_id} is a rule; give an encoded rule with <impl>")
            rule = Rule(item_id, formula.antecedents, formula.consequent)
            return [RemoveRule(item_id), AddRule(rule)]
        raise RlsError(f"no fact or rule with id {item_id!r}")

    def _cmd_edit(self, arg: str) -> str:
        item_id, _, encoded = arg.partition(" ")
        if not encoded:
            return "usage: edit <id> <encoded literal or rule>"
        edits = self._edit_for(self.theory, item_id, encoded)
        self.theory = apply_edits(self.theory, edits)
        return f"updated {item_id}"

    def _cmd_drop(self, arg: str) -> str:
        item_id = arg.strip()
        if item_id in self.theory.fact_ids():
            self.theory = apply_edits(self.theory, [RemoveFact(item_id)])
        elif item_id in self.theory.rule_ids():
            self.theory = apply_edits(self.theory, [RemoveRule(item_id)])
        else:
            return f"error: no fact or rule with id {item_id!r}"
        return f"dropped {item_id}"

    def _cmd_add(self, arg: str) -> str:
        formula = decode(arg)
        if isinstance(formula, RuleFormula):
            rule_id = _fresh_id(self.theory, "r")
            rule = Rule(rule_id, formula.antecedents, formula.consequent)
            self.theory = apply_edits(self.theory, [AddRule(rule)])
            return f"added rule {rule_id}"
        added = []
        for literal in formula.literals:
            fact_id = _fresh_id(self.theory, "f")
            self.theory = apply_edits(self.theory, [AddFact(Fact(fact_id, literal))])
            added.append(fact_id)
        return f"added fact {', '.join(added)}"

    def _parse_whatif_edits(self, text: str) -> list[Edit]:
        edits: list[Edit] = []
        scratch = self.theory
        for piece in filter(None, (p.strip() for p in text.split(";"))):
            verb, _, rest = piece.partition(" ")
            if verb == "drop":
                item_id = rest.strip()
                if item_id in scratch.fact_ids():
                    step: list[Edit] = [RemoveFact(item_id)]
                elif item_id in scratch.rule_ids():
                    step = [RemoveRule(item_id)]
                else:
                    raise RlsError(f"no fact or rule with id {item_id!r}")
            elif verb == "add":
                formula = decode(rest)
                if isinstance(formula, RuleFormula):
                    rule = Rule(_fresh_id(scratch, "r"), formula.antecedents, formula.consequent)
                    step = [AddRule(rule)]
                else:
                    step = []
                    taken = scratch.fact_ids() | scratch.rule_ids()
                    for literal in formula.literals:
                        index = 0
                        while f"f{index}" in taken:
                            index += 1
                        taken.add(f"f{index}")
                        step.append(AddFact(Fact(f"f{index}", literal)))
            elif verb == "edit":
                item_id, _, encoded = rest.partition(" ")
                step = self._edit_for(scratch, item_id, encoded)
            else:
                raise RlsError(f"unknown what-if edit {verb!r} (use drop/add/edit)")
            edits.extend(step)
            scratch = apply_edits(scratch, step)
        return edits

    def _cmd_whatif(self, arg: str) -> str:
        edits_text, sep, query_text = arg.partition("?")
        if not sep:
            return "usage: whatif <edit>[; <edit>...] ? <encoded query>"
        formula = decode(query_text.strip())
        if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
            return "error: what-if query must be a single encoded literal"
        edits = self._parse_whatif_edits(edits_text)
        result = what_if(self.theory, edits, Query(formula.literals[0]), self.config)
        verdict = "true" if result.truth else "false"
        if result.proof.kind == "naf":
            verdict += " (closed world)"
        lines = [verdict, render_proof(result.proof)]
        if result.added:
            lines.append("now derivable: " + ", ".join(str(l) for l, _ in result.added))
        if result.removed:
            lines.append("no longer derivable: " + ", ".join(str(l) for l, _ in result.removed))
        if not result.added and not result.removed:
            lines.append("implications unchanged")
        return "\n".join(lines)

    def _cmd_save(self, arg: str) -> str:
        path = arg.strip()
        if not path:
            return "usage: save <path>"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.theory.to_json(indent=2) + "\n")
        return f"saved to {path}"

    def _cmd_help(self, _arg: str) -> str:
        return (
            "commands: show | ask <encoded> | proof | edit <id> <encoded> | "
            "drop <id> | add <encoded> | whatif <edits> ? <query> | save <path> | quit"
        )

    COMMANDS = {
        "show": _cmd_show,
        "ask": _cmd_ask,
        "proof": _cmd_proof,
        "edit": _cmd_edit,
        "drop": _cmd_drop,
        "add": _cmd_add,
        "whatif": _cmd_whatif,
        "save": _cmd_save,
        "help": _cmd_help,
    }

    def execute(self, line: str) -> str:
        line = line.strip()
        if not line:
            return ""
        verb, _, rest = line.partition(" ")
        verb = verb.lower()
        if verb in ("quit", "exit"):
            raise StopSession
        handler = self.COMMANDS.get(verb)
        if handler is None:
            return f"error: unknown command {verb!r} (try help)"
        try:
            return handler(self, rest.strip())
        except RlsError as err:
            return f"error: {err}"


def run_repl(
    theory: Theory,
    config: ReasonerConfig = ReasonerConfig(),
    stdin: IO[str] = sys.stdin,
    stdout: IO[str] = sys.stdout,
) -> Theory:
    """Line loop around Repl; returns the final theory state."""
    session = Repl(theory, config)
    stdout.write("rls workbench; type help for commands\n")
    while True:
        stdout.write("> ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            break
        try:
            output = session.execute(line)
        except StopSession:
            break
        if output:
            stdout.write(output + "\n")
    return session.theory
