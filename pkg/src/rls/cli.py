"""Command line front end.

    rls extract        templated sentences -> predictions JSONL
    rls reason         answer one query against a theory, with proof
    rls eval           exact-match or answer-accuracy reports
    rls enumerate      list every derived, non-asserted atom
    rls abduce         minimal fact sets that would prove a query
    rls contradictions clashing atom pairs
    rls gen            synthetic oracle-labeled dataset
    rls repl           interactive rectification session
    rls serve          HTTP API (and the workbench UI when built)

Theories come either from a theory JSON file (--theory) or from a
sentences JSONL file (--sentences) interpreted per --source
(gold | template | predictions:<file>).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .codec import Conjunction, decode, encode
from .core import Query, RlsError, Theory
from .harness.generate import GenParams, generate_theory
from .harness.metrics import (
    dump_eval_items_jsonl,
    eval_answers,
    eval_em,
    load_eval_items_jsonl,
)
from .harness.repl import run_repl
from .harness.reports import report_to_dict, report_to_markdown
from .ingest import (
    NoTemplateMatch,
    PredictionRecord,
    SentenceRecord,
    TemplateGrammar,
    dump_predictions_jsonl,
    dump_sentences_jsonl,
    extract_templated,
    load_predictions_jsonl,
    load_sentences_jsonl,
    theory_from_sentences,
)
from .proofs import render_proof
from .reasoner import ReasonerConfig, abduce, answer, detect_contradictions, enumerate_implications
from .unify import UnifierChoice


def _add_reasoner_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--unifier",
        default="exact",
        help="matching operator: exact | normalized | token:<threshold>",
    )
    parser.add_argument(
        "--max-depth",
        type=int,
        default=None,
        help="truncate derivations beyond this depth (default: unlimited)",
    )


def _add_theory_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theory", help="theory JSON file")
    parser.add_argument("--sentences", help="sentences JSONL file")
    parser.add_argument(
        "--source",
        default="gold",
        help="sentence interpretation: gold | template | predictions:<file>",
    )


def _reasoner_config(args: argparse.Namespace) -> ReasonerConfig:
    return ReasonerConfig(
        max_depth=args.max_depth,
        unifier=UnifierChoice.parse(args.unifier),
    )


def _split_source(source: str):
    if source.startswith("predictions:"):
        return "predictions", source.split(":", 1)[1]
    if source in ("gold", "template"):
        return source, None
    raise RlsError(f"unknown source {source!r}")


def _load_theory(args: argparse.Namespace) -> Theory:
    if args.theory:
        with open(args.theory, "r", encoding="utf-8") as fh:
            return Theory.from_json(fh.read())
    if args.sentences:
        source, predictions_path = _split_source(args.source)
        predictions = (
            load_predictions_jsonl(predictions_path) if predictions_path else None
        )
        records = load_sentences_jsonl(args.sentences)
        return theory_from_sentences(records, source, predictions)
    raise RlsError("provide --theory or --sentences")


def _parse_query(text: str) -> Query:
    formula = decode(text)
    if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
        raise RlsError("query must be a single encoded literal")
    return Query(formula.literals[0])


# ---------------------------------------------------------------------------
# subcommands

def _cmd_extract(args: argparse.Namespace) -> int:
    records = load_sentences_jsonl(args.sentences)
    grammar = TemplateGrammar.load(args.grammar) if args.grammar else None
    predictions = []
    misses = 0
    for record in records:
        try:
            predicted = encode(extract_templated(record.text, grammar))
        except NoTemplateMatch:
            misses += 1
            predicted = ""
        predictions.append(PredictionRecord(record.id, predicted))
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        dump_predictions_jsonl(predictions, out)
    finally:
        if args.out:
            out.close()
    if misses:
        print(f"warning: {misses} sentences matched no template", file=sys.stderr)
    return 0


def _cmd_reason(args: argparse.Namespace) -> int:
    theory = _load_theory(args)
    result = answer(theory, _parse_query(args.query), _reasoner_config(args))
    if args.format == "json":
        print(json.dumps(result.to_dict(), indent=2))
    else:
        verdict = "true" if result.truth else "false"
        if result.proof.kind == "naf":
            verdict += " (closed world)"
        print(verdict)
        print(render_proof(result.proof))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    if args.golds and args.predictions:
        golds = {}
        for record in load_sentences_jsonl(args.golds):
            if record.gold is None:
                raise RlsError(f"sentence {record.id} has no gold encoding")
            golds[record.id] = decode(record.gold)
        report = eval_em(load_predictions_jsonl(args.predictions), golds)
        title = "Exact-match report"
    elif args.dataset:
        source, predictions_path = _split_source(args.source)
        predictions = (
            load_predictions_jsonl(predictions_path) if predictions_path else None
        )
        items = load_eval_items_jsonl(args.dataset)
        report = eval_answers(items, source, predictions, _reasoner_config(args))
        title = f"Answer accuracy ({source} source)"
    else:
        raise RlsError("provide --dataset, or --golds with --predictions")
    if args.format == "json":
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        print(report_to_markdown(report, title=title), end="")
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    theory = _load_theory(args)
    implications = enumerate_implications(theory, _reasoner_config(args))
    if args.format == "json":
        doc = [{"literal": l.to_dict(), "depth": d} for l, d in implications]
        print(json.dumps(doc, indent=2))
    else:
        for literal, depth in implications:
            print(f"{literal}  (depth {depth})")
    return 0


def _cmd_abduce(args: argparse.Namespace) -> int:
    theory = _load_theory(args)
    sets = abduce(
        theory, _parse_query(args.query), args.max_size, _reasoner_config(args)
    )
    if args.format == "json":
        print(json.dumps([[l.to_dict() for l in combo] for combo in sets], indent=2))
    else:
        if not sets:
            print("no hypothesis sets found")
        for combo in sets:
            print(" + ".join(str(l) for l in combo))
    return 0


def _cmd_contradictions(args: argparse.Namespace) -> int:
    theory = _load_theory(args)
    pairs = detect_contradictions(theory, _reasoner_config(args))
    if args.format == "json":
        doc = [{"positive": p.to_dict(), "negative": n.to_dict()} for p, n in pairs]
        print(json.dumps(doc, indent=2))
    else:
        if not pairs:
            print("no contradictions")
        for positive, negative in pairs:
            print(f"{positive}  clashes with  {negative}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    items = []
    sentence_records = []
    for index in range(args.count):
        params = GenParams(
            entities=args.entities,
            properties=args.properties,
            rules=args.rules,
            facts=args.facts,
            depth=args.depth,
            negation_prob=args.neg_prob,
            seed=args.seed + index,
        )
        instance = generate_theory(params)
        items.extend(instance.eval_items(prefix=f"i{index}:"))
        for record in list(instance.sentences) + [q.record for q in instance.queries]:
            sentence_records.append(
                SentenceRecord(f"i{index}:{record.id}", record.text, record.role, record.gold)
            )
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        dump_eval_items_jsonl(items, out)
    finally:
        if args.out:
            out.close()
    if args.sentences_out:
        with open(args.sentences_out, "w", encoding="utf-8") as fh:
            dump_sentences_jsonl(sentence_records, fh)
    print(
        f"generated {args.count} theories, {len(items)} questions",
        file=sys.stderr,
    )
    return 0


def _cmd_repl(args: argparse.Namespace) -> int:
    theory = _load_theory(args)
    run_repl(theory, _reasoner_config(args))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .harness.service import serve

    theory = None
    if args.theory or args.sentences:
        theory = _load_theory(args)
    serve(
        theory=theory,
        config=_reasoner_config(args),
        host=args.host,
        port=args.port,
        static_dir=args.static,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rls",
        description="extract, encode and reason over the logical structure of arguments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="run the template extractor over sentences")
    p.add_argument("--sentences", required=True)
    p.add_argument("--out", help="predictions JSONL output (default stdout)")
    p.add_argument("--grammar", help="alternative template grammar JSON")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("reason", help="answer a query with a proof")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.add_argument("--query", required=True, help="encoded literal")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_reason)

    p = sub.add_parser("eval", help="exact-match or answer-accuracy evaluation")
    p.add_argument("--dataset", help="eval items JSONL (answer accuracy)")
    p.add_argument("--golds", help="gold sentences JSONL (exact match)")
    p.add_argument("--predictions", help="predictions JSONL (exact match)")
    p.add_argument(
        "--source", default="gold", help="gold | template | predictions:<file>"
    )
    _add_reasoner_options(p)
    p.add_argument("--format", choices=["json", "markdown"], default="markdown")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("enumerate", help="list derived, non-asserted atoms")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("abduce", help="minimal fact sets that would prove a query")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.add_argument("--query", required=True)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_abduce)

    p = sub.add_parser("contradictions", help="report clashing atom pairs")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_contradictions)

    p = sub.add_parser("gen", help="generate an oracle-labeled synthetic dataset")
    p.add_argument("--count", type=int, default=10, help="number of theories")
    p.add_argument("--entities", type=int, default=3)
    p.add_argument("--properties", type=int, default=10)
    p.add_argument("--rules", type=int, default=6)
    p.add_argument("--facts", type=int, default=5)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--neg-prob", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="eval items JSONL output (default stdout)")
    p.add_argument("--sentences-out", help="also dump flat gold sentences JSONL")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("repl", help="interactive rectification session")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.set_defaults(func=_cmd_repl)

    p = sub.add_parser("serve", help="run the HTTP API / workbench server")
    _add_theory_options(p)
    _add_reasoner_options(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--static", help="directory of built workbench assets to serve")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RlsError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
