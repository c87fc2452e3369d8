"""JSON HTTP service over a single living theory.

Endpoints (all JSON):

    GET  /theory          current theory with provenance
    POST /theory          load from {"theory": {...}} or
                          {"sentences": [...], "source": "gold"|"template"|"predictions",
                           "predictions": [{"id","predicted"}...]}
    POST /edit            {"edits": [...]} applies and returns theory + implication delta
    POST /query           {"query": "<encoded literal>"} -> truth + proof
    POST /whatif          {"edits": [...], "query": "..."} non-destructive preview
    GET  /implications    derived, non-asserted atoms with depths
    GET  /contradictions  clashing atom pairs
    POST /abduce          {"query": "...", "max_set_size": n} -> minimal fact sets

Edits are JSON objects: {"op": "add_fact"|"add_rule"|"remove_fact"|"remove_rule"|
"replace_fact"|"replace_rule", "id": ..., "encoded": ...}; new items may omit
the id.  Responses that ran the reasoner include the unification records used.
Malformed payloads get a 400 with a machine-readable reason; a theory that
cannot be stratified gets a 422.  The UI in frontend/ is served from the
static directory when one is configured.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..codec import Conjunction, MalformedSequence, RuleFormula, decode, encode_literal
from ..core import DuplicateId, Fact, InvalidTheory, Query, RlsError, Rule, Theory
from ..ingest import (
    PredictionRecord,
    SentenceRecord,
    load_predictions,
    theory_from_sentences,
)
from ..reasoner import (
    AddFact,
    AddRule,
    Edit,
    NotStratified,
    ReasonerConfig,
    RemoveFact,
    RemoveRule,
    ReplaceFact,
    UnknownId,
    answer,
    abduce,
    apply_edits,
    closure,
    detect_contradictions,
    enumerate_implications,
    what_if,
)


class ServerState:
    def __init__(self, theory: Optional[Theory] = None,
                 config: ReasonerConfig = ReasonerConfig()):
        self.theory = theory if theory is not None else Theory()
        self.config = config
        self.lock = threading.RLock()


def _error(status: int, kind: str, reason: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"type": kind, "reason": reason, **extra}})


def _fresh_id(theory: Theory, taken: set[str], prefix: str) -> str:
    existing = theory.fact_ids() | theory.rule_ids() | taken
    index = 0
    while f"{prefix}{index}" in existing:
        index += 1
    return f"{prefix}{index}"


def _parse_edits(theory: Theory, payload: list[dict]) -> list[Edit]:
    edits: list[Edit] = []
    taken: set[str] = set()
    for entry in payload:
        op = entry.get("op")
        if op == "add_fact":
            literal = _single_literal(entry["encoded"])
            fact_id = entry.get("id") or _fresh_id(theory, taken, "f")
            taken.add(fact_id)
            edits.append(AddFact(Fact(fact_id, literal), source=entry.get("source")))
        elif op == "add_rule":
            formula = decode(entry["encoded"])
            if not isinstance(formula, RuleFormula):
                raise RlsError("add_rule needs an encoded rule containing <impl>")
            rule_id = entry.get("id") or _fresh_id(theory, taken, "r")
            taken.add(rule_id)
            edits.append(
                AddRule(Rule(rule_id, formula.antecedents, formula.consequent),
                        source=entry.get("source"))
            )
        elif op == "remove_fact":
            edits.append(RemoveFact(entry["id"]))
        elif op == "remove_rule":
            edits.append(RemoveRule(entry["id"]))
        elif op == "remove":
            item_id = entry["id"]
            if item_id in theory.rule_ids():
                edits.append(RemoveRule(item_id))
            else:
                edits.append(RemoveFact(item_id))
        elif op == "replace_fact":
            edits.append(ReplaceFact(entry["id"], _single_literal(entry["encoded"])))
        elif op == "replace_rule":
            formula = decode(entry["encoded"])
            if not isinstance(formula, RuleFormula):
                raise RlsError("replace_rule needs an encoded rule containing <impl>")
            rule = Rule(entry["id"], formula.antecedents, formula.consequent)
            edits.append(RemoveRule(entry["id"]))
            edits.append(AddRule(rule))
        else:
            raise RlsError(f"unknown edit op {op!r}")
    return edits


def _single_literal(encoded: str):
    formula = decode(encoded)
    if not isinstance(formula, Conjunction) or len(formula.literals) != 1:
        raise RlsError("expected a single encoded literal")
    return formula.literals[0]


def _theory_view(theory: Theory) -> dict:
    return {"theory": theory.to_dict(), "provenance": dict(theory.provenance)}


def _literal_view(literal, depth=None) -> dict:
    doc = {"literal": literal.to_dict(), "encoded": encode_literal(literal)}
    if depth is not None:
        doc["depth"] = depth
    return doc


def create_app(state: Optional[ServerState] = None,
               static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="rls workbench api")
    if state is None:
        state = ServerState()
    app.state.rls = state

    @app.exception_handler(RlsError)
    async def handle_rls_error(_request: Request, err: RlsError):
        if isinstance(err, NotStratified):
            return _error(422, "not_stratified", str(err))
        if isinstance(err, MalformedSequence):
            return _error(400, "malformed_sequence", err.reason, position=err.position)
        if isinstance(err, UnknownId):
            return _error(400, "unknown_id", str(err))
        if isinstance(err, (DuplicateId, InvalidTheory)):
            return _error(400, "invalid_theory", str(err))
        return _error(400, "bad_request", str(err))

    @app.get("/theory")
    def get_theory():
        with state.lock:
            return _theory_view(state.theory)

    @app.post("/theory")
    async def post_theory(request: Request):
        payload = await request.json()
        with state.lock:
            if "theory" in payload:
                theory = Theory.from_dict(payload["theory"])
            elif "sentences" in payload:
                records = [SentenceRecord.from_dict(d) for d in payload["sentences"]]
                source = payload.get("source", "gold")
                predictions = None
                if "predictions" in payload:
                    predictions = load_predictions(
                        PredictionRecord(d["id"], d["predicted"])
                        for d in payload["predictions"]
                    )
                theory = theory_from_sentences(records, source, predictions)
            else:
                raise RlsError("provide either 'theory' or 'sentences'")
            state.theory = theory
            return _theory_view(theory)

    @app.post("/edit")
    async def post_edit(request: Request):
        payload = await request.json()
        with state.lock:
            edits = _parse_edits(state.theory, payload.get("edits", []))
            before = enumerate_implications(state.theory, state.config)
            edited = apply_edits(state.theory, edits)
            after = enumerate_implications(edited, state.config)
            used = closure(edited, state.config).unifications_used
            state.theory = edited
        before_atoms = {lit for lit, _ in before}
        after_atoms = {lit for lit, _ in after}
        return {
            **_theory_view(edited),
            "delta": {
                "added": [_literal_view(l, d) for l, d in after if l not in before_atoms],
                "removed": [_literal_view(l, d) for l, d in before if l not in after_atoms],
            },
            "unifications": [r.to_dict() for r in used],
        }

    @app.post("/query")
    async def post_query(request: Request):
        payload = await request.json()
        literal = _single_literal(payload.get("query", ""))
        with state.lock:
            theory, config = state.theory, state.config
        result = answer(theory, Query(literal), config)
        used = closure(theory, config).unifications_used
        doc = result.to_dict()
        doc["query"] = _literal_view(literal)
        doc["unifications"] = [r.to_dict() for r in used]
        return doc

    @app.post("/whatif")
    async def post_whatif(request: Request):
        payload = await request.json()
        literal = _single_literal(payload.get("query", ""))
        with state.lock:
            theory, config = state.theory, state.config
            edits = _parse_edits(theory, payload.get("edits", []))
        result = what_if(theory, edits, Query(literal), config)
        edited = apply_edits(theory, edits)
        used = closure(edited, config).unifications_used
        doc = result.to_dict()
        doc["query"] = _literal_view(literal)
        doc["delta"] = {
            "added": [_literal_view(l, d) for l, d in result.added],
            "removed": [_literal_view(l, d) for l, d in result.removed],
        }
        doc["unifications"] = [r.to_dict() for r in used]
        return doc

    @app.get("/implications")
    def get_implications():
        with state.lock:
            theory, config = state.theory, state.config
        implications = enumerate_implications(theory, config)
        used = closure(theory, config).unifications_used
        return {
            "implications": [_literal_view(l, d) for l, d in implications],
            "unifications": [r.to_dict() for r in used],
        }

    @app.get("/contradictions")
    def get_contradictions():
        with state.lock:
            theory, config = state.theory, state.config
        pairs = detect_contradictions(theory, config)
        used = closure(theory, config).unifications_used
        return {
            "contradictions": [
                {"positive": _literal_view(p), "negative": _literal_view(n)}
                for p, n in pairs
            ],
            "unifications": [r.to_dict() for r in used],
        }

    @app.post("/abduce")
    async def post_abduce(request: Request):
        payload = await request.json()
        literal = _single_literal(payload.get("query", ""))
        max_set_size = int(payload.get("max_set_size", 2))
        with state.lock:
            theory, config = state.theory, state.config
        sets = abduce(theory, Query(literal), max_set_size, config)
        used = closure(theory, config).unifications_used
        return {
            "query": _literal_view(literal),
            "hypotheses": [[_literal_view(l) for l in combo] for combo in sets],
            "unifications": [r.to_dict() for r in used],
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")
    return app


def serve(
    theory: Optional[Theory] = None,
    config: ReasonerConfig = ReasonerConfig(),
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: Optional[str] = None,
) -> None:
    import uvicorn

    app = create_app(ServerState(theory, config), static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)
