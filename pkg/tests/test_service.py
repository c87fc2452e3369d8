import pytest
from fastapi.testclient import TestClient

from rls.core import Fact, Literal, LiteralKind, Polarity, Rule, Theory
from rls.harness.service import ServerState, create_app
from rls.reasoner import ReasonerConfig
from rls.unify import UnifierChoice


def attr(a, pred, b, pol="+"):
    return Literal(LiteralKind.ATTRIBUTE, a, pred, b, Polarity(pol))


def table_theory():
    return Theory(
        facts=(
            Fact("f1", attr("Harry", "is", "young")),
            Fact("f2", attr("Harry", "is", "nice")),
        ),
        rules=(
            Rule("r1", (attr("someone", "is", "nice"),), attr("someone", "is", "round")),
        ),
    )


ROUND_QUERY = "<arg0> Harry <pred> is <arg1> round <pos>"


@pytest.fixture
def client():
    return TestClient(create_app(ServerState(table_theory())))


class TestTheoryEndpoints:
    def test_get_theory(self, client):
        doc = client.get("/theory").json()
        assert [f["id"] for f in doc["theory"]["facts"]] == ["f1", "f2"]

    def test_post_theory_from_sentences(self, client):
        payload = {
            "sentences": [
                {"id": "s0", "text": "Harry is young and nice.", "role": "fact"},
                {"id": "s1", "text": "Nice people are round.", "role": "rule"},
            ],
            "source": "template",
        }
        doc = client.post("/theory", json=payload).json()
        assert len(doc["theory"]["facts"]) == 2
        assert doc["provenance"]["s0:0"] == "s0"

    def test_post_theory_document(self, client):
        doc = client.post("/theory", json={"theory": table_theory().to_dict()})
        assert doc.status_code == 200

    def test_bad_payload_is_400(self, client):
        response = client.post("/theory", json={"nothing": True})
        assert response.status_code == 400
        assert response.json()["error"]["type"] == "bad_request"


class TestQuery:
    def test_true_query_with_proof(self, client):
        response = client.post("/query", json={"query": ROUND_QUERY})
        assert response.status_code == 200
        doc = response.json()
        assert doc["truth"] is True
        assert doc["proof"]["kind"] == "rule"
        assert doc["proof"]["depth"] == 1
        assert doc["unifications"] == [
            {
                "needed": {"a": "Harry", "pred": "is", "b": "nice", "kind": "attr", "polarity": "+"},
                "matched": {"a": "Harry", "pred": "is", "b": "nice", "kind": "attr", "polarity": "+"},
                "score": 1.0,
                "operator": "exact",
            }
        ]

    def test_false_query_has_cwa_leaf(self, client):
        response = client.post(
            "/query", json={"query": "<arg0> Harry <pred> is <arg1> green <pos>"}
        )
        doc = response.json()
        assert doc["truth"] is False
        assert doc["proof"]["kind"] == "naf"

    def test_malformed_query_is_400(self, client):
        response = client.post("/query", json={"query": "<arg0> Harry <pred>"})
        assert response.status_code == 400
        assert response.json()["error"]["type"] == "malformed_sequence"
        assert "position" in response.json()["error"]


class TestEdits:
    def test_edit_reports_delta(self, client):
        response = client.post(
            "/edit",
            json={"edits": [{"op": "remove_fact", "id": "f2"}]},
        )
        doc = response.json()
        removed = [entry["encoded"] for entry in doc["delta"]["removed"]]
        assert removed == ["<arg0> Harry <pred> is <arg1> round <pos>"]
        assert [f["id"] for f in doc["theory"]["facts"]] == ["f1"]

    def test_edit_unknown_id_is_400(self, client):
        response = client.post(
            "/edit", json={"edits": [{"op": "remove_fact", "id": "zz"}]}
        )
        assert response.status_code == 400
        assert response.json()["error"]["type"] == "unknown_id"

    def test_replace_fact_via_encoded_text(self, client):
        response = client.post(
            "/edit",
            json={
                "edits": [
                    {
                        "op": "replace_fact",
                        "id": "f2",
                        "encoded": "<arg0> Harry <pred> is <arg1> nice <neg>",
                    }
                ]
            },
        )
        assert response.status_code == 200
        query = client.post("/query", json={"query": ROUND_QUERY}).json()
        assert query["truth"] is False

    def test_whatif_leaves_theory_unchanged(self, client):
        before = client.get("/theory").json()
        response = client.post(
            "/whatif",
            json={
                "edits": [{"op": "remove_fact", "id": "f2"}],
                "query": ROUND_QUERY,
            },
        )
        doc = response.json()
        assert doc["truth"] is False
        assert doc["proof"]["kind"] == "naf"
        assert len(doc["delta"]["removed"]) == 1
        assert client.get("/theory").json() == before


class TestEnumerationEndpoints:
    def test_implications(self, client):
        doc = client.get("/implications").json()
        assert doc["implications"] == [
            {
                "literal": {"a": "Harry", "pred": "is", "b": "round", "kind": "attr", "polarity": "+"},
                "encoded": "<arg0> Harry <pred> is <arg1> round <pos>",
                "depth": 1,
            }
        ]

    def test_contradictions(self, client):
        client.post(
            "/edit",
            json={
                "edits": [
                    {"op": "add_fact", "encoded": "<arg0> Harry <pred> is <arg1> round <neg>"}
                ]
            },
        )
        doc = client.get("/contradictions").json()
        assert len(doc["contradictions"]) == 1
        assert doc["contradictions"][0]["negative"]["literal"]["polarity"] == "-"

    def test_abduce(self, client):
        client.post("/edit", json={"edits": [{"op": "remove_fact", "id": "f2"}]})
        doc = client.post(
            "/abduce", json={"query": ROUND_QUERY, "max_set_size": 2}
        ).json()
        assert doc["hypotheses"] == [
            [
                {
                    "literal": {"a": "Harry", "pred": "is", "b": "nice", "kind": "attr", "polarity": "+"},
                    "encoded": "<arg0> Harry <pred> is <arg1> nice <pos>",
                }
            ]
        ]

    def test_abduce_already_provable_is_400(self, client):
        response = client.post("/abduce", json={"query": ROUND_QUERY})
        assert response.status_code == 400


class TestStratificationError:
    def test_not_stratified_is_422(self):
        theory = Theory(
            facts=(Fact("f1", attr("A", "is", "seed")),),
            rules=(
                Rule("r1", (attr("A", "is", "q", "-"),), attr("A", "is", "p")),
                Rule("r2", (attr("A", "is", "p", "-"),), attr("A", "is", "q")),
            ),
        )
        client = TestClient(create_app(ServerState(theory)))
        response = client.post(
            "/query", json={"query": "<arg0> A <pred> is <arg1> p <pos>"}
        )
        assert response.status_code == 422
        assert response.json()["error"]["type"] == "not_stratified"


class TestWeakUnifierService:
    def test_unification_records_in_response(self):
        theory = Theory(
            facts=(Fact("f1", Literal(LiteralKind.RELATION, "Mary", "has", "heart of gold")),),
            rules=(
                Rule(
                    "r1",
                    (Literal(LiteralKind.RELATION, "Mary", "has", "gold"),),
                    attr("Mary", "is", "rich"),
                ),
            ),
        )
        state = ServerState(
            theory, ReasonerConfig(unifier=UnifierChoice.token_containment(0.5))
        )
        client = TestClient(create_app(state))
        doc = client.post(
            "/query", json={"query": "<arg0> Mary <pred> is <arg1> rich <pos>"}
        ).json()
        assert doc["truth"] is True
        assert any(u["operator"] == "token_containment" for u in doc["unifications"])
        assert doc["proof"]["unifications"][0]["score"] == 1.0
