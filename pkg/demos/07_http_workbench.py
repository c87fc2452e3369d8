"""The HTTP API the browser workbench talks to.

This walks the endpoints in-process (no sockets) with the test client;
`rls serve --port 8000` runs the same app for real, and serves the
built frontend when given --static frontend/dist.
"""

from fastapi.testclient import TestClient

from rls.harness.service import ServerState, create_app

client = TestClient(create_app(ServerState()))

print("load a theory from sentences (template extraction):")
client.post(
    "/theory",
    json={
        "sentences": [
            {"id": "s0", "text": "Harry is young and nice.", "role": "fact"},
            {"id": "s1", "text": "Nice people are usually round in shape.", "role": "rule"},
        ],
        "source": "template",
    },
)
doc = client.get("/theory").json()
for fact in doc["theory"]["facts"]:
    print("  fact", fact["id"], (fact["a"], fact["pred"], fact["b"], fact["polarity"]))
for rule in doc["theory"]["rules"]:
    print("  rule", rule["id"])

print("\nquery with proof:")
doc = client.post(
    "/query", json={"query": "<arg0> Harry <pred> is <arg1> round <pos>"}
).json()
print("  truth:", doc["truth"], "| proof kind:", doc["proof"]["kind"],
      "| depth:", doc["proof"]["depth"])

print("\nnon-destructive what-if (drop the nice fact):")
doc = client.post(
    "/whatif",
    json={
        "edits": [{"op": "remove_fact", "id": "s0:1"}],
        "query": "<arg0> Harry <pred> is <arg1> round <pos>",
    },
).json()
print("  truth:", doc["truth"], "| proof kind:", doc["proof"]["kind"])
print("  conclusions lost:", [e["encoded"] for e in doc["delta"]["removed"]])

print("\nimplications:")
for entry in client.get("/implications").json()["implications"]:
    print("  ", entry["encoded"], "at depth", entry["depth"])

print("\nmalformed edits are machine-readable 400s:")
resp = client.post(
    "/edit",
    json={"edits": [{"op": "replace_fact", "id": "s0:0", "encoded": "<arg0> broken"}]},
)
print("  status", resp.status_code, resp.json()["error"])
