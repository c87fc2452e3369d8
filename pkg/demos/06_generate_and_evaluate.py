"""The self-contained benchmark loop: generate, extract, reason, score.

The generator emits templated sentences with gold encodings and
queries labeled by the independent reference evaluator.  Running the
template pipeline over them reproduces a per-depth accuracy table; a
deliberately corrupted prediction file shows the malformed-output
accounting.
"""

from rls import decode, encode
from rls.harness import GenParams, eval_answers, eval_em, generate_theory
from rls.harness.reports import report_to_markdown
from rls.ingest import PredictionRecord, extract_templated, load_predictions

items = []
golds = {}
predictions = {}
for seed in range(40):
    instance = generate_theory(GenParams(seed=seed, depth=4, negation_prob=0.3))
    items.extend(instance.eval_items(prefix=f"i{seed}:"))
    for record in instance.sentences:
        golds[f"i{seed}:{record.id}"] = decode(record.gold)
        predictions[f"i{seed}:{record.id}"] = extract_templated(record.text)

print("one generated theory, as sentences:")
for record in generate_theory(GenParams(seed=1, depth=3)).sentences:
    print(f"  [{record.role.value}] {record.text}")

extraction = eval_em(predictions, golds)
print(f"\nextraction exact match over {extraction.total} sentences:",
      f"{100 * extraction.em_accuracy:.1f}%")

answers = eval_answers(items, source="template")
print()
print(report_to_markdown(answers, title="Answer accuracy by depth (template pipeline)"))

# malformed predictions count as wrong, visibly
corrupted = {sid: f"<arg0> broken {i}" for i, sid in enumerate(list(golds)[:5])}
records = [
    PredictionRecord(sid, corrupted[sid] if sid in corrupted else encode(golds[sid]))
    for sid in golds
]
report = eval_em(load_predictions(records), golds)
print(f"after corrupting 5 lines: malformed={report.malformed_count}, "
      f"exact match {100 * report.em_accuracy:.1f}%")
