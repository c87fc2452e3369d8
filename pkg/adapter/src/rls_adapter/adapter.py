"""Train a small text-to-text transformer to emit encoded logical
structure, and run it over sentences to produce a predictions file.

This package deliberately never imports the reasoning toolkit: it
reads sentences JSONL ({"id","text","role","gold"?}), writes
predictions JSONL ({"id","predicted"}), and validates gold encodings
by round-tripping them through the `rls eval` command, which is the
owner of the codec contract.  Model output is written exactly as
generated, with no repair or canonicalization; whether it parses is
for the consumer to judge.

The sandbox has no route to pretrained checkpoint downloads, so the
model here is a small encoder-decoder transformer trained from
scratch on the toy corpus; it exists to exercise the interchange
contract, not to reproduce benchmark numbers.
"""

from __future__ import annotations

import json
import subprocess
import sys
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Union

from .vocab import Vocab


class AdapterError(Exception):
    pass


@dataclass(frozen=True)
class TrainConfig:
    model_size: str = "tiny"  # tiny | small
    epochs: int = 120
    batch_size: int = 16
    learning_rate: float = 5e-4
    max_length: int = 96
    seed: int = 0


_SIZES = {
    "tiny": dict(d_model=128, d_ff=256, num_layers=2, num_heads=4, d_kv=32),
    "small": dict(d_model=256, d_ff=512, num_layers=3, num_heads=4, d_kv=64),
}


def read_sentences(path: Union[str, Path]) -> list[dict]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


# `python -m rls.cli` rather than the `rls` script: some environments
# (rustup toolchains) ship a conflicting `rls` binary earlier on PATH.
RLS_CLI = [sys.executable, "-m", "rls.cli"]


def _run_rls_eval(golds_path: Path, predictions_path: Path) -> dict:
    result = subprocess.run(
        RLS_CLI
        + [
            "eval",
            "--golds", str(golds_path),
            "--predictions", str(predictions_path),
            "--format", "json",
        ],
        capture_output=True,
        text=True,
    )
    if result.returncode != 0:
        raise AdapterError(f"rls eval rejected the file: {result.stderr.strip()}")
    return json.loads(result.stdout)


def validate_gold(records: list[dict], workdir: Optional[Path] = None) -> None:
    """Every record must carry a gold encoding that the primary CLI
    accepts at exact-match 1.0 against itself.  Aborts naming the
    offending ids otherwise."""
    missing = [r["id"] for r in records if not r.get("gold")]
    if missing:
        raise AdapterError(f"records without gold encodings: {missing[:5]}")

    def check(batch: list[dict]) -> bool:
        with tempfile.TemporaryDirectory(dir=workdir) as tmp:
            golds = Path(tmp) / "golds.jsonl"
            preds = Path(tmp) / "preds.jsonl"
            with open(golds, "w", encoding="utf-8") as fh:
                for r in batch:
                    fh.write(json.dumps(
                        {"id": r["id"], "text": r["text"], "role": r["role"], "gold": r["gold"]}
                    ) + "\n")
            with open(preds, "w", encoding="utf-8") as fh:
                for r in batch:
                    fh.write(json.dumps({"id": r["id"], "predicted": r["gold"]}) + "\n")
            try:
                report = _run_rls_eval(golds, preds)
            except AdapterError:
                return False
            return report["malformed_count"] == 0 and report.get("em_accuracy") == 1.0

    if check(records):
        return
    bad = [r["id"] for r in records if not check([r])]
    raise AdapterError(f"gold encodings fail the codec contract for ids: {bad[:5]}")


def _torch():
    import torch

    return torch


def _build_model(config: TrainConfig, vocab: Vocab):
    from transformers import T5Config, T5ForConditionalGeneration

    if config.model_size not in _SIZES:
        raise AdapterError(f"unknown model size {config.model_size!r}")
    t5_config = T5Config(
        vocab_size=len(vocab),
        pad_token_id=vocab.pad_id,
        eos_token_id=vocab.eos_id,
        decoder_start_token_id=vocab.pad_id,
        **_SIZES[config.model_size],
    )
    return T5ForConditionalGeneration(t5_config)


def _pad_batch(sequences: list[list[int]], pad_id: int, torch):
    width = max(len(s) for s in sequences)
    return torch.tensor([s + [pad_id] * (width - len(s)) for s in sequences])


def train(
    sentences_path: Union[str, Path],
    artifact_dir: Union[str, Path],
    config: TrainConfig = TrainConfig(),
) -> Path:
    """Train on (text -> gold encoding) pairs; writes the artifact
    directory (weights, vocab, config, training log) and returns it."""
    torch = _torch()
    records = read_sentences(sentences_path)
    if not records:
        raise AdapterError(f"no training records in {sentences_path}")
    validate_gold(records)

    too_long = [
        r["id"]
        for r in records
        if len(r["gold"].split()) + 1 > config.max_length
        or len(r["text"].split()) + 1 > config.max_length
    ]
    if too_long:
        raise AdapterError(
            f"sequences exceed max_length={config.max_length}: {too_long[:5]}"
        )

    vocab = Vocab.build(
        [r["text"] for r in records] + [r["gold"] for r in records]
    )
    torch.manual_seed(config.seed)
    model = _build_model(config, vocab)
    model.train()
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)

    pairs = [(vocab.encode(r["text"]), vocab.encode(r["gold"])) for r in records]
    generator = torch.Generator().manual_seed(config.seed)
    log: list[dict] = []
    for epoch in range(config.epochs):
        order = torch.randperm(len(pairs), generator=generator).tolist()
        total = 0.0
        batches = 0
        for start in range(0, len(order), config.batch_size):
            chunk = [pairs[i] for i in order[start : start + config.batch_size]]
            inputs = _pad_batch([c[0] for c in chunk], vocab.pad_id, torch)
            labels = _pad_batch([c[1] for c in chunk], -100, torch)
            attention = (inputs != vocab.pad_id).long()
            loss = model(
                input_ids=inputs, attention_mask=attention, labels=labels
            ).loss
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
            total += float(loss.detach())
            batches += 1
        log.append({"epoch": epoch, "loss": total / max(batches, 1)})

    artifact = Path(artifact_dir)
    artifact.mkdir(parents=True, exist_ok=True)
    torch.save(model.state_dict(), artifact / "weights.pt")
    (artifact / "adapter.json").write_text(
        json.dumps({"config": asdict(config), "vocab": vocab.tokens}, indent=2)
    )
    with open(artifact / "training_log.jsonl", "w", encoding="utf-8") as fh:
        for entry in log:
            fh.write(json.dumps(entry) + "\n")
    return artifact


def load_artifact(artifact_dir: Union[str, Path]):
    torch = _torch()
    artifact = Path(artifact_dir)
    meta = json.loads((artifact / "adapter.json").read_text())
    config = TrainConfig(**meta["config"])
    vocab = Vocab(meta["vocab"])
    model = _build_model(config, vocab)
    model.load_state_dict(torch.load(artifact / "weights.pt", weights_only=True))
    model.eval()
    return model, vocab, config


def predict(
    artifact_dir: Union[str, Path],
    sentences_path: Union[str, Path],
    out_path: Union[str, Path],
    batch_size: int = 32,
) -> list[dict]:
    """One prediction per input id, emitted exactly as generated."""
    torch = _torch()
    records = read_sentences(sentences_path)
    ids = [r["id"] for r in records]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise AdapterError(f"duplicate ids in input: {duplicates[:5]}")

    model, vocab, config = load_artifact(artifact_dir)
    outputs: list[dict] = []
    with torch.no_grad():
        for start in range(0, len(records), batch_size):
            chunk = records[start : start + batch_size]
            inputs = _pad_batch(
                [vocab.encode(r["text"]) for r in chunk], vocab.pad_id, torch
            )
            attention = (inputs != vocab.pad_id).long()
            generated = model.generate(
                input_ids=inputs,
                attention_mask=attention,
                max_length=config.max_length,
                num_beams=1,
                do_sample=False,
            )
            for record, row in zip(chunk, generated.tolist()):
                outputs.append({"id": record["id"], "predicted": vocab.decode(row)})

    with open(out_path, "w", encoding="utf-8") as fh:
        for entry in outputs:
            fh.write(json.dumps(entry) + "\n")
    return outputs
