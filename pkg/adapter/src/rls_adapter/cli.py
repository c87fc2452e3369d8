"""Command line for the extractor adapter: train and predict."""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .adapter import AdapterError, TrainConfig, predict, train


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rls-adapter",
        description="seq2seq extractor on the sentences/predictions JSONL contract",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on sentences with gold encodings")
    p.add_argument("--sentences", required=True)
    p.add_argument("--artifact", required=True, help="output artifact directory")
    p.add_argument("--model-size", default="tiny", choices=["tiny", "small"])
    p.add_argument("--epochs", type=int, default=120)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--learning-rate", type=float, default=5e-4)
    p.add_argument("--max-length", type=int, default=96)
    p.add_argument("--seed", type=int, default=0)

    q = sub.add_parser("predict", help="emit predictions for sentences")
    q.add_argument("--artifact", required=True)
    q.add_argument("--sentences", required=True)
    q.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            config = TrainConfig(
                model_size=args.model_size,
                epochs=args.epochs,
                batch_size=args.batch_size,
                learning_rate=args.learning_rate,
                max_length=args.max_length,
                seed=args.seed,
            )
            artifact = train(args.sentences, args.artifact, config)
            print(f"artifact written to {artifact}")
        else:
            outputs = predict(args.artifact, args.sentences, args.out)
            print(f"wrote {len(outputs)} predictions to {args.out}")
    except AdapterError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
