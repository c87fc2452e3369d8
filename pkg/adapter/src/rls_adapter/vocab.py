"""Word-level vocabulary with the encoding tags as atomic tokens.

The reasoning-side codec treats tags like <arg0> as single tokens, so
the adapter does too: sequences are whitespace-split and every tag maps
to one id.  The vocabulary is built from the training file and frozen
into the model artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

PAD = "<pad>"
EOS = "</s>"
UNK = "<unk>"

TAG_TOKENS = ["<arg0>", "<arg1>", "<arg2>", "<pred>", "<pos>", "<neg>", "<and>", "<impl>"]


@dataclass
class Vocab:
    tokens: list[str]

    def __post_init__(self) -> None:
        self.index = {token: i for i, token in enumerate(self.tokens)}

    @property
    def pad_id(self) -> int:
        return self.index[PAD]

    @property
    def eos_id(self) -> int:
        return self.index[EOS]

    @property
    def unk_id(self) -> int:
        return self.index[UNK]

    def __len__(self) -> int:
        return len(self.tokens)

    def encode(self, text: str, add_eos: bool = True) -> list[int]:
        ids = [self.index.get(word, self.unk_id) for word in text.split()]
        if add_eos:
            ids.append(self.eos_id)
        return ids

    def decode(self, ids: Iterable[int]) -> str:
        words = []
        for token_id in ids:
            if token_id in (self.pad_id, self.eos_id):
                continue
            words.append(self.tokens[token_id] if 0 <= token_id < len(self.tokens) else UNK)
        return " ".join(words)

    @classmethod
    def build(cls, texts: Iterable[str]) -> "Vocab":
        words: set[str] = set()
        for text in texts:
            words.update(text.split())
        ordinary = sorted(words - set(TAG_TOKENS) - {PAD, EOS, UNK})
        return cls([PAD, EOS, UNK] + TAG_TOKENS + ordinary)
