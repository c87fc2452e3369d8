from .adapter import AdapterError, TrainConfig, load_artifact, predict, train, validate_gold
from .vocab import Vocab

__all__ = [
    "AdapterError",
    "TrainConfig",
    "Vocab",
    "load_artifact",
    "predict",
    "train",
    "validate_gold",
]
