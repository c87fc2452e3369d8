from .metrics import EvalItem, EvalReport, MissingPrediction, eval_answers, eval_em
from .generate import GeneratedInstance, GeneratedQuery, GenerationFailed, GenParams, generate_theory
from .reports import report_to_dict, report_to_markdown

__all__ = [
    "EvalItem",
    "EvalReport",
    "MissingPrediction",
    "eval_answers",
    "eval_em",
    "GeneratedInstance",
    "GeneratedQuery",
    "GenerationFailed",
    "GenParams",
    "generate_theory",
    "report_to_dict",
    "report_to_markdown",
]
