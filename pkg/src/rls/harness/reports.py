"""Report serialization: versioned JSON and a markdown table renderer.

The markdown table carries raw question and correct counts next to the
percentage, so every number in the JSON report can be reconstructed
from the rendered table exactly.
"""

from __future__ import annotations

from .metrics import EvalReport

SCHEMA_VERSION = 1


def report_to_dict(report: EvalReport) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "total": report.total,
        "correct": report.correct,
        "overall_accuracy": report.overall_accuracy,
        "malformed_count": report.malformed_count,
        "per_depth": {
            str(depth): {
                "count": stats.count,
                "correct": stats.correct,
                "accuracy": stats.accuracy,
            }
            for depth, stats in sorted(report.per_depth.items())
        },
        "failures": [
            {"id": fid, "expected": expected, "got": got}
            for fid, expected, got in report.failures
        ],
    }
    if report.em_accuracy is not None:
        doc["em_accuracy"] = report.em_accuracy
    return doc


def _percent(value: float) -> str:
    return f"{100.0 * value:.2f}"


def report_to_markdown(report: EvalReport, title: str = "Evaluation report") -> str:
    lines = [f"# {title}", ""]
    if report.per_depth:
        lines += [
            "| Depth | Questions | Correct | Accuracy |",
            "|-------|-----------|---------|----------|",
        ]
        for depth, stats in sorted(report.per_depth.items()):
            lines.append(
                f"| {depth} | {stats.count} | {stats.correct} | {_percent(stats.accuracy)} |"
            )
        lines.append(
            f"| All | {report.total} | {report.correct} | {_percent(report.overall_accuracy)} |"
        )
        lines.append("")
    else:
        lines.append(
            f"Overall: {report.correct}/{report.total} correct "
            f"({_percent(report.overall_accuracy)}%)"
        )
    if report.em_accuracy is not None:
        lines.append(
            f"Exact match: {report.correct}/{report.total} ({_percent(report.em_accuracy)}%)"
        )
    lines.append(f"Malformed predictions: {report.malformed_count}")
    if report.failures:
        lines += ["", "## Failures", ""]
        for fid, expected, got in report.failures:
            lines.append(f"- `{fid}`: expected `{expected}`, got `{got}`")
    return "\n".join(lines) + "\n"
