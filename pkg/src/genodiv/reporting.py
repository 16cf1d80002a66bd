"""Text, JSON and CSV renderings of validation reports and benchmark traces."""

from __future__ import annotations

import csv
import io
import json

from .scenarios import BenchmarkResult
from .validation import REQUIREMENTS, ValidationReport, measure_name

TABLE_HEADER = ["measure", "landscape"] + [f"case{c}" for c in range(1, 8)]


def _fmt(v: float) -> str:
    return repr(float(v))


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def verdict_records(report: ValidationReport) -> list[dict]:
    records = []
    for mr in report.measures:
        for v in mr.verdicts:
            records.append({
                "measure": measure_name(mr.measure),
                "params": mr.measure.params,
                "requirement": v.requirement,
                "requirement_name": REQUIREMENTS[v.requirement],
                "framework_a": "pass" if v.framework_a_pass else "fail",
                "framework_b": "pass" if v.framework_b_pass else "fail",
                "overall": v.overall,
                "annotation": v.annotation,
                "evidence": [{"label": label, "value": value} for label, value in v.evidence],
            })
    return records


def report_json(report: ValidationReport) -> str:
    doc = {
        "tol": report.tol,
        "resolution": report.resolution,
        "verdicts": verdict_records(report),
    }
    return json.dumps(doc, indent=2) + "\n"


def report_text(report: ValidationReport) -> str:
    """Aligned verdict matrix followed by the frozen-case value table."""
    if not report.measures:
        return "no measures requested\n"
    head = ["GDM"] + [f"{r} {REQUIREMENTS[r]}" for r in (1, 2, 3)]
    body = [[measure_name(mr.measure)] + [v.annotation for v in mr.verdicts] for mr in report.measures]
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [head] + body]
    lines.append("")
    lines.append("A: violated in the reduced arrangement, B: violated in the frozen cases")
    lines.append("")

    head = ["GDM", "landscape"] + [str(c) for c in range(1, 8)]
    body = []
    for mr in report.measures:
        for variant in (2, 4):
            cells = ["" if v is None else f"{v:.2f}" for v in mr.grid.row(variant)]
            body.append([measure_name(mr.measure) if variant == 2 else "", f"{variant} optima"] + cells)
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    lines += ["  ".join(cell.rjust(w) if i > 1 else cell.ljust(w) for i, (cell, w) in enumerate(zip(row, widths))).rstrip()
              for row in [head] + body]
    return "\n".join(lines) + "\n"


def case_grid_csv(report: ValidationReport) -> str:
    rows = [TABLE_HEADER]
    for mr in report.measures:
        for variant in (2, 4):
            rows.append([measure_name(mr.measure), f"{variant} optima"]
                        + ["" if v is None else _fmt(v) for v in mr.grid.row(variant)])
    return _csv(rows)


def sweep_csv(curve) -> str:
    rows = [["x5_hat", "d_p5", "d_p4"]]
    rows += [[_fmt(t), _fmt(d), _fmt(curve.d_p4)] for t, d in zip(curve.x5_hat, curve.d_p5)]
    return _csv(rows)


def trace_csv(result: BenchmarkResult) -> str:
    rows = [["measure", "repetition", "iteration", "raw", "normalized"]]
    for m in result.measures:
        for tr in result.repetitions:
            s = tr.series[m]
            for t, (raw, norm) in enumerate(zip(s.raw, s.normalized)):
                rows.append([m.label, tr.repetition, t, _fmt(raw), _fmt(norm)])
    return _csv(rows)


def aggregate_csv(result: BenchmarkResult) -> str:
    rows = [["measure", "iteration", "mean_normalized", "std_normalized"]]
    for m in result.measures:
        for t, (mu, sd) in enumerate(zip(result.mean[m], result.std[m])):
            rows.append([m.label, t, _fmt(mu), _fmt(sd)])
    return _csv(rows)
