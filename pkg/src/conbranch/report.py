"""Rendering of pipeline reports: aligned text table, JSON, CSV, and
optional matplotlib figures written next to the delimited output."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

COLUMNS = ["Instance", "Status", "Pure LP", "Bound", "Bound Inc",
           "Branches", "Used", "Degree", "Time (ms)"]


def _fmt(x, digits=6):
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def report_row(report):
    return [
        report.instance,
        report.status,
        _fmt(report.pure_lp),
        _fmt(report.bound),
        _fmt(report.bound_inc),
        str(report.branches_tried),
        str(report.branches_used),
        _fmt(report.degree, 4),
        _fmt(report.timings_ms.get("total_ms"), 5),
    ]


def render_table(reports):
    """Fixed-width text table, one line per report."""
    rows = [COLUMNS] + [report_row(r) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(COLUMNS))]
    lines = []
    for k, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def report_dict(report):
    d = asdict(report)
    d["cuts"] = [{"file": c.file_id, "coefs": c.coefs, "kind": c.kind,
                  "rhs": c.rhs} for c in report.cuts]
    return d


def render_json(report):
    return json.dumps(report_dict(report), indent=2, sort_keys=True)


def write_csv(reports, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(COLUMNS)
        for r in reports:
            w.writerow(report_row(r))


def render_csv(reports):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(COLUMNS)
    for r in reports:
        w.writerow(report_row(r))
    return buf.getvalue()


def render_figures(report, directory):
    """Write the weight and bound figures for one report; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    stem = "".join(ch if ch.isalnum() or ch in "-_" else "_"
                   for ch in report.instance) or "instance"
    paths = []

    if report.lambdas:
        fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(report.lambdas)), 3))
        names = list(report.lambdas)
        ax.bar(range(len(names)), [report.lambdas[n] for n in names],
               color="#4878a8")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel("weight")
        ax.set_title(f"{report.instance}: combining weights")
        fig.tight_layout()
        path = os.path.join(directory, f"{stem}_weights.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)

    if report.pure_lp is not None and report.bound is not None:
        fig, ax = plt.subplots(figsize=(4, 3))
        ax.bar([0, 1], [report.pure_lp, report.bound],
               color=["#b0b0b0", "#4878a8"])
        ax.set_xticks([0, 1])
        ax.set_xticklabels(["pure LP", "strengthened"])
        ax.set_title(f"{report.instance}: bound")
        fig.tight_layout()
        path = os.path.join(directory, f"{stem}_bound.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)

    return paths
