"""Report rendering: per-model summary and per-corruption matrix as CSV,
Markdown and a full-precision JSON table."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .core.types import ALL_SEVERITIES, CorruptionKind
from .metrics import EvalTable, ap_cor, degradation

CORRUPTION_GROUPS: list[tuple[str, list[CorruptionKind]]] = [
    ("weather", [CorruptionKind.FOG, CorruptionKind.RAIN, CorruptionKind.LOW_LIGHT]),
    ("sensor noise", [CorruptionKind.COLOR_QUANT, CorruptionKind.ISO_NOISE]),
    ("defocus", [CorruptionKind.FAR_FOCUS, CorruptionKind.NEAR_FOCUS]),
]


def format_percent(value: float) -> str:
    """AP fraction as a percentage with one decimal, half away from zero."""
    scaled = value * 1000.0
    if scaled >= 0:
        rounded = math.floor(scaled + 0.5)
    else:
        rounded = math.ceil(scaled - 0.5)
    return f"{rounded / 10.0:.1f}"


def summary_rows(tables: dict[str, EvalTable]) -> list[dict]:
    rows = []
    for model, table in tables.items():
        cor = ap_cor(table)
        row = {"model": model, "ap_cor": cor}
        if table.ap_clean is not None:
            row["ap_clean"] = table.ap_clean
            row["degradation"] = degradation(table.ap_clean, cor)
        rows.append(row)
    return rows


def matrix_rows(tables: dict[str, EvalTable]) -> list[tuple[str, str, dict[str, float | None]]]:
    """(group, row label, per-model value) rows of the corruption matrix."""
    models = list(tables)
    rows: list[tuple[str, str, dict[str, float | None]]] = []
    rows.append(
        ("", "none (clean)", {m: tables[m].ap_clean for m in models})
    )
    present = set()
    for table in tables.values():
        present.update(table.kinds())
    for group, kinds in CORRUPTION_GROUPS:
        for kind in kinds:
            if kind not in present:
                continue
            rows.append(
                (group, kind.value, {m: tables[m].kind_mean(kind) for m in models})
            )
    rows.append(("", "ap_cor", {m: ap_cor(tables[m]) for m in models}))
    return rows


def render_report(tables: dict[str, EvalTable], out_dir: str | Path) -> dict[str, Path]:
    """Write report.csv, report.md and eval_table.json; returns the paths."""
    if not tables:
        raise ValueError("render_report needs at least one evaluation table")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "csv": out / "report.csv",
        "md": out / "report.md",
        "json": out / "eval_table.json",
    }
    _write_csv(tables, paths["csv"])
    _write_markdown(tables, paths["md"])
    _write_json(tables, paths["json"])
    return paths


def _write_csv(tables: dict[str, EvalTable], path: Path) -> None:
    models = list(tables)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "ap_clean", "ap_cor", "degradation_points"])
        for row in summary_rows(tables):
            writer.writerow(
                [
                    row["model"],
                    format_percent(row["ap_clean"]) if "ap_clean" in row else "",
                    format_percent(row["ap_cor"]),
                    format_percent(row["degradation"]) if "degradation" in row else "",
                ]
            )
        writer.writerow([])
        writer.writerow(["group", "corruption"] + models)
        for group, label, values in matrix_rows(tables):
            writer.writerow(
                [group, label]
                + ["" if values[m] is None else format_percent(values[m]) for m in models]
            )


def _write_markdown(tables: dict[str, EvalTable], path: Path) -> None:
    models = list(tables)
    lines = []
    lines.append("# Robustness report")
    lines.append("")
    lines.append("AP at IoU 0.5, all-point interpolation; values in percent.")
    lines.append("")
    lines.append("## Summary")
    lines.append("")
    lines.append("| model | AP_clean | AP_cor | degradation (pts) |")
    lines.append("| --- | --- | --- | --- |")
    for row in summary_rows(tables):
        clean = format_percent(row["ap_clean"]) if "ap_clean" in row else "-"
        drop = format_percent(row["degradation"]) if "degradation" in row else "-"
        lines.append(f"| {row['model']} | {clean} | {format_percent(row['ap_cor'])} | {drop} |")
    lines.append("")
    lines.append("## Per-corruption matrix")
    lines.append("")
    lines.append("| group | corruption | " + " | ".join(models) + " |")
    lines.append("| --- | --- |" + " --- |" * len(models))
    for group, label, values in matrix_rows(tables):
        cells = [
            "-" if values[m] is None else format_percent(values[m]) for m in models
        ]
        lines.append(f"| {group} | {label} | " + " | ".join(cells) + " |")
    lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8")


def _write_json(tables: dict[str, EvalTable], path: Path) -> None:
    payload = {"models": {}}
    for model, table in tables.items():
        cells: dict[str, dict[str, float]] = {}
        for (kind, sev), value in sorted(
            table.cells.items(), key=lambda kv: (kv[0][0].value, kv[0][1])
        ):
            cells.setdefault(kind.value, {})[str(sev)] = value
        payload["models"][model] = {
            "ap_clean": table.ap_clean,
            "ap_cor": ap_cor(table),
            "cells": cells,
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
