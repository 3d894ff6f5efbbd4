"""Deterministic batch runner: materializes the corruption grid over a dataset.

Output layout is `<out>/<kind>/<severity>/<image>.png` with one rewritten
manifest per cell.  Per-image seeds depend only on (global_seed, image_id,
kind, severity), so output bytes are independent of worker count and
processing order.  Reruns verify existing outputs instead of rewriting them.
"""

from __future__ import annotations

import hashlib
import json
import math
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from pathlib import Path, PurePosixPath

from .core.imageio import load_image, save_image
from .core.manifest import manifest_to_dict, parse_manifest
from .core.seeding import derive_seed
from .core.types import (
    ALL_KINDS,
    ALL_SEVERITIES,
    CorruptionKind,
    DatasetManifest,
    Rgb8Image,
    Severity,
)
from .engine.corruptions import apply_corruption
from .engine.schedule import CorruptionSpec, Schedule, resolve_spec
from .errors import SkyblightError
from .metrics import psnr


@dataclass
class GridPlan:
    manifest_path: Path
    out_dir: Path
    global_seed: int
    images_root: Path | None = None
    kinds: tuple[CorruptionKind, ...] = ALL_KINDS
    severities: tuple[int, ...] = ALL_SEVERITIES
    workers: int = 1
    schedule: Schedule | None = None

    def __post_init__(self):
        self.manifest_path = Path(self.manifest_path)
        self.out_dir = Path(self.out_dir)
        if self.images_root is None:
            self.images_root = self.manifest_path.parent
        self.images_root = Path(self.images_root)
        if not self.kinds or not self.severities:
            raise ValueError("plan needs at least one kind and one severity")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.out_dir.resolve() == self.images_root.resolve():
            raise ValueError("out_dir must differ from the dataset root")


@dataclass
class CellStats:
    kind: CorruptionKind
    severity: int
    images: int
    failures: int
    mean_psnr: float | None


@dataclass
class GridReport:
    cells: list[CellStats] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    visibility: list[dict] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def total_failures(self) -> int:
        return len(self.failures)

    def to_dict(self) -> dict:
        return {
            "cells": [
                {
                    "kind": c.kind.value,
                    "severity": c.severity,
                    "images": c.images,
                    "failures": c.failures,
                    "mean_psnr": c.mean_psnr,
                }
                for c in self.cells
            ],
            "failures": self.failures,
            "visibility": self.visibility,
            "elapsed_seconds": self.elapsed_seconds,
        }


def cell_dir(out_dir: Path, kind: CorruptionKind, severity: int) -> Path:
    return Path(out_dir) / kind.value / str(severity)


def output_rel_name(file_name: str) -> str:
    """Cell-relative output path: source path with the suffix swapped to .png."""
    return str(PurePosixPath(file_name).with_suffix(".png"))


def _process_task(args: tuple) -> dict:
    (
        image_id,
        image_index,
        file_name,
        kind_value,
        severity,
        params,
        global_seed,
        images_root,
        out_dir,
    ) = args
    kind = CorruptionKind(kind_value)
    result = {
        "image_id": image_id,
        "image_index": image_index,
        "kind": kind_value,
        "severity": severity,
        "ok": False,
        "psnr": None,
        "error": None,
    }
    try:
        clean = load_image(Path(images_root) / file_name)
        spec = CorruptionSpec(kind, Severity(severity), params)
        seed = derive_seed(global_seed, image_id, kind, severity)
        corrupted = apply_corruption(clean, spec, seed)
        out_path = cell_dir(Path(out_dir), kind, severity) / output_rel_name(file_name)
        os.makedirs(out_path.parent, exist_ok=True)
        _write_verified(corrupted, out_path)
        value = psnr(clean.array, corrupted.array)
        result["ok"] = True
        result["psnr"] = None if math.isinf(value) else value
    except (SkyblightError, OSError) as exc:
        result["error"] = f"{type(exc).__name__}: {exc}"
    return result


def _write_verified(img: Rgb8Image, path: Path) -> None:
    """Write the PNG unless an identical one is already in place."""
    if path.exists():
        try:
            existing = load_image(path)
            if existing.same_pixels(img):
                return
        except SkyblightError:
            pass
    save_image(img, path)


def run_grid(plan: GridPlan) -> GridReport:
    """Corrupt every manifest image for every (kind, severity) cell."""
    started = time.monotonic()
    manifest = parse_manifest(plan.manifest_path)
    specs = {
        (kind, sev): resolve_spec(kind, sev, plan.schedule)
        for kind in plan.kinds
        for sev in plan.severities
    }

    tasks = []
    for kind in plan.kinds:
        for sev in plan.severities:
            params = dict(specs[(kind, sev)].params)
            for index, im in enumerate(manifest.images):
                tasks.append(
                    (
                        im.id,
                        index,
                        im.file_name,
                        kind.value,
                        sev,
                        params,
                        plan.global_seed,
                        str(plan.images_root),
                        str(plan.out_dir),
                    )
                )

    for kind in plan.kinds:
        for sev in plan.severities:
            cell_dir(plan.out_dir, kind, sev).mkdir(parents=True, exist_ok=True)

    if plan.workers == 1:
        results = [_process_task(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (plan.workers * 8))
        with multiprocessing.Pool(processes=plan.workers) as pool:
            results = list(pool.imap_unordered(_process_task, tasks, chunksize=chunk))

    kind_order = {k.value: i for i, k in enumerate(ALL_KINDS)}
    results.sort(key=lambda r: (kind_order[r["kind"]], r["severity"], r["image_index"]))

    report = GridReport()
    for kind in plan.kinds:
        for sev in plan.severities:
            cell = [
                r for r in results if r["kind"] == kind.value and r["severity"] == sev
            ]
            ok = [r for r in cell if r["ok"]]
            failures = [r for r in cell if not r["ok"]]
            finite = [r["psnr"] for r in ok if r["psnr"] is not None]
            report.cells.append(
                CellStats(
                    kind=kind,
                    severity=sev,
                    images=len(ok),
                    failures=len(failures),
                    mean_psnr=sum(finite) / len(finite) if finite else None,
                )
            )
            for r in failures:
                report.failures.append(
                    {
                        "kind": kind.value,
                        "severity": sev,
                        "image_id": r["image_id"],
                        "error": r["error"],
                    }
                )
            _write_cell_manifest(manifest, cell_dir(plan.out_dir, kind, sev))

    report.elapsed_seconds = time.monotonic() - started
    _write_report_json(report, plan.out_dir / "grid_report.json")
    return report


def _write_cell_manifest(manifest: DatasetManifest, cell: Path) -> None:
    data = manifest_to_dict(manifest)
    for im in data["images"]:
        im["file_name"] = output_rel_name(im["file_name"])
    payload = json.dumps(data, indent=1) + "\n"
    target = cell / "manifest.json"
    if target.exists() and target.read_text(encoding="utf-8") == payload:
        return
    target.write_text(payload, encoding="utf-8")


def _write_report_json(report: GridReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=1)
        fh.write("\n")


def tree_hash(out_dir: str | Path) -> str:
    """SHA-256 over every artifact under out_dir except the run report."""
    root = Path(out_dir)
    digest = hashlib.sha256()
    files = sorted(
        p for p in root.rglob("*") if p.is_file() and p.name != "grid_report.json"
    )
    for p in files:
        digest.update(str(p.relative_to(root).as_posix()).encode("utf-8"))
        digest.update(b"\0")
        digest.update(p.read_bytes())
        digest.update(b"\1")
    return digest.hexdigest()
