"""Manifest and detection-file I/O.

The manifest is the COCO-detection JSON subset: "images", "annotations",
"categories" with the fields below.  Extra keys are ignored on read and never
emitted on write.  Detections are a flat JSON array.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import IoFailure, MalformedManifest
from .types import Category, DatasetManifest, DetectionRecord, GtBox, ImageEntry


def parse_manifest(path: str | Path) -> DatasetManifest:
    """Load and validate a manifest file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedManifest(f"manifest {path} is not valid JSON: {exc}") from exc
    return manifest_from_dict(raw)


def manifest_from_dict(raw) -> DatasetManifest:
    if not isinstance(raw, dict):
        raise MalformedManifest("manifest root must be a JSON object")
    try:
        images = [
            ImageEntry(
                id=int(im["id"]),
                file_name=str(im["file_name"]),
                width=int(im["width"]),
                height=int(im["height"]),
            )
            for im in raw.get("images", [])
        ]
        annotations = [
            GtBox(
                id=int(a["id"]),
                image_id=int(a["image_id"]),
                category_id=int(a["category_id"]),
                bbox=_bbox(a["bbox"]),
            )
            for a in raw.get("annotations", [])
        ]
        categories = [
            Category(id=int(c["id"]), name=str(c["name"])) for c in raw.get("categories", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedManifest(f"bad manifest record: {exc!r}") from exc
    return DatasetManifest(images, annotations, categories).validate()


def manifest_to_dict(manifest: DatasetManifest) -> dict:
    return {
        "images": [
            {"id": im.id, "file_name": im.file_name, "width": im.width, "height": im.height}
            for im in manifest.images
        ],
        "annotations": [
            {"id": a.id, "image_id": a.image_id, "category_id": a.category_id,
             "bbox": list(a.bbox)}
            for a in manifest.annotations
        ],
        "categories": [{"id": c.id, "name": c.name} for c in manifest.categories],
    }


def save_manifest(manifest: DatasetManifest, path: str | Path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifest_to_dict(manifest), fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise IoFailure(f"cannot write manifest {path}: {exc}") from exc


def _bbox(values) -> tuple[float, float, float, float]:
    x, y, w, h = (float(v) for v in values)
    return (x, y, w, h)


def load_detections(path: str | Path) -> list[DetectionRecord]:
    """Load a detection file: JSON array of image_id/category_id/bbox/score."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read detections {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedManifest(f"detections {path} are not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise MalformedManifest("detection file root must be a JSON array")
    out = []
    for rec in raw:
        try:
            det = DetectionRecord(
                image_id=int(rec["image_id"]),
                category_id=int(rec["category_id"]),
                bbox=_bbox(rec["bbox"]),
                score=float(rec["score"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedManifest(f"bad detection record: {exc!r}") from exc
        if not 0.0 <= det.score <= 1.0:
            raise MalformedManifest(f"detection score {det.score} outside [0, 1]")
        if det.bbox[2] <= 0 or det.bbox[3] <= 0:
            raise MalformedManifest("detection box must have positive size")
        out.append(det)
    return out


def save_detections(dets: list[DetectionRecord], path: str | Path) -> None:
    rows = [
        {"image_id": d.image_id, "category_id": d.category_id,
         "bbox": list(d.bbox), "score": d.score}
        for d in dets
    ]
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise IoFailure(f"cannot write detections {path}: {exc}") from exc
