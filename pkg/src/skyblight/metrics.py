"""Detector-agnostic scoring: IoU, AP at a fixed IoU threshold with category
merging, the corruption-robustness average, degradation, and PSNR.

AP uses all-point interpolation (area under the monotone precision envelope).
Detection ties are broken canonically by (image_id, bbox), so evaluation is
independent of input order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core.types import ALL_KINDS, ALL_SEVERITIES, CorruptionKind, DatasetManifest, DetectionRecord
from .errors import IncompleteTable, UnknownImageId

Box = tuple[float, float, float, float]


def iou(a: Box, b: Box) -> float:
    """Intersection over union of two (x, y, w, h) boxes with positive size."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix0 = max(ax, bx)
    iy0 = max(ay, by)
    ix1 = min(ax + aw, bx + bw)
    iy1 = min(ay + ah, by + bh)
    iw = ix1 - ix0
    ih = iy1 - iy0
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    inter = iw * ih
    return inter / (aw * ah + bw * bh - inter)


@dataclass(frozen=True)
class CategoryMerge:
    """Collapse the listed source categories into one target category."""

    source_ids: frozenset[int]
    target_name: str

    @classmethod
    def all_categories(cls, manifest: DatasetManifest, target_name: str) -> "CategoryMerge":
        return cls(frozenset(c.id for c in manifest.categories), target_name)

    def key_for(self, category_id: int):
        if category_id in self.source_ids:
            return ("merged", self.target_name)
        return ("cat", category_id)


@dataclass
class PrCurve:
    """Precision/recall points at each detection rank, recall non-decreasing."""

    points: list[tuple[float, float]] = field(default_factory=list)


def evaluate_ap(
    gt: DatasetManifest,
    dets: list[DetectionRecord],
    iou_thr: float = 0.5,
    merge: CategoryMerge | None = None,
) -> float:
    """Average precision of `dets` against `gt` at the given IoU threshold."""
    ap, _ = evaluate_ap_with_curve(gt, dets, iou_thr, merge)
    return ap


def evaluate_ap_with_curve(
    gt: DatasetManifest,
    dets: list[DetectionRecord],
    iou_thr: float = 0.5,
    merge: CategoryMerge | None = None,
) -> tuple[float, PrCurve]:
    if not 0.0 < iou_thr < 1.0:
        raise ValueError("iou_thr must be in (0, 1)")
    image_ids = {im.id for im in gt.images}
    for det in dets:
        if det.image_id not in image_ids:
            raise UnknownImageId(f"detection references unknown image id {det.image_id}")

    def cat_key(category_id: int):
        return merge.key_for(category_id) if merge else ("cat", category_id)

    gt_boxes: dict[tuple, list[tuple[int, Box]]] = {}
    for idx, ann in enumerate(gt.annotations):
        gt_boxes.setdefault((ann.image_id, cat_key(ann.category_id)), []).append((idx, ann.bbox))
    n_gt = len(gt.annotations)
    if n_gt == 0:
        return 0.0, PrCurve()

    order = sorted(dets, key=lambda d: (-d.score, d.image_id, d.bbox))
    matched: set[int] = set()
    tp_flags = np.zeros(len(order), dtype=np.float64)
    for i, det in enumerate(order):
        candidates = gt_boxes.get((det.image_id, cat_key(det.category_id)), ())
        best_idx = -1
        best_iou = -1.0
        for ann_idx, box in candidates:
            if ann_idx in matched:
                continue
            value = iou(det.bbox, box)
            # strict > keeps the lowest annotation index on IoU ties
            if value >= iou_thr and value > best_iou:
                best_iou = value
                best_idx = ann_idx
        if best_idx >= 0:
            matched.add(best_idx)
            tp_flags[i] = 1.0

    tp_cum = np.cumsum(tp_flags)
    ranks = np.arange(1, len(order) + 1, dtype=np.float64)
    precision = tp_cum / ranks
    recall = tp_cum / n_gt
    curve = PrCurve(list(zip(recall.tolist(), precision.tolist())))

    # monotone envelope from the right, integrated over recall increments
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    prev_recall = np.concatenate(([0.0], recall[:-1]))
    ap = float(np.sum((recall - prev_recall) * envelope))
    return ap, curve


@dataclass
class EvalTable:
    """AP values per (corruption, severity) plus the clean baseline."""

    ap_clean: float | None = None
    cells: dict[tuple[CorruptionKind, int], float] = field(default_factory=dict)

    def kinds(self) -> list[CorruptionKind]:
        return [k for k in ALL_KINDS if any(key[0] is k for key in self.cells)]

    def set_cell(self, kind: CorruptionKind, severity: int, ap: float) -> None:
        self.cells[(kind, severity)] = ap

    def kind_mean(self, kind: CorruptionKind) -> float:
        values = []
        for sev in ALL_SEVERITIES:
            if (kind, sev) not in self.cells:
                raise IncompleteTable(f"missing cell ({kind.value}, severity {sev})")
            values.append(self.cells[(kind, sev)])
        return sum(values) / 4.0


def ap_cor(table: EvalTable) -> float:
    """Corruption robustness: mean AP over severities, then over kinds."""
    kinds = table.kinds()
    if not kinds:
        raise IncompleteTable("evaluation table has no cells")
    return sum(table.kind_mean(k) for k in kinds) / len(kinds)


def degradation(ap_clean: float, ap_cor_value: float) -> float:
    """Absolute AP drop (reported downstream in percentage points)."""
    return ap_clean - ap_cor_value


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """Peak signal-to-noise ratio between two uint8 arrays, in dB.

    Identical inputs give +inf.
    """
    if a.shape != b.shape:
        raise ValueError("psnr operands must share a shape")
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(255.0 * 255.0 / mse)
