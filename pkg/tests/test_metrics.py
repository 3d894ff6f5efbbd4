"""Scoring: IoU, AP against the exhaustive oracle, robustness aggregation."""

import numpy as np
import pytest

from skyblight.core.types import (
    ALL_KINDS,
    Category,
    CorruptionKind,
    DatasetManifest,
    DetectionRecord,
    GtBox,
    ImageEntry,
)
from skyblight.errors import IncompleteTable, UnknownImageId
from skyblight.metrics import (
    CategoryMerge,
    EvalTable,
    ap_cor,
    degradation,
    evaluate_ap,
    iou,
    psnr,
)
from skyblight.rng import Stream
from tests.oracles import oracle_ap, rasterized_iou


def _manifest(n_images=1, boxes=(), categories=(1,)):
    return DatasetManifest(
        images=[
            ImageEntry(id=i, file_name=f"i{i}.png", width=200, height=200)
            for i in range(n_images)
        ],
        annotations=list(boxes),
        categories=[Category(id=c, name=f"c{c}") for c in categories],
    ).validate()


class TestIou:
    def test_identical_boxes(self):
        assert iou((1, 2, 10, 12), (1, 2, 10, 12)) == 1.0

    def test_disjoint_boxes(self):
        assert iou((0, 0, 5, 5), (10, 10, 5, 5)) == 0.0

    def test_half_overlap_example(self):
        assert iou((0, 0, 10, 10), (5, 0, 10, 10)) == pytest.approx(50 / 150, abs=1e-12)

    def test_matches_rasterization_on_integer_boxes(self):
        u = Stream(2024).uniforms(100 * 8)
        k = 0
        for _ in range(100):
            a = (int(u[k] * 30), int(u[k + 1] * 30), 1 + int(u[k + 2] * 20), 1 + int(u[k + 3] * 20))
            b = (int(u[k + 4] * 30), int(u[k + 5] * 30), 1 + int(u[k + 6] * 20), 1 + int(u[k + 7] * 20))
            k += 8
            assert abs(iou(a, b) - rasterized_iou(a, b)) < 1e-6


class TestEvaluateAp:
    def test_perfect_single_detection(self):
        gt = _manifest(boxes=[GtBox(1, 0, 1, (10, 10, 20, 20))])
        dets = [DetectionRecord(0, 1, (12, 10, 20, 20), 0.3)]
        assert evaluate_ap(gt, dets) == 1.0

    def test_hand_simulated_half_ap(self):
        # d1 misses (IoU 0), d2 hits: precision at full recall is 1/2 -> AP 0.5
        gt = _manifest(boxes=[GtBox(1, 0, 1, (100, 100, 20, 20))])
        dets = [
            DetectionRecord(0, 1, (0, 0, 10, 10), 0.9),
            DetectionRecord(0, 1, (101, 100, 20, 20), 0.8),
        ]
        assert evaluate_ap(gt, dets) == pytest.approx(0.5, abs=1e-12)

    def test_unknown_image_id(self):
        gt = _manifest(boxes=[GtBox(1, 0, 1, (10, 10, 20, 20))])
        with pytest.raises(UnknownImageId):
            evaluate_ap(gt, [DetectionRecord(7, 1, (0, 0, 5, 5), 0.5)])

    def test_no_detections_gives_zero(self):
        gt = _manifest(boxes=[GtBox(1, 0, 1, (10, 10, 20, 20))])
        assert evaluate_ap(gt, []) == 0.0

    def test_permutation_invariance(self):
        gt, dets = _random_instance(99)
        base = evaluate_ap(gt, dets)
        for seed in range(4):
            idx = np.argsort(Stream(seed).uniforms(len(dets)))
            shuffled = [dets[i] for i in idx]
            assert evaluate_ap(gt, shuffled) == base

    def test_monotone_score_transform_invariance(self):
        gt, dets = _random_instance(101)
        base = evaluate_ap(gt, dets)
        squeezed = [
            DetectionRecord(d.image_id, d.category_id, d.bbox, 0.05 + 0.9 * d.score)
            for d in dets
        ]
        assert evaluate_ap(gt, squeezed) == base

    def test_ap_is_one_iff_clean_separation(self):
        gt = _manifest(
            boxes=[GtBox(1, 0, 1, (10, 10, 20, 20)), GtBox(2, 0, 1, (50, 50, 20, 20))]
        )
        hits = [
            DetectionRecord(0, 1, (10, 10, 20, 20), 0.9),
            DetectionRecord(0, 1, (50, 50, 20, 20), 0.8),
        ]
        assert evaluate_ap(gt, hits) == 1.0
        with_fp_above = hits + [DetectionRecord(0, 1, (100, 100, 5, 5), 0.95)]
        assert evaluate_ap(gt, with_fp_above) < 1.0
        with_fp_below = hits + [DetectionRecord(0, 1, (100, 100, 5, 5), 0.1)]
        assert evaluate_ap(gt, with_fp_below) == 1.0

    def test_category_merge_recovers_cross_category_hits(self):
        gt = _manifest(boxes=[GtBox(1, 0, 1, (10, 10, 20, 20))], categories=(1, 2))
        miscategorized = [DetectionRecord(0, 2, (10, 10, 20, 20), 0.9)]
        assert evaluate_ap(gt, miscategorized) == 0.0
        merge = CategoryMerge(frozenset({1, 2}), "drone")
        assert evaluate_ap(gt, miscategorized, merge=merge) == 1.0

    def test_oracle_equivalence_on_random_instances(self):
        for seed in range(200):
            gt, dets = _random_instance(seed)
            got = evaluate_ap(gt, dets)
            expected = oracle_ap(gt, dets)
            assert got == pytest.approx(expected, abs=1e-9), seed

    def test_oracle_equivalence_with_merge(self):
        for seed in range(40):
            gt, dets = _random_instance(seed, n_categories=3)
            merge = CategoryMerge(frozenset({1, 2, 3}), "drone")
            got = evaluate_ap(gt, dets, merge=merge)
            expected = oracle_ap(gt, dets, merge=merge)
            assert got == pytest.approx(expected, abs=1e-9), seed


def _random_instance(seed: int, n_categories: int = 2):
    """Small random GT + detections; scores are quantized to force ties."""
    u = iter(Stream(7000 + seed).uniforms(2000).tolist())
    n_images = 1 + int(next(u) * 9)
    categories = tuple(range(1, n_categories + 1))
    boxes = []
    ann_id = 0
    for img_id in range(n_images):
        for _ in range(int(next(u) * 5.999)):
            boxes.append(
                GtBox(
                    ann_id,
                    img_id,
                    1 + int(next(u) * n_categories),
                    (next(u) * 150, next(u) * 150, 5 + next(u) * 40, 5 + next(u) * 40),
                )
            )
            ann_id += 1
    gt = _manifest(n_images=n_images, boxes=boxes, categories=categories)
    dets = []
    for img_id in range(n_images):
        for _ in range(int(next(u) * 8.999)):
            if boxes and next(u) < 0.6:
                target = boxes[int(next(u) * 0.999 * len(boxes))]
                x, y, w, h = target.bbox
                bbox = (
                    x + (next(u) - 0.5) * 12,
                    y + (next(u) - 0.5) * 12,
                    max(1.0, w + (next(u) - 0.5) * 10),
                    max(1.0, h + (next(u) - 0.5) * 10),
                )
                cat = target.category_id
            else:
                bbox = (next(u) * 150, next(u) * 150, 5 + next(u) * 40, 5 + next(u) * 40)
                cat = 1 + int(next(u) * n_categories)
            dets.append(
                DetectionRecord(img_id, cat, bbox, round(next(u), 1))  # coarse -> ties
            )
    return gt, dets


class TestApCor:
    def _full_table(self, value=0.5):
        table = EvalTable(ap_clean=0.6)
        for kind in ALL_KINDS:
            for sev in (1, 2, 3, 4):
                table.set_cell(kind, sev, value)
        return table

    def test_constant_table(self):
        assert ap_cor(self._full_table(0.5)) == pytest.approx(0.5, abs=1e-15)

    def test_single_kind_mean(self):
        table = EvalTable()
        for sev, v in zip((1, 2, 3, 4), (0.4, 0.3, 0.2, 0.1)):
            table.set_cell(CorruptionKind.FOG, sev, v)
        assert ap_cor(table) == pytest.approx(0.25, abs=1e-15)

    def test_grand_mean_equivalence(self):
        u = Stream(31).uniforms(28)
        table = EvalTable()
        i = 0
        for kind in ALL_KINDS:
            for sev in (1, 2, 3, 4):
                table.set_cell(kind, sev, float(u[i]))
                i += 1
        assert ap_cor(table) == pytest.approx(float(u.mean()), abs=1e-12)

    def test_missing_cell_raises(self):
        table = self._full_table()
        del table.cells[(CorruptionKind.RAIN, 3)]
        with pytest.raises(IncompleteTable):
            ap_cor(table)

    def test_row_constant_table_property(self):
        row_values = {k: 0.1 + 0.1 * i for i, k in enumerate(ALL_KINDS)}
        table = EvalTable()
        for kind, v in row_values.items():
            for sev in (1, 2, 3, 4):
                table.set_cell(kind, sev, v)
        assert ap_cor(table) == pytest.approx(
            sum(row_values.values()) / len(row_values), abs=1e-12
        )


class TestDegradation:
    def test_paper_yolov5_row(self):
        assert degradation(0.646, 0.535) == pytest.approx(0.111, abs=1e-12)

    def test_zero_drop(self):
        assert degradation(0.42, 0.42) == 0.0


class TestPsnr:
    def test_identical_is_infinite(self):
        a = np.zeros((4, 4, 3), dtype=np.uint8)
        assert psnr(a, a) == float("inf")

    def test_known_value(self):
        a = np.zeros((10, 10), dtype=np.uint8)
        b = np.full((10, 10), 16, dtype=np.uint8)
        # mse = 256 -> 10*log10(65025/256) = 24.0486...
        assert psnr(a, b) == pytest.approx(10 * np.log10(255**2 / 256), abs=1e-12)
