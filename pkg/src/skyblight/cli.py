"""Command-line interface.

Commands: corrupt, score, preview, validate, augment-plan, schedule.
Every command that touches randomness requires an explicit --seed; silent
nondeterminism is not acceptable for a benchmark generator.

Exit codes: 0 success, 1 input/validation error, 2 partial failure
(some images failed), 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from pathlib import Path

from .augment import AugmentPolicy, sample_plan, save_plan
from .contact_sheet import render_contact_sheet
from .core.imageio import load_image, save_image
from .core.manifest import load_detections, parse_manifest
from .core.seeding import derive_seed
from .core.types import ALL_KINDS, ALL_SEVERITIES, CorruptionKind, Severity
from .engine.corruptions import apply_corruption
from .engine.schedule import load_schedule_override, resolve_spec, schedule_to_dict
from .engine.visibility import DEFAULT_VISIBILITY_THRESHOLD, visibility_check
from .errors import IncompleteTable, SkyblightError
from .metrics import CategoryMerge, EvalTable, ap_cor, evaluate_ap
from .pipeline import GridPlan, run_grid
from .report import render_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PARTIAL = 2
EXIT_INTERNAL = 3

WORKERS_ENV = "SKYBLIGHT_WORKERS"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be a decimal u64")
    return seed


def _kinds(value: str) -> tuple[CorruptionKind, ...]:
    return tuple(CorruptionKind.from_name(part.strip()) for part in value.split(","))


def _severities(value: str) -> tuple[int, ...]:
    levels = tuple(int(p) for p in value.split(","))
    for lv in levels:
        Severity(lv)  # range check
    return levels


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> _Parser:
    parser = _Parser(prog="skyblight", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corrupt", help="materialize the corruption grid over a dataset")
    p.add_argument("--manifest", required=True, type=Path, help="dataset manifest JSON")
    p.add_argument("--images-root", type=Path, default=None,
                   help="root for manifest file_name paths (default: manifest directory)")
    p.add_argument("--out", required=True, type=Path, help="output tree root")
    p.add_argument("--seed", required=True, type=_seed, help="global seed (decimal u64)")
    p.add_argument("--kinds", type=_kinds, default=ALL_KINDS,
                   help="comma-separated corruption kinds (default: all 7)")
    p.add_argument("--severities", type=_severities, default=ALL_SEVERITIES,
                   help="comma-separated severity levels (default: 1,2,3,4)")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default: ${WORKERS_ENV} or core count)")
    p.add_argument("--schedule", type=Path, default=None, help="schedule override JSON")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("score", help="score per-cell detections into AP / AP_cor reports")
    p.add_argument("--gt", required=True, type=Path, help="ground-truth manifest JSON")
    p.add_argument("--dets-dir", required=True, type=Path,
                   help="detections root: <dir>/<kind>/<severity>/detections.json")
    p.add_argument("--out", required=True, type=Path, help="report output directory")
    p.add_argument("--clean-dets", type=Path, default=None,
                   help="detection file for the uncorrupted test set")
    p.add_argument("--merge", default=None, metavar="NAME",
                   help="merge every category into one category of this name")
    p.add_argument("--kinds", type=_kinds, default=ALL_KINDS)
    p.add_argument("--iou-thr", type=float, default=0.5)
    p.add_argument("--model-name", default="model")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("preview", help="render the 7x4 contact sheet for one image")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--images-root", type=Path, default=None)
    p.add_argument("--image-id", required=True, type=int)
    p.add_argument("--seed", required=True, type=_seed)
    p.add_argument("--out", required=True, type=Path, help="output PNG path")
    p.add_argument("--cell-size", type=int, default=160)
    p.add_argument("--schedule", type=Path, default=None)
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("validate", help="check object visibility across the grid")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--images-root", type=Path, default=None)
    p.add_argument("--seed", required=True, type=_seed)
    p.add_argument("--threshold", type=float, default=DEFAULT_VISIBILITY_THRESHOLD,
                   help="minimum contrast retention (default: 0.30)")
    p.add_argument("--kinds", type=_kinds, default=ALL_KINDS)
    p.add_argument("--severities", type=_severities, default=ALL_SEVERITIES)
    p.add_argument("--report", type=Path, default=Path("visibility_report.json"))
    p.add_argument("--schedule", type=Path, default=None)
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("augment-plan", help="sample a corruption plan for finetuning")
    p.add_argument("--manifest", required=True, type=Path, help="manifest providing image ids")
    p.add_argument("--epoch-seed", required=True, type=_seed)
    p.add_argument("--policy", type=Path, default=None, help="policy JSON file")
    p.add_argument("--p-clean", type=float, default=None, help="override clean probability")
    p.add_argument("--out", required=True, type=Path, help="plan JSON path")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("schedule", help="print the resolved severity schedule as JSON")
    p.add_argument("--schedule", type=Path, default=None, help="schedule override JSON")
    p.add_argument("--quiet", action="store_true")

    return parser


def cmd_corrupt(args) -> int:
    schedule = load_schedule_override(args.schedule) if args.schedule else None
    plan = GridPlan(
        manifest_path=args.manifest,
        out_dir=args.out,
        global_seed=args.seed,
        images_root=args.images_root,
        kinds=args.kinds,
        severities=args.severities,
        workers=args.workers if args.workers else default_workers(),
        schedule=schedule,
    )
    report = run_grid(plan)
    if not args.quiet:
        for cell in report.cells:
            mean = "-" if cell.mean_psnr is None else f"{cell.mean_psnr:.2f} dB"
            print(
                f"{cell.kind.value}/{cell.severity}: {cell.images} images, "
                f"{cell.failures} failed, mean PSNR {mean}"
            )
        print(f"report: {plan.out_dir / 'grid_report.json'}")
    return EXIT_PARTIAL if report.total_failures else EXIT_OK


def cmd_score(args) -> int:
    manifest = parse_manifest(args.gt)
    merge = CategoryMerge.all_categories(manifest, args.merge) if args.merge else None
    table = EvalTable()
    for kind in args.kinds:
        for sev in ALL_SEVERITIES:
            path = args.dets_dir / kind.value / str(sev) / "detections.json"
            if not path.exists():
                raise IncompleteTable(f"missing detection file {path}")
            dets = load_detections(path)
            table.set_cell(kind, sev, evaluate_ap(manifest, dets, args.iou_thr, merge))
    if args.clean_dets:
        table.ap_clean = evaluate_ap(
            manifest, load_detections(args.clean_dets), args.iou_thr, merge
        )
    paths = render_report({args.model_name: table}, args.out)
    if not args.quiet:
        cor = ap_cor(table)
        clean = "-" if table.ap_clean is None else f"{table.ap_clean * 100:.1f}"
        print(f"AP_clean {clean}  AP_cor {cor * 100:.1f}")
        print(f"reports: {paths['csv']}, {paths['md']}, {paths['json']}")
    return EXIT_OK


def cmd_preview(args) -> int:
    manifest = parse_manifest(args.manifest)
    schedule = load_schedule_override(args.schedule) if args.schedule else None
    images_root = args.images_root if args.images_root else args.manifest.parent
    sheet = render_contact_sheet(
        args.image_id, manifest, images_root, args.seed, args.cell_size, schedule
    )
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_image(sheet, args.out)
    if not args.quiet:
        print(f"contact sheet: {args.out} ({sheet.width}x{sheet.height})")
    return EXIT_OK


def cmd_validate(args) -> int:
    manifest = parse_manifest(args.manifest)
    schedule = load_schedule_override(args.schedule) if args.schedule else None
    images_root = args.images_root if args.images_root else args.manifest.parent
    checked = 0
    failures = []
    for entry in manifest.images:
        boxes = manifest.boxes_for_image(entry.id)
        if not boxes:
            continue
        clean = load_image(Path(images_root) / entry.file_name)
        for kind in args.kinds:
            for sev in args.severities:
                spec = resolve_spec(kind, sev, schedule)
                seed = derive_seed(args.seed, entry.id, kind, sev)
                corrupted = apply_corruption(clean, spec, seed)
                for box in boxes:
                    rep = visibility_check(clean, corrupted, box, args.threshold)
                    checked += 1
                    if not rep.passed:
                        failures.append(
                            {
                                "kind": kind.value,
                                "severity": sev,
                                "image_id": rep.image_id,
                                "box_id": rep.box_id,
                                "contrast_retention": rep.contrast_retention,
                            }
                        )
    payload = {
        "threshold": args.threshold,
        "checked": checked,
        "failures": failures,
    }
    args.report.parent.mkdir(parents=True, exist_ok=True)
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    if not args.quiet:
        print(f"visibility: {checked} checks, {len(failures)} failures -> {args.report}")
    return EXIT_PARTIAL if failures else EXIT_OK


def cmd_augment_plan(args) -> int:
    manifest = parse_manifest(args.manifest)
    if args.policy:
        with open(args.policy, "r", encoding="utf-8") as fh:
            policy = AugmentPolicy.from_dict(json.load(fh))
    else:
        policy = AugmentPolicy()
    if args.p_clean is not None:
        policy = AugmentPolicy(
            p_clean=args.p_clean,
            kind_weights=policy.kind_weights,
            severity_weights=policy.severity_weights,
        )
    plan = sample_plan([im.id for im in manifest.images], policy, args.epoch_seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_plan(plan, args.out)
    if not args.quiet:
        clean = sum(1 for e in plan.entries if e.is_clean)
        print(f"plan: {len(plan.entries)} images, {clean} clean -> {args.out}")
    return EXIT_OK


def cmd_schedule(args) -> int:
    override = load_schedule_override(args.schedule) if args.schedule else None
    print(json.dumps(schedule_to_dict(override), indent=1))
    return EXIT_OK


_COMMANDS = {
    "corrupt": cmd_corrupt,
    "score": cmd_score,
    "preview": cmd_preview,
    "validate": cmd_validate,
    "augment-plan": cmd_augment_plan,
    "schedule": cmd_schedule,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SkyblightError as exc:
        print(f"skyblight: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"skyblight: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
