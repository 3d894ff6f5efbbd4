"""skyblight: corruption synthesis and robustness scoring for air-to-air
detection datasets.

Seven deterministic corruption kinds x four severities, a parallel grid
runner, AP@0.5 scoring with corruption-robustness aggregation, and an
augmentation-plan sampler for robustness finetuning.
"""

from .backend import BACKEND_NAME, HAVE_COMPILED
from .core import (
    ALL_KINDS,
    ALL_SEVERITIES,
    CorruptionKind,
    DatasetManifest,
    DetectionRecord,
    GtBox,
    Rgb8Image,
    Severity,
    derive_seed,
    load_image,
    parse_manifest,
    save_image,
)
from .engine import (
    CorruptionSpec,
    apply_corruption,
    plasma_fractal,
    resolve_spec,
    visibility_check,
)
from .metrics import CategoryMerge, EvalTable, ap_cor, degradation, evaluate_ap, iou, psnr
from .pipeline import GridPlan, GridReport, run_grid, tree_hash

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "ALL_SEVERITIES",
    "BACKEND_NAME",
    "HAVE_COMPILED",
    "CategoryMerge",
    "CorruptionKind",
    "CorruptionSpec",
    "DatasetManifest",
    "DetectionRecord",
    "EvalTable",
    "GridPlan",
    "GridReport",
    "GtBox",
    "Rgb8Image",
    "Severity",
    "__version__",
    "ap_cor",
    "apply_corruption",
    "degradation",
    "derive_seed",
    "evaluate_ap",
    "iou",
    "load_image",
    "parse_manifest",
    "plasma_fractal",
    "psnr",
    "resolve_spec",
    "run_grid",
    "save_image",
    "tree_hash",
    "visibility_check",
]
