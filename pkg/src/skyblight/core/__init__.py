"""Shared domain types, manifest and image I/O, and seed derivation."""

from .imageio import load_image, save_image
from .manifest import (
    load_detections,
    manifest_from_dict,
    manifest_to_dict,
    parse_manifest,
    save_detections,
    save_manifest,
)
from .seeding import SeedContext, derive_seed, fnv1a_64
from .types import (
    ALL_KINDS,
    ALL_SEVERITIES,
    Category,
    CorruptionKind,
    DatasetManifest,
    DetectionRecord,
    GtBox,
    ImageEntry,
    Rgb8Image,
    Severity,
)

__all__ = [
    "ALL_KINDS",
    "ALL_SEVERITIES",
    "Category",
    "CorruptionKind",
    "DatasetManifest",
    "DetectionRecord",
    "GtBox",
    "ImageEntry",
    "Rgb8Image",
    "SeedContext",
    "Severity",
    "derive_seed",
    "fnv1a_64",
    "load_detections",
    "load_image",
    "manifest_from_dict",
    "manifest_to_dict",
    "parse_manifest",
    "save_detections",
    "save_image",
    "save_manifest",
]
