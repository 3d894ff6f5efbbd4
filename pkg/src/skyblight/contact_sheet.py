"""Severity-grid preview: one frame rendered under every (kind, severity)
cell as a single contact-sheet image."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core.imageio import load_image
from .core.seeding import derive_seed
from .core.types import ALL_KINDS, ALL_SEVERITIES, DatasetManifest, Rgb8Image
from .engine.corruptions import apply_corruption
from .engine.schedule import Schedule, resolve_spec
from .errors import UnknownImage

SEPARATOR_PX = 2
SEPARATOR_VALUE = 64


def resize_nearest(img: Rgb8Image, width: int, height: int) -> Rgb8Image:
    """Nearest-neighbor resize with pixel-center sampling."""
    src = img.array
    rows = np.floor((np.arange(height) + 0.5) * src.shape[0] / height).astype(np.int64)
    cols = np.floor((np.arange(width) + 0.5) * src.shape[1] / width).astype(np.int64)
    return Rgb8Image(src[rows][:, cols])


def render_contact_sheet(
    image_id: int,
    manifest: DatasetManifest,
    images_root: str | Path,
    global_seed: int,
    cell_size: int = 160,
    schedule: Schedule | None = None,
) -> Rgb8Image:
    """7 corruption rows x 4 severity columns, each cell resized to cell_size."""
    if cell_size < 1:
        raise ValueError("cell_size must be >= 1")
    try:
        entry = manifest.image_by_id(image_id)
    except KeyError:
        raise UnknownImage(f"image id {image_id} not in manifest") from None
    clean = load_image(Path(images_root) / entry.file_name)

    n_rows = len(ALL_KINDS)
    n_cols = len(ALL_SEVERITIES)
    width = n_cols * cell_size + (n_cols + 1) * SEPARATOR_PX
    height = n_rows * cell_size + (n_rows + 1) * SEPARATOR_PX
    canvas = np.full((height, width, 3), SEPARATOR_VALUE, dtype=np.uint8)

    for row, kind in enumerate(ALL_KINDS):
        for col, severity in enumerate(ALL_SEVERITIES):
            spec = resolve_spec(kind, severity, schedule)
            seed = derive_seed(global_seed, image_id, kind, severity)
            corrupted = apply_corruption(clean, spec, seed)
            tile = resize_nearest(corrupted, cell_size, cell_size).array
            y = SEPARATOR_PX + row * (cell_size + SEPARATOR_PX)
            x = SEPARATOR_PX + col * (cell_size + SEPARATOR_PX)
            canvas[y : y + cell_size, x : x + cell_size] = tile

    return Rgb8Image(canvas)
