"""Shared fixtures: deterministic synthetic sky scenes with annotated
drone-like objects, written out as PNG datasets with COCO-style manifests."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from skyblight.core.manifest import save_manifest
from skyblight.core.imageio import save_image
from skyblight.core.types import (
    Category,
    DatasetManifest,
    GtBox,
    ImageEntry,
    Rgb8Image,
)
from skyblight.rng import Stream

BODY_W, BODY_H, BODY_VALUE, BOX_PAD = 16, 11, 125, 5


def synth_scene(image_id: int, width: int = 128, height: int = 96):
    """A textured sky frame with two annotated objects.

    Content mixes a vertical gradient, broadband noise and a fine checker so
    every corruption (including heavy defocus) changes measurable structure,
    while annotated objects keep enough contrast to survive severity 4.
    """
    s = Stream(90000 + image_id)
    grad = np.linspace(150, 220, height)[:, None] * np.ones((1, width))
    noise = (s.uniforms(height * width).reshape(height, width) - 0.5) * 30.0
    # broadband 3-px block texture; periodic patterns would make defocus MSE
    # oscillate with kernel radius instead of growing monotonically
    bh, bw = -(-height // 3), -(-width // 3)
    blocks = s.uniforms(bh * bw).reshape(bh, bw) > 0.5
    fine = np.repeat(np.repeat(blocks, 3, axis=0), 3, axis=1)[:height, :width] * 14.0
    base = np.clip(grad + noise + fine, 0, 255)
    img = np.stack([base, base * 0.98, base * 0.95], axis=-1)

    centers = [(width // 4 + 2, height // 3), (2 * width // 3 + 5, 2 * height // 3)]
    boxes = []
    for bi, (cx, cy) in enumerate(centers):
        bw = BODY_W + 2 * BOX_PAD
        bh = BODY_H + 2 * BOX_PAD + 4
        img[cy - BODY_H // 2 : cy + (BODY_H + 1) // 2,
            cx - BODY_W // 2 : cx + (BODY_W + 1) // 2] = BODY_VALUE
        img[cy - BODY_H // 2 - 3 : cy - BODY_H // 2 + 1,
            cx - BODY_W // 2 - 2 : cx + (BODY_W + 1) // 2 + 2] = BODY_VALUE + 15
        boxes.append(
            GtBox(
                id=image_id * 10 + bi,
                image_id=image_id,
                category_id=bi % 2 + 1,
                bbox=(float(cx - bw // 2), float(cy - bh // 2 - 2), float(bw), float(bh)),
            )
        )
    return Rgb8Image(np.clip(img, 0, 255).astype(np.uint8)), boxes


def build_dataset(root: Path, n_images: int, width: int = 128, height: int = 96) -> Path:
    """Write n_images synthetic frames plus manifest.json under root."""
    root.mkdir(parents=True, exist_ok=True)
    images, annotations = [], []
    for image_id in range(n_images):
        img, boxes = synth_scene(image_id, width, height)
        name = f"frame_{image_id:04d}.png"
        save_image(img, root / name)
        images.append(ImageEntry(id=image_id, file_name=name, width=width, height=height))
        annotations.extend(boxes)
    manifest = DatasetManifest(
        images=images,
        annotations=annotations,
        categories=[Category(1, "aircraft"), Category(2, "uav")],
    )
    save_manifest(manifest, root / "manifest.json")
    return root / "manifest.json"


@pytest.fixture(scope="session")
def dataset4(tmp_path_factory) -> Path:
    """Small dataset for unit tests; returns the manifest path."""
    return build_dataset(tmp_path_factory.mktemp("ds4"), 4)


@pytest.fixture(scope="session")
def dataset20(tmp_path_factory) -> Path:
    """The 20-image acceptance fixture; returns the manifest path."""
    return build_dataset(tmp_path_factory.mktemp("ds20"), 20)


@pytest.fixture()
def scene0():
    img, boxes = synth_scene(0)
    return img, boxes
