"""Raster codec access: read 8-bit PNG and baseline JPEG, write PNG only.

PNG output is mandatory so that the determinism contract holds byte for byte;
the compression level is pinned for reproducible files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import IoFailure, UnsupportedFormat
from .types import Rgb8Image

_READ_FORMATS = {"PNG", "JPEG"}
_PNG_COMPRESS_LEVEL = 6


def load_image(path: str | Path) -> Rgb8Image:
    """Decode a PNG or baseline JPEG file into an 8-bit sRGB image."""
    try:
        with Image.open(path) as im:
            if im.format not in _READ_FORMATS:
                raise UnsupportedFormat(f"{path}: format {im.format!r} not supported")
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnsupportedFormat(f"{path}: not a recognized raster file") from exc
    except UnsupportedFormat:
        raise
    except (OSError, ValueError, SyntaxError) as exc:
        raise IoFailure(f"cannot decode {path}: {exc}") from exc
    return Rgb8Image(arr)


def save_image(img: Rgb8Image, path: str | Path) -> None:
    """Write a lossless PNG; the target directory must already exist."""
    pil = Image.fromarray(img.array, mode="RGB")
    try:
        pil.save(path, format="PNG", compress_level=_PNG_COMPRESS_LEVEL, optimize=False)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
