"""Codec round-trips and failure modes."""

import numpy as np
import pytest
from PIL import Image

from skyblight.core.imageio import load_image, save_image
from skyblight.core.types import Rgb8Image
from skyblight.errors import IoFailure, UnsupportedFormat
from skyblight.rng import Stream


def test_known_2x2_pixels(tmp_path):
    pixels = np.array(
        [[[255, 0, 0], [0, 255, 0]], [[0, 0, 255], [10, 20, 30]]], dtype=np.uint8
    )
    path = tmp_path / "p.png"
    Image.fromarray(pixels, "RGB").save(path)
    img = load_image(path)
    assert np.array_equal(img.array, pixels)


def test_save_load_round_trip_random(tmp_path):
    raw = Stream(5).uniforms(64 * 64 * 3)
    arr = (raw * 256).clip(0, 255).astype(np.uint8).reshape(64, 64, 3)
    img = Rgb8Image(arr)
    path = tmp_path / "r.png"
    save_image(img, path)
    again = load_image(path)
    assert again.tobytes() == img.tobytes()


def test_jpeg_reads(tmp_path):
    arr = np.full((16, 16, 3), 128, dtype=np.uint8)
    path = tmp_path / "j.jpg"
    Image.fromarray(arr, "RGB").save(path, format="JPEG", quality=95)
    img = load_image(path)
    assert (img.width, img.height) == (16, 16)


def test_truncated_file_raises_io_failure(tmp_path):
    arr = (np.arange(48 * 48 * 3) % 251).astype(np.uint8).reshape(48, 48, 3)
    path = tmp_path / "t.png"
    Image.fromarray(arr, "RGB").save(path)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) // 2])
    with pytest.raises(IoFailure):
        load_image(path)


def test_missing_file_raises_io_failure(tmp_path):
    with pytest.raises(IoFailure):
        load_image(tmp_path / "nope.png")


def test_unsupported_format(tmp_path):
    arr = np.zeros((8, 8, 3), dtype=np.uint8)
    path = tmp_path / "x.bmp"
    Image.fromarray(arr, "RGB").save(path, format="BMP")
    with pytest.raises(UnsupportedFormat):
        load_image(path)


def test_save_into_missing_dir_fails(tmp_path, scene0):
    img, _ = scene0
    with pytest.raises(IoFailure):
        save_image(img, tmp_path / "missing" / "x.png")


def test_grayscale_png_promotes_to_rgb(tmp_path):
    arr = np.arange(64, dtype=np.uint8).reshape(8, 8)
    path = tmp_path / "g.png"
    Image.fromarray(arr, "L").save(path)
    img = load_image(path)
    assert np.array_equal(img.array[..., 0], arr)
    assert np.array_equal(img.array[..., 1], arr)
