"""Domain types: images, boxes, manifests, corruption identifiers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import DanglingReference, MalformedManifest


class CorruptionKind(str, enum.Enum):
    """The seven corruption families, in canonical order."""

    FOG = "fog"
    RAIN = "rain"
    LOW_LIGHT = "low_light"
    COLOR_QUANT = "color_quant"
    ISO_NOISE = "iso_noise"
    FAR_FOCUS = "far_focus"
    NEAR_FOCUS = "near_focus"

    @classmethod
    def from_name(cls, name: str) -> "CorruptionKind":
        try:
            return cls(name)
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown corruption kind {name!r}; valid kinds: {valid}") from None


ALL_KINDS: tuple[CorruptionKind, ...] = tuple(CorruptionKind)
ALL_SEVERITIES: tuple[int, ...] = (1, 2, 3, 4)


@dataclass(frozen=True)
class Severity:
    """A severity level; levels outside 1..4 cannot be constructed."""

    level: int

    def __post_init__(self):
        if not isinstance(self.level, int) or not 1 <= self.level <= 4:
            raise ValueError(f"severity level must be an integer in [1, 4], got {self.level!r}")


class Rgb8Image:
    """Decoded 8-bit sRGB raster, row-major (height, width, 3) uint8 array.

    The pixel buffer is frozen after construction; corruption operators
    always return new images.
    """

    __slots__ = ("array",)

    def __init__(self, array: np.ndarray):
        arr = np.asarray(array)
        if arr.dtype != np.uint8:
            raise ValueError(f"pixel array must be uint8, got {arr.dtype}")
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"pixel array must have shape (h, w, 3), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        self.array = arr

    @property
    def width(self) -> int:
        return self.array.shape[1]

    @property
    def height(self) -> int:
        return self.array.shape[0]

    def tobytes(self) -> bytes:
        return self.array.tobytes()

    def same_pixels(self, other: "Rgb8Image") -> bool:
        return self.array.shape == other.array.shape and np.array_equal(self.array, other.array)

    def __repr__(self):
        return f"Rgb8Image({self.width}x{self.height})"


@dataclass(frozen=True)
class ImageEntry:
    id: int
    file_name: str
    width: int
    height: int


@dataclass(frozen=True)
class GtBox:
    """Ground-truth annotation; bbox is (x, y, w, h) in pixels."""

    id: int
    image_id: int
    category_id: int
    bbox: tuple[float, float, float, float]


@dataclass(frozen=True)
class Category:
    id: int
    name: str


@dataclass(frozen=True)
class DetectionRecord:
    """One detector output box with confidence in [0, 1]."""

    image_id: int
    category_id: int
    bbox: tuple[float, float, float, float]
    score: float


@dataclass
class DatasetManifest:
    """Images, ground-truth boxes and categories of one detection dataset."""

    images: list[ImageEntry] = field(default_factory=list)
    annotations: list[GtBox] = field(default_factory=list)
    categories: list[Category] = field(default_factory=list)

    def validate(self) -> "DatasetManifest":
        """Check referential integrity and the per-record invariants."""
        image_by_id: dict[int, ImageEntry] = {}
        for im in self.images:
            if im.id in image_by_id:
                raise MalformedManifest(f"duplicate image id {im.id}")
            if im.width < 1 or im.height < 1:
                raise MalformedManifest(f"image {im.id} has non-positive dimensions")
            _check_relative(im.file_name)
            image_by_id[im.id] = im
        cat_ids = set()
        for cat in self.categories:
            if cat.id in cat_ids:
                raise MalformedManifest(f"duplicate category id {cat.id}")
            cat_ids.add(cat.id)
        for ann in self.annotations:
            x, y, w, h = ann.bbox
            if w <= 0 or h <= 0:
                raise MalformedManifest(f"annotation {ann.id} has non-positive box size")
            if ann.image_id not in image_by_id:
                raise DanglingReference(
                    f"annotation {ann.id} references missing image {ann.image_id}"
                )
            if ann.category_id not in cat_ids:
                raise DanglingReference(
                    f"annotation {ann.id} references missing category {ann.category_id}"
                )
            im = image_by_id[ann.image_id]
            if x + w <= 0 or y + h <= 0 or x >= im.width or y >= im.height:
                raise MalformedManifest(
                    f"annotation {ann.id} does not intersect image {ann.image_id}"
                )
        return self

    def image_by_id(self, image_id: int) -> ImageEntry:
        for im in self.images:
            if im.id == image_id:
                return im
        raise KeyError(image_id)

    def boxes_for_image(self, image_id: int) -> list[GtBox]:
        return [a for a in self.annotations if a.image_id == image_id]


def _check_relative(file_name: str) -> None:
    if file_name.startswith(("/", "\\")) or (len(file_name) > 1 and file_name[1] == ":"):
        raise MalformedManifest(f"file_name must be relative: {file_name!r}")
    parts = file_name.replace("\\", "/").split("/")
    if ".." in parts:
        raise MalformedManifest(f"file_name must not escape the dataset root: {file_name!r}")
