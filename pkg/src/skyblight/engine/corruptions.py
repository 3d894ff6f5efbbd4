"""The seven corruption operators.

Fog, rain, low-light and ISO noise work in linear light (gamma 2.2);
color quantization and the two defocus blurs act on sRGB bytes directly.
Every operator is a pure function of (image, params, seed) and preserves
image dimensions; boxes never move.
"""

from __future__ import annotations

import math

import numpy as np

from ..core.types import CorruptionKind, Rgb8Image
from ..rng import Stream
from .colorspace import linear_to_srgb, srgb_to_linear
from .plasma import plasma_fractal
from .schedule import CorruptionSpec

# Fog blends toward slightly off-white airlight so bright sky keeps headroom.
FOG_AIRLIGHT = 0.92
# Transmittance floor: keeps annotated objects visible in the densest fog
# patches, which is the whole point of a small-object benchmark.
FOG_MIN_TRANSMITTANCE = 0.35

RAIN_BRIGHTNESS = 0.8  # streak intensity, linear light
MID_GRAY_LINEAR = 0.5 ** 2.2


def apply_corruption(img: Rgb8Image, spec: CorruptionSpec, seed: int) -> Rgb8Image:
    """Dispatch to the per-kind operator; output size always equals input size."""
    p = spec.params
    kind = spec.kind
    if kind is CorruptionKind.FOG:
        return fog_corrupt(img, p, seed)
    if kind is CorruptionKind.RAIN:
        return rain_corrupt(img, p, seed)
    if kind is CorruptionKind.LOW_LIGHT:
        return low_light_corrupt(img, p, seed)
    if kind is CorruptionKind.COLOR_QUANT:
        return color_quant_corrupt(img, p)
    if kind is CorruptionKind.ISO_NOISE:
        return iso_noise_corrupt(img, p, seed)
    if kind in (CorruptionKind.FAR_FOCUS, CorruptionKind.NEAR_FOCUS):
        return defocus_corrupt(img, p)
    raise ValueError(f"unhandled corruption kind {kind!r}")


def fog_corrupt(img: Rgb8Image, params, seed: int) -> Rgb8Image:
    """Blend linear light toward airlight through a plasma transmittance field.

    Transmittance follows Beer-Lambert attenuation of the optical depth
    intensity * P, floored so annotated objects stay visible in the densest
    patches: t = t_min + (1 - t_min) * exp(-intensity * P).  Zero intensity
    gives t = 1 everywhere (identity).
    """
    intensity = float(params["intensity"])
    decay = float(params["decay"])
    if intensity < 0:
        raise ValueError("fog intensity must be >= 0")
    field = plasma_fractal(img.width, img.height, decay, seed)
    t = (
        FOG_MIN_TRANSMITTANCE
        + (1.0 - FOG_MIN_TRANSMITTANCE) * np.exp(-intensity * field)
    )[:, :, None]
    lin = srgb_to_linear(img.array)
    out = lin * t + FOG_AIRLIGHT * (1.0 - t)
    return Rgb8Image(linear_to_srgb(out))


def rain_streak_count(density: float, width: int, height: int) -> int:
    """Streaks per frame: density is per megapixel; rounded half-up."""
    return int(math.floor(density * (width * height) / 1e6 + 0.5))


def rain_corrupt(img: Rgb8Image, params, seed: int) -> Rgb8Image:
    """Anti-aliased bright streaks composited in linear light, then a global
    contrast drop about mid-gray (the haze that accompanies rainfall)."""
    density = float(params["density"])
    length = float(params["length"])
    opacity = float(params["opacity"])
    contrast_scale = float(params["contrast_scale"])
    if density < 0 or length <= 0:
        raise ValueError("rain density must be >= 0 and length > 0")
    if not 0.0 <= opacity <= 1.0 or not 0.0 <= contrast_scale <= 1.0:
        raise ValueError("rain opacity and contrast_scale must be in [0, 1]")

    h, w = img.height, img.width
    stream = Stream(seed)
    theta = (stream.uniforms(1)[0] * 2.0 - 1.0) * (math.pi / 6.0)
    n = rain_streak_count(density, w, h)
    draws = stream.uniforms(3 * n).reshape(n, 3)

    sin_t = math.sin(theta)
    cos_t = math.cos(theta)
    coverage = np.zeros((h, w), dtype=np.float64)
    for i in range(n):
        ux, uy, uj = draws[i]
        x0 = ux * w
        y0 = uy * h
        seg = length * (0.8 + 0.4 * uj)
        x1 = x0 + sin_t * seg
        y1 = y0 + cos_t * seg
        _add_streak(coverage, x0, y0, x1, y1)
    np.clip(coverage, 0.0, 1.0, out=coverage)

    # 3-tap smear along the fall direction (integer offsets, clamp-to-edge)
    ox = int(math.floor(sin_t + 0.5))
    oy = int(math.floor(cos_t + 0.5))
    blurred = 0.25 * _shift_edge(coverage, -oy, -ox) + 0.5 * coverage
    blurred = blurred + 0.25 * _shift_edge(coverage, oy, ox)

    alpha = (opacity * blurred)[:, :, None]
    lin = srgb_to_linear(img.array)
    out = lin * (1.0 - alpha) + RAIN_BRIGHTNESS * alpha
    out = MID_GRAY_LINEAR + contrast_scale * (out - MID_GRAY_LINEAR)
    return Rgb8Image(linear_to_srgb(out))


def _add_streak(coverage: np.ndarray, x0: float, y0: float, x1: float, y1: float) -> None:
    """Accumulate anti-aliased coverage of a 1-px line segment in place."""
    h, w = coverage.shape
    bx0 = max(0, int(math.floor(min(x0, x1))) - 2)
    bx1 = min(w, int(math.ceil(max(x0, x1))) + 3)
    by0 = max(0, int(math.floor(min(y0, y1))) - 2)
    by1 = min(h, int(math.ceil(max(y0, y1))) + 3)
    if bx0 >= bx1 or by0 >= by1:
        return
    px = np.arange(bx0, bx1, dtype=np.float64)[None, :] + 0.5
    py = np.arange(by0, by1, dtype=np.float64)[:, None] + 0.5
    ex = x1 - x0
    ey = y1 - y0
    len2 = ex * ex + ey * ey
    tproj = np.clip(((px - x0) * ex + (py - y0) * ey) / len2, 0.0, 1.0)
    dx = px - (x0 + tproj * ex)
    dy = py - (y0 + tproj * ey)
    dist = np.sqrt(dx * dx + dy * dy)
    coverage[by0:by1, bx0:bx1] += np.clip(1.0 - dist, 0.0, 1.0)


def _shift_edge(a: np.ndarray, dy: int, dx: int) -> np.ndarray:
    padded = np.pad(a, ((1, 1), (1, 1)), mode="edge")
    return padded[1 + dy : 1 + dy + a.shape[0], 1 + dx : 1 + dx + a.shape[1]]


def low_light_corrupt(img: Rgb8Image, params, seed: int) -> Rgb8Image:
    """Dim the scene, then apply Poisson photon noise and Gaussian read noise."""
    return _poisson_gaussian(
        img,
        scale=float(params["scale"]),
        photons=float(params["photons"]),
        read_sigma=float(params["read_sigma"]),
        seed=seed,
    )


def iso_noise_corrupt(img: Rgb8Image, params, seed: int) -> Rgb8Image:
    """Poisson-Gaussian sensor noise at full exposure (low_light with scale 1)."""
    return _poisson_gaussian(
        img,
        scale=1.0,
        photons=float(params["photons"]),
        read_sigma=float(params["read_sigma"]),
        seed=seed,
    )


def _poisson_gaussian(
    img: Rgb8Image, scale: float, photons: float, read_sigma: float, seed: int
) -> Rgb8Image:
    if not 0.0 < scale <= 1.0:
        raise ValueError("scale must be in (0, 1]")
    if photons <= 0.0:
        raise ValueError("photons must be > 0")
    if read_sigma < 0.0:
        raise ValueError("read_sigma must be >= 0")
    lin = srgb_to_linear(img.array)
    dimmed = lin * scale
    lam = dimmed * photons
    stream = Stream(seed)
    counts = stream.poissons(lam)
    shot = counts.reshape(lam.shape) / photons
    noise = stream.normals(lam.size).reshape(lam.shape)
    out = shot + noise * read_sigma
    return Rgb8Image(linear_to_srgb(out))


def color_quant_lut(bits: int) -> np.ndarray:
    """256-entry uint8 quantization table for the given per-channel bit depth."""
    if not 1 <= bits <= 7:
        raise ValueError("bits must be in [1, 7]")
    levels = 2 ** bits
    v = np.arange(256, dtype=np.float64)
    q = np.floor(v * (levels - 1) / 255.0 + 0.5)
    return np.floor(q * 255.0 / (levels - 1) + 0.5).astype(np.uint8)


def color_quant_corrupt(img: Rgb8Image, params) -> Rgb8Image:
    """Reduce per-channel bit depth; endpoints 0 and 255 are fixed points."""
    lut = color_quant_lut(int(params["bits"]))
    return Rgb8Image(lut[img.array])


def disk_kernel(radius: float) -> np.ndarray:
    """Normalized bokeh disk: weight 1 inside, anti-aliased 1-px rim."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    r = int(math.ceil(radius))
    ax = np.arange(-r, r + 1, dtype=np.float64)
    dist = np.sqrt(ax[None, :] ** 2 + ax[:, None] ** 2)
    weights = np.clip(radius + 0.5 - dist, 0.0, 1.0)
    return weights / weights.sum()


def defocus_corrupt(img: Rgb8Image, params) -> Rgb8Image:
    """Convolve sRGB bytes with the disk kernel; edges clamp."""
    kernel = disk_kernel(float(params["radius"]))
    r = (kernel.shape[0] - 1) // 2
    h, w = img.height, img.width
    src = img.array.astype(np.float64)
    padded = np.pad(src, ((r, r), (r, r), (0, 0)), mode="edge")
    acc = np.zeros_like(src)
    for i in range(kernel.shape[0]):
        for j in range(kernel.shape[1]):
            wt = kernel[i, j]
            if wt != 0.0:
                acc += wt * padded[i : i + h, j : j + w]
    out = np.floor(acc + 0.5)
    np.clip(out, 0.0, 255.0, out=out)
    return Rgb8Image(out.astype(np.uint8))
