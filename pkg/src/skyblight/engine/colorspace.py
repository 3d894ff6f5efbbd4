"""Gamma-2.2 transfer between 8-bit sRGB and linear light.

Decoding goes through a 256-entry table; encoding rounds half-up explicitly
so the float path is reproducible.
"""

from __future__ import annotations

import numpy as np

GAMMA = 2.2

_DECODE_LUT = (np.arange(256, dtype=np.float64) / 255.0) ** GAMMA

# Rec. 709 luma weights, applied to linear channels
_LUMA_R = 0.2126
_LUMA_G = 0.7152
_LUMA_B = 0.0722


def srgb_to_linear(u8: np.ndarray) -> np.ndarray:
    """uint8 sRGB values to linear light in [0, 1]."""
    return _DECODE_LUT[u8]


def linear_to_srgb(lin: np.ndarray) -> np.ndarray:
    """Linear light to uint8 sRGB; clamps to [0, 1], rounds half-up."""
    clamped = np.clip(lin, 0.0, 1.0)
    return np.floor(clamped ** (1.0 / GAMMA) * 255.0 + 0.5).astype(np.uint8)


def linear_luminance(lin_rgb: np.ndarray) -> np.ndarray:
    """Per-pixel linear luminance of an (h, w, 3) linear-light array."""
    return (_LUMA_R * lin_rgb[..., 0] + _LUMA_G * lin_rgb[..., 1]) + _LUMA_B * lin_rgb[..., 2]
