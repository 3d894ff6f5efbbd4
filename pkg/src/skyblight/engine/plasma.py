"""Plasma field: diamond-square midpoint displacement, used as the fog
transmittance texture.  Deterministic in (width, height, roughness, seed)."""

from __future__ import annotations

import numpy as np

from ..rng import Stream


def plasma_fractal(width: int, height: int, roughness: float, seed: int) -> np.ndarray:
    """Scalar field in [0, 1] of shape (height, width).

    Runs diamond-square on the smallest enclosing (2^n + 1)^2 grid, scaling
    the displacement amplitude by `roughness` at each halving, then crops and
    min-max normalizes.  A constant field (e.g. 1x1) normalizes to zeros.
    """
    if width < 1 or height < 1:
        raise ValueError("field dimensions must be >= 1")
    if not 0.0 < roughness <= 1.0:
        raise ValueError(f"roughness must be in (0, 1], got {roughness}")

    span = 1
    while span + 1 < max(width, height):
        span *= 2
    side = span + 1

    stream = Stream(seed)
    grid = np.zeros((side, side), dtype=np.float64)
    corners = stream.uniforms(4)
    grid[0, 0] = corners[0]
    grid[0, side - 1] = corners[1]
    grid[side - 1, 0] = corners[2]
    grid[side - 1, side - 1] = corners[3]

    amp = 1.0
    step = span
    while step >= 2:
        half = step // 2

        # square pass: cell centers displaced around the mean of their corners
        tl = grid[:-1:step, :-1:step]
        tr = grid[:-1:step, step::step]
        bl = grid[step::step, :-1:step]
        br = grid[step::step, step::step]
        center_mean = ((tl + tr) + (bl + br)) * 0.25
        disp = stream.uniforms(center_mean.size).reshape(center_mean.shape)
        grid[half::step, half::step] = center_mean + (disp * 2.0 - 1.0) * amp

        # diamond pass: edge midpoints take the mean of their in-bounds axial
        # neighbors on the half lattice (corners and fresh centers)
        lattice = grid[::half, ::half]
        q = lattice.shape[0]
        odd = np.arange(q) % 2 == 1
        mask = odd[:, None] ^ odd[None, :]

        padded = np.zeros((q + 2, q + 2), dtype=np.float64)
        padded[1:-1, 1:-1] = lattice
        nsum = (padded[:-2, 1:-1] + padded[2:, 1:-1]) + (padded[1:-1, :-2] + padded[1:-1, 2:])
        count = np.full((q, q), 4.0)
        count[0, :] -= 1.0
        count[-1, :] -= 1.0
        count[:, 0] -= 1.0
        count[:, -1] -= 1.0

        disp = stream.uniforms(int(mask.sum()))
        lattice[mask] = (nsum / count)[mask] + (disp * 2.0 - 1.0) * amp

        amp *= roughness
        step = half

    field = grid[:height, :width]
    lo = field.min()
    hi = field.max()
    if hi == lo:
        return np.zeros((height, width), dtype=np.float64)
    return (field - lo) / (hi - lo)
