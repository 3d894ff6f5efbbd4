"""Pure-Python sampler kernels.

This is the fallback twin of the compiled extension in `_kernels.pyx`.  Both
implement exactly the same pinned algorithms and must produce bit-identical
streams:

* xoshiro256++ generator seeded through splitmix64
* uniforms as (x >> 11) * 2^-53
* standard normals via Box-Muller on (0,1] x [0,1) uniforms
* Poisson by multiplicative inversion for lam < 10, Hormann's PTRS
  transformed rejection for lam >= 10

Any change here must be mirrored in the extension, and vice versa.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_INV53 = 2.0**-53
_TWO_PI = 6.283185307179586


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


def _next_u64(s: list) -> int:
    result = (_rotl((s[0] + s[3]) & _MASK64, 23) + s[0]) & _MASK64
    t = (s[1] << 17) & _MASK64
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


def _u01(s: list) -> float:
    # [0, 1)
    return (_next_u64(s) >> 11) * _INV53


def _u01_open(s: list) -> float:
    # (0, 1]; keeps log() finite in Box-Muller
    return ((_next_u64(s) >> 11) + 1) * _INV53


def _load_state(state: np.ndarray) -> list:
    return [int(state[0]), int(state[1]), int(state[2]), int(state[3])]


def _store_state(state: np.ndarray, s: list) -> None:
    state[0] = s[0]
    state[1] = s[1]
    state[2] = s[2]
    state[3] = s[3]


def uniform_fill(state: np.ndarray, n: int) -> np.ndarray:
    """n uniforms in [0, 1), advancing the stream state in place."""
    s = _load_state(state)
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = _u01(s)
    _store_state(state, s)
    return out


def normal_fill(state: np.ndarray, n: int) -> np.ndarray:
    """n standard normals via Box-Muller; the odd trailing half-pair is dropped."""
    s = _load_state(state)
    out = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        u1 = _u01_open(s)
        u2 = _u01(s)
        r = math.sqrt(-2.0 * math.log(u1))
        out[i] = r * math.cos(_TWO_PI * u2)
        if i + 1 < n:
            out[i + 1] = r * math.sin(_TWO_PI * u2)
        i += 2
    _store_state(state, s)
    return out


def _poisson_one(lam: float, s: list) -> float:
    if lam <= 0.0:
        return 0.0
    if lam < 10.0:
        # multiplicative inversion (Knuth)
        limit = math.exp(-lam)
        k = 0
        p = 1.0
        while True:
            k += 1
            p *= _u01(s)
            if p <= limit:
                return float(k - 1)
    # PTRS transformed rejection (Hormann 1993)
    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)
    while True:
        u = _u01(s) - 0.5
        v = _u01(s)
        us = 0.5 - abs(u)
        if us == 0.0:
            continue
        k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= vr:
            return k
        if k < 0.0 or (us < 0.013 and v > us):
            continue
        if v <= 0.0:
            return k
        lhs = math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b)
        if lhs <= k * loglam - lam - math.lgamma(k + 1.0):
            return k


def poisson_fill(state: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Poisson counts for each rate in lam (flat float64 array), as float64."""
    s = _load_state(state)
    flat = lam.ravel()
    out = np.empty(flat.shape[0], dtype=np.float64)
    for i in range(flat.shape[0]):
        out[i] = _poisson_one(float(flat[i]), s)
    _store_state(state, s)
    return out
