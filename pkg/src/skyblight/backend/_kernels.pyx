# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampler kernels.

Bit-identical twin of `pykernels.py`; see that module for the pinned
algorithm definitions.  Compiled with -ffp-contract=off so no FMA contraction
can diverge from the interpreted float semantics.
"""

import numpy as np

from libc.math cimport cos, exp, fabs, floor, lgamma, log, sin, sqrt
from libc.stdint cimport uint64_t


cdef double _INV53 = 2.0 ** -53
cdef double _TWO_PI = 6.283185307179586


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _next_u64(uint64_t* s) nogil:
    cdef uint64_t result = _rotl(s[0] + s[3], 23) + s[0]
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


cdef inline double _u01(uint64_t* s) nogil:
    return <double>(_next_u64(s) >> 11) * _INV53


cdef inline double _u01_open(uint64_t* s) nogil:
    return <double>((_next_u64(s) >> 11) + 1) * _INV53


def uniform_fill(uint64_t[::1] state, Py_ssize_t n):
    """n uniforms in [0, 1), advancing the stream state in place."""
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef uint64_t s[4]
    cdef Py_ssize_t i
    s[0] = state[0]; s[1] = state[1]; s[2] = state[2]; s[3] = state[3]
    with nogil:
        for i in range(n):
            out[i] = _u01(s)
    state[0] = s[0]; state[1] = s[1]; state[2] = s[2]; state[3] = s[3]
    return out_arr


def normal_fill(uint64_t[::1] state, Py_ssize_t n):
    """n standard normals via Box-Muller; the odd trailing half-pair is dropped."""
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef uint64_t s[4]
    cdef Py_ssize_t i = 0
    cdef double u1, u2, r
    s[0] = state[0]; s[1] = state[1]; s[2] = state[2]; s[3] = state[3]
    with nogil:
        while i < n:
            u1 = _u01_open(s)
            u2 = _u01(s)
            r = sqrt(-2.0 * log(u1))
            out[i] = r * cos(_TWO_PI * u2)
            if i + 1 < n:
                out[i + 1] = r * sin(_TWO_PI * u2)
            i += 2
    state[0] = s[0]; state[1] = s[1]; state[2] = s[2]; state[3] = s[3]
    return out_arr


cdef double _poisson_one(double lam, uint64_t* s) nogil:
    cdef double limit, p
    cdef double slam, loglam, b, a, invalpha, vr, u, v, us, k, lhs
    cdef long ki
    if lam <= 0.0:
        return 0.0
    if lam < 10.0:
        # multiplicative inversion (Knuth)
        limit = exp(-lam)
        ki = 0
        p = 1.0
        while True:
            ki += 1
            p *= _u01(s)
            if p <= limit:
                return <double>(ki - 1)
    # PTRS transformed rejection (Hormann 1993)
    slam = sqrt(lam)
    loglam = log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)
    while True:
        u = _u01(s) - 0.5
        v = _u01(s)
        us = 0.5 - fabs(u)
        if us == 0.0:
            continue
        k = floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= vr:
            return k
        if k < 0.0 or (us < 0.013 and v > us):
            continue
        if v <= 0.0:
            return k
        lhs = log(v) + log(invalpha) - log(a / (us * us) + b)
        if lhs <= k * loglam - lam - lgamma(k + 1.0):
            return k


def poisson_fill(uint64_t[::1] state, double[::1] lam):
    """Poisson counts for each rate in lam (flat float64 array), as float64."""
    cdef Py_ssize_t n = lam.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef uint64_t s[4]
    cdef Py_ssize_t i
    s[0] = state[0]; s[1] = state[1]; s[2] = state[2]; s[3] = state[3]
    with nogil:
        for i in range(n):
            out[i] = _poisson_one(lam[i], s)
    state[0] = s[0]; state[1] = s[1]; state[2] = s[2]; state[3] = s[3]
    return out_arr
