# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled sampling kernels: counter-based streams, one C loop per draw.

Mirrors ``_kernels_py`` exactly — same Philox4x32-10 core, same uniform
conversion, same per-draw block-consumption schedule — so both backends
produce the same streams (bit-identical uniforms; transformed draws agree
to libm-vs-numpy rounding).
"""

from libc.math cimport cos, exp, log, sin, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    """
    static const double STABLE_LAB_PI = 3.14159265358979323846264338327950288;
    """
    const double STABLE_LAB_PI

cdef inline void _philox10(unsigned int c[4], unsigned int k0,
                           unsigned int k1) noexcept nogil:
    cdef int r
    cdef unsigned long long p0, p1
    cdef unsigned int hi0, lo0, hi1, lo1
    for r in range(10):
        p0 = <unsigned long long> 0xD2511F53u * c[0]
        p1 = <unsigned long long> 0xCD9E8D57u * c[2]
        hi0 = <unsigned int> (p0 >> 32)
        lo0 = <unsigned int> p0
        hi1 = <unsigned int> (p1 >> 32)
        lo1 = <unsigned int> p1
        c[0] = hi1 ^ c[1] ^ (k0 + <unsigned int> r * 0x9E3779B9u)
        c[1] = lo1
        c[2] = hi0 ^ c[3] ^ (k1 + <unsigned int> r * 0xBB67AE85u)
        c[3] = lo0

cdef double TWO_M52 = 1.0 / 4503599627370496.0
cdef double TWO_M53 = 0.5 * (1.0 / 4503599627370496.0)

cdef inline void _uniform2(unsigned int k0, unsigned int k1,
                           unsigned long long idx, unsigned long long block,
                           double* u1, double* u2) noexcept nogil:
    cdef unsigned int c[4]
    cdef unsigned long long v1, v2
    c[0] = <unsigned int> block
    c[1] = <unsigned int> idx
    c[2] = <unsigned int> (idx >> 32)
    c[3] = 0x00C0FFEEu
    _philox10(c, k0, k1)
    v1 = ((<unsigned long long> c[0]) << 32) | c[1]
    v2 = ((<unsigned long long> c[2]) << 32) | c[3]
    u1[0] = (<double> (v1 >> 12)) * TWO_M52 + TWO_M53
    u2[0] = (<double> (v2 >> 12)) * TWO_M52 + TWO_M53


def derive_key(seed, stream):
    """Map a (seed, stream) pair to the 64-bit draw key."""
    cdef unsigned long long s = <unsigned long long> (int(seed) & ((1 << 64) - 1))
    cdef unsigned long long t = <unsigned long long> (int(stream) & ((1 << 64) - 1))
    cdef unsigned int c[4]
    c[0] = <unsigned int> s
    c[1] = <unsigned int> (s >> 32)
    c[2] = <unsigned int> t
    c[3] = <unsigned int> (t >> 32)
    _philox10(c, 0x243F6A88u, 0x85A308D3u)
    return int(c[0]), int(c[1])


def uniform_pairs(k0, k1, start, stop, block=0):
    """Block ``block`` of uniforms for draw indices [start, stop)."""
    cdef unsigned int kk0 = <unsigned int> (int(k0) & 0xFFFFFFFF)
    cdef unsigned int kk1 = <unsigned int> (int(k1) & 0xFFFFFFFF)
    cdef unsigned long long lo = <unsigned long long> int(start)
    cdef unsigned long long hi = <unsigned long long> int(stop)
    cdef unsigned long long blk = <unsigned long long> int(block)
    cdef Py_ssize_t n = <Py_ssize_t> (hi - lo), i
    u1a = np.empty(n, dtype=np.float64)
    u2a = np.empty(n, dtype=np.float64)
    cdef double[::1] u1 = u1a
    cdef double[::1] u2 = u2a
    with nogil:
        for i in range(n):
            _uniform2(kk0, kk1, lo + <unsigned long long> i, blk,
                      &u1[i], &u2[i])
    return u1a, u2a


def uniform_draws(k0, k1, start, stop):
    return uniform_pairs(k0, k1, start, stop)[0]


def exp_draws(k0, k1, start, stop):
    """Unit-exponential draws."""
    cdef unsigned int kk0 = <unsigned int> (int(k0) & 0xFFFFFFFF)
    cdef unsigned int kk1 = <unsigned int> (int(k1) & 0xFFFFFFFF)
    cdef unsigned long long lo = <unsigned long long> int(start)
    cdef Py_ssize_t n = <Py_ssize_t> (int(stop) - int(start)), i
    outa = np.empty(n, dtype=np.float64)
    cdef double[::1] out = outa
    cdef double u1, u2
    with nogil:
        for i in range(n):
            _uniform2(kk0, kk1, lo + <unsigned long long> i, 0, &u1, &u2)
            out[i] = -log(u1)
    return outa


cdef inline double _log_kanter_b(double alpha, double theta) noexcept nogil:
    cdef double beta = 1.0 - alpha
    return (log(sin(theta)) - alpha * log(sin(alpha * theta))
            - beta * log(sin(beta * theta)))


def stable_draws(k0, k1, start, stop, alpha):
    """Positive strictly stable draws with E[exp(-t Z)] = exp(-t^alpha)."""
    cdef unsigned int kk0 = <unsigned int> (int(k0) & 0xFFFFFFFF)
    cdef unsigned int kk1 = <unsigned int> (int(k1) & 0xFFFFFFFF)
    cdef unsigned long long lo = <unsigned long long> int(start)
    cdef Py_ssize_t n = <Py_ssize_t> (int(stop) - int(start)), i
    cdef double a = <double> alpha
    outa = np.empty(n, dtype=np.float64)
    cdef double[::1] out = outa
    cdef double u1, u2, log_l, theta, beta
    if a == 1.0:
        outa.fill(1.0)
        return outa
    beta = 1.0 - a
    with nogil:
        for i in range(n):
            _uniform2(kk0, kk1, lo + <unsigned long long> i, 0, &u1, &u2)
            log_l = log(-log(u1))
            theta = STABLE_LAB_PI * u2
            out[i] = exp((-beta / a) * log_l - _log_kanter_b(a, theta) / a)
    return outa


def kanter_v_draws(k0, k1, start, stop, alpha):
    """Draws of V = b(U)^(-1/beta), the exponential-free stable factor."""
    cdef unsigned int kk0 = <unsigned int> (int(k0) & 0xFFFFFFFF)
    cdef unsigned int kk1 = <unsigned int> (int(k1) & 0xFFFFFFFF)
    cdef unsigned long long lo = <unsigned long long> int(start)
    cdef Py_ssize_t n = <Py_ssize_t> (int(stop) - int(start)), i
    cdef double a = <double> alpha, beta = 1.0 - <double> alpha
    outa = np.empty(n, dtype=np.float64)
    cdef double[::1] out = outa
    cdef double u1, u2, theta
    with nogil:
        for i in range(n):
            _uniform2(kk0, kk1, lo + <unsigned long long> i, 0, &u1, &u2)
            theta = STABLE_LAB_PI * u2
            out[i] = exp(-_log_kanter_b(a, theta) / beta)
    return outa


def gamma_draws(k0, k1, start, stop, shape):
    """Gamma(shape, 1) draws; identical block schedule to the pure backend."""
    cdef unsigned int kk0 = <unsigned int> (int(k0) & 0xFFFFFFFF)
    cdef unsigned int kk1 = <unsigned int> (int(k1) & 0xFFFFFFFF)
    cdef unsigned long long lo = <unsigned long long> int(start)
    cdef Py_ssize_t n = <Py_ssize_t> (int(stop) - int(start)), i
    cdef double sh = <double> shape
    cdef double a = sh if sh >= 1.0 else sh + 1.0
    cdef double d = a - 1.0 / 3.0
    cdef double cc = 1.0 / (3.0 * sqrt(d))
    outa = np.empty(n, dtype=np.float64)
    cdef double[::1] out = outa
    cdef unsigned long long idx, block
    cdef double u1, u2, u3, u4, x, x2, t, v, g
    cdef bint accepted
    with nogil:
        for i in range(n):
            idx = lo + <unsigned long long> i
            block = 0
            accepted = False
            while not accepted:
                _uniform2(kk0, kk1, idx, block, &u1, &u2)
                _uniform2(kk0, kk1, idx, block + 1, &u3, &u4)
                block += 2
                x = sqrt(-2.0 * log(u1)) * cos(2.0 * STABLE_LAB_PI * u2)
                t = 1.0 + cc * x
                v = t * t * t
                x2 = x * x
                if v <= 0.0:
                    continue
                if u3 < 1.0 - 0.0331 * (x2 * x2):
                    accepted = True
                elif log(u3) < 0.5 * x2 + d * (1.0 - v + log(v)):
                    accepted = True
            g = d * v
            if sh < 1.0:
                _uniform2(kk0, kk1, idx, block, &u1, &u2)
                g *= u1 ** (1.0 / sh)
            out[i] = g
    return outa
