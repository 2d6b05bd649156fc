"""Vectorized double-double arithmetic (~31 significant digits).

Values are (hi, lo) pairs of float64 ndarrays with ``hi + lo`` the represented
number and ``|lo| <= ulp(hi)/2``.  Only the operations the alternating-series
evaluators need are provided: field ops, exp, log, and lgamma on [1, inf).
The error-free transforms (two-sum, Dekker split product) follow the classic
QD recipes; no FMA is assumed.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1

LN2 = (0.6931471805599453, 2.3190468138462996e-17)
HALF_LN_2PI = (0.9189385332046728, -3.8782941580672414e-17)

# Stirling correction coefficients B_{2k}/(2k(2k-1)), k = 1..15.
_STIRLING = (
    (0.08333333333333333, 4.625929269271485e-18),
    (-0.002777777777777778, 1.0601087908747154e-19),
    (0.0007936507936507937, 6.883823317368282e-22),
    (-0.0005952380952380953, 5.36938218754726e-20),
    (0.0008417508417508417, 3.6870174889237694e-20),
    (-0.0019175269175269176, 1.0675702776872475e-19),
    (0.00641025641025641, 2.2240044563805217e-19),
    (-0.029550653594771242, 4.861760957508855e-19),
    (0.17964437236883057, -6.401600482710946e-19),
    (-1.3924322169059011, 1.5837056989230303e-17),
    (13.402864044168393, -6.154114101993966e-16),
    (-156.84828462600203, 9.391823141715389e-15),
    (2193.1033333333335, -1.3339255626002948e-13),
    (-36108.77125372499, 5.897583353514365e-13),
    (691472.268851313, 2.5585296305158e-11),
)

# Arguments below this are shifted up by the recurrence before Stirling.
_STIRLING_MIN = 26.0


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(x, y):
    s, e = two_sum(x[0], y[0])
    e = e + x[1] + y[1]
    return quick_two_sum(s, e)


def add_d(x, b):
    s, e = two_sum(x[0], b)
    e = e + x[1]
    return quick_two_sum(s, e)


def neg(x):
    return -x[0], -x[1]


def sub(x, y):
    return add(x, neg(y))


def mul(x, y):
    p, e = two_prod(x[0], y[0])
    e = e + x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p, e)


def mul_d(x, b):
    p, e = two_prod(x[0], b)
    e = e + x[1] * b
    return quick_two_sum(p, e)


def div(x, y):
    q1 = x[0] / y[0]
    r = sub(x, mul_d(y, q1))
    q2 = r[0] / y[0]
    r = sub(r, mul_d(y, q2))
    q3 = r[0] / y[0]
    s, e = quick_two_sum(q1, q2)
    return add_d((s, e), q3)


def div_d(x, b):
    return div(x, (np.asarray(b, dtype=float), np.zeros_like(np.asarray(b, dtype=float))))


def from_d(a):
    a = np.asarray(a, dtype=float)
    return a, np.zeros_like(a)


def to_d(x):
    return x[0] + x[1]


def dsum(x, axis=-1):
    """Pairwise double-double reduction along an axis."""
    hi = np.moveaxis(np.asarray(x[0], dtype=float), axis, -1)
    lo = np.moveaxis(np.asarray(x[1], dtype=float), axis, -1)
    while hi.shape[-1] > 1:
        n = hi.shape[-1]
        if n % 2:
            hi = np.concatenate([hi, np.zeros(hi.shape[:-1] + (1,))], axis=-1)
            lo = np.concatenate([lo, np.zeros(lo.shape[:-1] + (1,))], axis=-1)
            n += 1
        a = (hi[..., 0::2], lo[..., 0::2])
        b = (hi[..., 1::2], lo[..., 1::2])
        hi, lo = add(a, b)
    return hi[..., 0], lo[..., 0]


def exp(x):
    """Double-double exp, QD-style: ln2 reduction, /512 scaling, Taylor, squarings."""
    hi = np.asarray(x[0], dtype=float)
    m = np.round(hi / LN2[0])
    r = add(x, mul_d(LN2, -m))
    r = (np.ldexp(r[0], -9), np.ldexp(r[1], -9))
    # expm1 Taylor on |r| <= ln2/1024: 10 terms reach ~1e-33
    p = r
    term = r
    for k in range(2, 11):
        term = div_d(mul(term, r), float(k))
        p = add(p, term)
    # (1+p)^(2^9) - 1 by repeated p <- p^2 + 2p
    for _ in range(9):
        p = add(mul(p, p), mul_d(p, 2.0))
    out = add_d(p, 1.0)
    scale = np.exp2(m)  # exact power of two (or 0/inf at extremes)
    return out[0] * scale, out[1] * scale


def log(x):
    """Double-double log for x > 0 via one Newton correction of the f64 seed."""
    y0 = np.log(np.asarray(x[0], dtype=float))
    e = exp((-y0, np.zeros_like(y0)))
    corr = add_d(mul(x, e), -1.0)
    return add((y0, np.zeros_like(y0)), corr)


def _lgamma_stirling(z):
    # (z - 1/2) log z - z + log(2 pi)/2 + sum c_k z^(1-2k),  valid z >= _STIRLING_MIN
    lz = log(z)
    out = mul(add_d(z, -0.5), lz)
    out = sub(out, z)
    out = add(out, HALF_LN_2PI)
    zinv2 = div(from_d(np.ones_like(z[0])), mul(z, z))
    p = div(from_d(np.ones_like(z[0])), z)
    for c in _STIRLING:
        out = add(out, mul(p, c))
        p = mul(p, zinv2)
    return out


def lgamma(z):
    """Double-double log-gamma for real z >= 0.5 (vectorized).

    Arguments below the Stirling threshold are lifted by the recurrence
    lgamma(z) = lgamma(z + m) - sum log(z + i).
    """
    zh = np.asarray(z[0], dtype=float)
    zl = np.asarray(z[1], dtype=float) if np.ndim(z[1]) or np.size(z[1]) else np.zeros_like(zh)
    zh = np.atleast_1d(zh).astype(float)
    zl = np.broadcast_to(np.atleast_1d(zl).astype(float), zh.shape).copy()
    small = zh < _STIRLING_MIN
    corr_h = np.zeros_like(zh)
    corr_l = np.zeros_like(zh)
    if np.any(small):
        sh, sl = zh[small].copy(), zl[small].copy()
        ch = np.zeros_like(sh)
        cl = np.zeros_like(sh)
        for _ in range(int(np.ceil(_STIRLING_MIN - sh.min()))):
            need = sh < _STIRLING_MIN
            if not np.any(need):
                break
            lg = log((sh[need], sl[need]))
            acc = add((ch[need], cl[need]), lg)
            ch[need], cl[need] = acc
            bumped = add_d((sh[need], sl[need]), 1.0)
            sh[need], sl[need] = bumped
        zh2, zl2 = zh.copy(), zl.copy()
        zh2[small], zl2[small] = sh, sl
        corr_h[small], corr_l[small] = ch, cl
        zh, zl = zh2, zl2
    st = _lgamma_stirling((zh, zl))
    return sub(st, (corr_h, corr_l))
