"""Pure-NumPy sampling kernels on a counter-based random stream.

Every kernel is a deterministic function of (key, draw index): draw ``i``
owns the counter lanes ``(block, i_lo, i_hi, TAG)`` of a Philox4x32-10
generator, where ``block`` counts the uniform blocks consumed by that
draw (rejection loops advance it). Any partition of an index range
therefore reproduces the same values — generation is embarrassingly
parallel and merge order is index order.

The compiled backend (``_kernels``) implements the same functions with
identical block-consumption rules; the uniform layer is bit-identical
across backends and the transformed draws agree to a few ulps (they use
the same IEEE-754 operations, modulo libm vs. numpy rounding).
"""

from __future__ import annotations

import math

import numpy as np

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = 0x9E3779B9  # key schedule Weyl constants
_W1 = 0xBB67AE85
_MASK32 = 0xFFFFFFFF
_DERIVE_K0 = 0x243F6A88  # fixed key for the (seed, stream) -> key block
_DERIVE_K1 = 0x85A308D3
_DRAW_TAG = 0x00C0FFEE  # fourth counter lane for ordinary draws

_TWO_M52 = 1.0 / 4503599627370496.0  # 2^-52, exact
_TWO_M53 = 0.5 * _TWO_M52

_U32 = np.uint32
_U64 = np.uint64


def _round_keys(k0: int, k1: int) -> list[tuple[int, int]]:
    return [((k0 + r * _W0) & _MASK32, (k1 + r * _W1) & _MASK32)
            for r in range(10)]


def _philox(c0, c1, c2, c3, k0: int, k1: int):
    """Ten Philox4x32 rounds on uint32 arrays (vectorized over draws)."""
    for rk0, rk1 in _round_keys(k0, k1):
        p0 = _M0 * c0.astype(_U64)
        p1 = _M1 * c2.astype(_U64)
        hi0 = (p0 >> _U64(32)).astype(_U32)
        lo0 = p0.astype(_U32)
        hi1 = (p1 >> _U64(32)).astype(_U32)
        lo1 = p1.astype(_U32)
        c0 = hi1 ^ c1 ^ _U32(rk0)
        c1 = lo1
        c2 = hi0 ^ c3 ^ _U32(rk1)
        c3 = lo0
    return c0, c1, c2, c3


def derive_key(seed: int, stream: int) -> tuple[int, int]:
    """Map a (seed, stream) pair to the 64-bit draw key."""
    seed &= (1 << 64) - 1
    stream &= (1 << 64) - 1
    c = [np.array([v], dtype=_U32) for v in (
        seed & _MASK32, (seed >> 32) & _MASK32,
        stream & _MASK32, (stream >> 32) & _MASK32)]
    o0, o1, _, _ = _philox(*c, _DERIVE_K0, _DERIVE_K1)
    return int(o0[0]), int(o1[0])


def _uniform_pair_at(k0: int, k1: int, idx, block):
    """Two open-(0,1) uniforms for each (draw index, block) pair."""
    idx = np.asarray(idx, dtype=_U64)
    block = np.asarray(block, dtype=_U64)
    c0 = block.astype(_U32)
    c1 = idx.astype(_U32)
    c2 = (idx >> _U64(32)).astype(_U32)
    c3 = np.full(idx.shape, _DRAW_TAG, dtype=_U32)
    x0, x1, x2, x3 = _philox(c0, c1, c2, c3, k0, k1)
    v1 = (x0.astype(_U64) << _U64(32)) | x1.astype(_U64)
    v2 = (x2.astype(_U64) << _U64(32)) | x3.astype(_U64)
    u1 = (v1 >> _U64(12)).astype(np.float64) * _TWO_M52 + _TWO_M53
    u2 = (v2 >> _U64(12)).astype(np.float64) * _TWO_M52 + _TWO_M53
    return u1, u2


def uniform_pairs(k0: int, k1: int, start: int, stop: int, block: int = 0):
    """Block ``block`` of uniforms for draw indices [start, stop)."""
    idx = np.arange(start, stop, dtype=_U64)
    return _uniform_pair_at(k0, k1, idx, np.full(idx.shape, block, _U64))


def uniform_draws(k0: int, k1: int, start: int, stop: int) -> np.ndarray:
    return uniform_pairs(k0, k1, start, stop)[0]


def exp_draws(k0: int, k1: int, start: int, stop: int) -> np.ndarray:
    """Unit-exponential draws."""
    return -np.log(uniform_pairs(k0, k1, start, stop)[0])


def _log_kanter_b(alpha: float, theta: np.ndarray) -> np.ndarray:
    # log b(theta) = log sin(theta) - a log sin(a theta) - b log sin(b theta)
    beta = 1.0 - alpha
    return (np.log(np.sin(theta))
            - alpha * np.log(np.sin(alpha * theta))
            - beta * np.log(np.sin(beta * theta)))


def stable_draws(k0: int, k1: int, start: int, stop: int,
                 alpha: float) -> np.ndarray:
    """Positive strictly stable draws with E[exp(-t Z)] = exp(-t^alpha).

    Computed entirely in log space: log Z = (-beta/alpha) log L
    - (1/alpha) log b(U) with L unit exponential, U uniform on (0, pi).
    """
    if alpha == 1.0:
        return np.ones(stop - start)
    u1, u2 = uniform_pairs(k0, k1, start, stop)
    log_l = np.log(-np.log(u1))
    theta = np.pi * u2
    beta = 1.0 - alpha
    return np.exp((-beta / alpha) * log_l
                  - _log_kanter_b(alpha, theta) / alpha)


def kanter_v_draws(k0: int, k1: int, start: int, stop: int,
                   alpha: float) -> np.ndarray:
    """Draws of V = b(U)^(-1/beta), the exponential-free stable factor."""
    _, u2 = uniform_pairs(k0, k1, start, stop)
    theta = np.pi * u2
    beta = 1.0 - alpha
    return np.exp(-_log_kanter_b(alpha, theta) / beta)


def gamma_draws(k0: int, k1: int, start: int, stop: int,
                shape: float) -> np.ndarray:
    """Gamma(shape, 1) draws by the squeeze-rejection method.

    Each attempt consumes exactly two uniform blocks (normal pair, then
    squeeze uniform); shapes below one are boosted from shape+1 with one
    extra block after acceptance. The compiled backend replays the same
    block schedule.
    """
    n = stop - start
    idx = np.arange(start, stop, dtype=_U64)
    a = shape if shape >= 1.0 else shape + 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / (3.0 * math.sqrt(d))
    out = np.empty(n)
    done = np.zeros(n, dtype=bool)
    block = np.zeros(n, dtype=_U64)
    while not done.all():
        act = np.nonzero(~done)[0]
        ii = idx[act]
        bb = block[act]
        u1, u2 = _uniform_pair_at(k0, k1, ii, bb)
        u3, _ = _uniform_pair_at(k0, k1, ii, bb + _U64(1))
        block[act] += _U64(2)
        x = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
        t = 1.0 + c * x
        v = t * t * t
        x2 = x * x
        ok = v > 0.0
        with np.errstate(invalid="ignore", divide="ignore"):
            squeeze = u3 < 1.0 - 0.0331 * (x2 * x2)
            full = np.log(u3) < 0.5 * x2 + d * (1.0 - v + np.log(v))
        accept = ok & (squeeze | full)
        hit = act[accept]
        out[hit] = d * v[accept]
        done[hit] = True
    if shape < 1.0:
        ub, _ = _uniform_pair_at(k0, k1, idx, block)
        out *= ub ** (1.0 / shape)
    return out
