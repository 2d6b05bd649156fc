"""Double-double arithmetic against mpmath reference values."""

import mpmath as mp
import numpy as np
import pytest

from stable_lab import _dd

mp.mp.dps = 50

RNG = np.random.default_rng(20260815)


def as_mp(x):
    return mp.mpf(float(x[0])) + mp.mpf(float(x[1]))


def rel_err(x, ref):
    got = as_mp(x)
    return abs(got - ref) / max(abs(ref), mp.mpf("1e-300"))


def test_add_mul_div_random():
    a = RNG.uniform(-10, 10, size=200)
    b = RNG.uniform(0.1, 10, size=200)
    xa = _dd.from_d(a)
    xb = _dd.from_d(b)
    s = _dd.add(xa, xb)
    p = _dd.mul(xa, xb)
    q = _dd.div(xa, xb)
    for i in range(0, 200, 17):
        ma, mb = mp.mpf(a[i]), mp.mpf(b[i])
        assert rel_err((s[0][i], s[1][i]), ma + mb) < mp.mpf("1e-30")
        assert rel_err((p[0][i], p[1][i]), ma * mb) < mp.mpf("1e-30")
        assert rel_err((q[0][i], q[1][i]), ma / mb) < mp.mpf("1e-29")


def test_exp_accuracy():
    x = np.concatenate([RNG.uniform(-50, 50, size=100), [0.0, 1.0, -1.0, 700.0 * 0.05]])
    e = _dd.exp(_dd.from_d(x))
    worst = mp.mpf(0)
    for i in range(len(x)):
        worst = max(worst, rel_err((e[0][i], e[1][i]), mp.exp(mp.mpf(x[i]))))
    assert worst < mp.mpf("1e-29")


def test_log_accuracy():
    x = np.concatenate([RNG.uniform(1e-8, 1e8, size=100), [1.0, 2.0, np.pi]])
    l = _dd.log(_dd.from_d(x))
    worst = mp.mpf(0)
    for i in range(len(x)):
        worst = max(worst, rel_err((l[0][i], l[1][i]), mp.log(mp.mpf(x[i]))))
    assert worst < mp.mpf("1e-29")


def test_lgamma_accuracy():
    z = np.concatenate([RNG.uniform(1.0, 400.0, size=120), [1.0, 1.5, 2.0, 25.999, 26.0, 1000.0]])
    g = _dd.lgamma(_dd.from_d(z))
    worst = mp.mpf(0)
    for i in range(len(z)):
        ref = mp.loggamma(mp.mpf(z[i]))
        err = abs(as_mp((g[0][i], g[1][i])) - ref)
        scale = max(abs(ref), mp.mpf(1))
        worst = max(worst, err / scale)
    assert worst < mp.mpf("1e-29")


def test_dsum_pairwise():
    # alternating series with heavy cancellation: sum (-1)^n / n! * 30^n = exp(-30).
    # The absolute error of a double-double sum is bounded by the scale of
    # its largest term (~30^30/30! = 7.8e11) times ~1e-28; the relative
    # error against exp(-30) = 9.4e-14 is therefore cancellation-limited.
    n = np.arange(0, 140)
    lg = _dd.lgamma(_dd.from_d(n + 1.0))
    ln30 = _dd.log(_dd.from_d(np.full_like(lg[0], 30.0)))
    t = _dd.exp(_dd.sub(_dd.mul_d(ln30, n.astype(float)), lg))
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    total = _dd.dsum((t[0] * sign, t[1] * sign))
    ref = mp.exp(mp.mpf(-30))
    max_term = float(np.max(t[0]))
    assert abs(as_mp(total) - ref) < mp.mpf(max_term) * mp.mpf("1e-28")


def test_dsum_no_cancellation():
    # without cancellation the pairwise double-double sum is ~1e-30 accurate
    n = np.arange(1, 2000, dtype=float)
    total = _dd.dsum(_dd.div(_dd.from_d(np.ones_like(n)),
                             _dd.mul(_dd.from_d(n), _dd.from_d(n))))
    ref = mp.fsum(1 / mp.mpf(int(i)) ** 2 for i in range(1, 2000))
    assert rel_err(total, ref) < mp.mpf("1e-29")


@pytest.mark.parametrize("v,expect", [((2.0, 0.0), 0.0), ((1.0, 0.0), 0.0)])
def test_lgamma_integers(v, expect):
    g = _dd.lgamma(_dd.from_d(np.array([v[0]])))
    assert abs(g[0][0] + g[1][0] - expect) < 1e-30
