"""Levy-measure structure of the log-transformed Kanter variable.

For W = log V (V the Kanter variable), the Levy measure of W has a
completely monotone density w(x) expressible as the Laplace transform
of an integer-valued staircase, and the Laplace transform of beta*W is
a ratio of Gamma functions. This module evaluates the staircase, the
Levy density by exact piecewise-exponential summation, the
three-exponential reconstruction integrand, and the Gamma-ratio
identity.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import numpy as np

from .laws import AlphaParam, _as_alpha

__all__ = [
    "StaircaseBreaks",
    "theta",
    "levy_density_w",
    "levy_integrand_g",
    "w_laplace_identity",
]


# ---------------------------------------------------------------------
# staircase breakpoints
# ---------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class StaircaseBreaks:
    """Sorted, deduplicated jump locations of the staircase integrand.

    In "w" scale the staircase t -> [t] - [alpha t] - [beta t] jumps at
    {k, k/alpha, k/beta : k >= 1}; in "theta" scale everything is
    multiplied by beta, so the first breakpoint is beta itself.
    """

    alpha: AlphaParam
    breakpoints: np.ndarray
    scale: str = "w"

    def __post_init__(self):
        ap = _as_alpha(self.alpha)
        object.__setattr__(self, "alpha", ap)
        if self.scale not in ("w", "theta"):
            raise ValueError("scale must be 'w' or 'theta'")
        pts = np.asarray(self.breakpoints, dtype=float)
        if pts.ndim != 1 or len(pts) == 0:
            raise ValueError("breakpoints must be a nonempty 1-d sequence")
        if np.any(np.diff(pts) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")
        gaps = np.diff(pts) / np.maximum(1.0, pts[:-1])
        if np.any(gaps < 1e-14):
            raise ValueError("breakpoints closer than the merge tolerance")
        first = 1.0 if self.scale == "w" else ap.beta
        if pts[0] < first * (1.0 - 1e-12):
            raise ValueError(
                f"first breakpoint {pts[0]} below {first} for "
                f"{self.scale!r} scale")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def build(cls, alpha=None, cutoff: float = 50.0, *,
              ratio: tuple[int, int] | None = None,
              scale: str = "w") -> "StaircaseBreaks":
        """Merge {k, k/alpha, k/beta : k >= 1} up to ``cutoff``.

        ``ratio=(p, q)`` declares alpha = p/q exactly; breakpoints are
        then computed in rational arithmetic so that coincidences like
        k/alpha landing on an integer merge exactly instead of within
        floating-point noise.
        """
        if scale not in ("w", "theta"):
            raise ValueError("scale must be 'w' or 'theta'")
        if ratio is not None:
            p, q = ratio
            if p <= 0 or q <= 0 or p >= q:
                raise ValueError("ratio must satisfy 0 < p < q")
            frac = Fraction(p, q)
            if alpha is not None and abs(float(frac) - float(alpha)) > 1e-12:
                raise ValueError("ratio and alpha disagree")
            ap = _as_alpha(float(frac))
            one, a, b = Fraction(1), frac, 1 - frac
        else:
            if alpha is None:
                raise ValueError("alpha or ratio is required")
            ap = _as_alpha(alpha)
            one, a, b = 1.0, ap.alpha, ap.beta
        if cutoff <= 1.0:
            raise ValueError("cutoff must exceed 1")

        mul = one if scale == "w" else b
        pts = []
        for step in (one, a, b):  # spacing 1, alpha, beta -> k, k/a, k/b
            k = 1
            while True:
                val = mul * k / step
                if float(val) > cutoff:
                    break
                pts.append(val)
                k += 1
        if ratio is not None:
            pts = sorted(set(pts))
        else:
            pts = sorted(pts)
        merged = [pts[0]]
        for v in pts[1:]:
            if float(v - merged[-1]) > 1e-14 * max(1.0, float(merged[-1])):
                merged.append(v)
        return cls(ap, np.array([float(v) for v in merged]), scale)


# ---------------------------------------------------------------------
# the staircase itself
# ---------------------------------------------------------------------


def _staircase(alpha: float, t: np.ndarray) -> np.ndarray:
    """[t] - [alpha t] - [beta t] for t >= 0 (0-or-1 valued)."""
    beta = 1.0 - alpha
    return (np.floor(t) - np.floor(alpha * t) - np.floor(beta * t))


def theta(alpha, t):
    """Staircase integrand ([t/beta] - [t] - [(alpha/beta) t]) for t >= beta.

    Integer-valued, and always 0 or 1.
    """
    ap = _as_alpha(alpha)
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt < 0.0):
        raise ValueError("t must be nonnegative")
    beta = ap.beta
    out = np.where(
        tt >= beta,
        np.floor(tt / beta) - np.floor(tt) - np.floor(ap.alpha / beta * tt),
        0.0)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


# ---------------------------------------------------------------------
# Levy density
# ---------------------------------------------------------------------


def levy_density_w(alpha, x, breaks: StaircaseBreaks | None = None):
    """Levy density of W at x > 0 by exact piecewise-exponential sums.

    w(x) = beta * integral_1^inf e^(-beta t x) ([t]-[alpha t]-[beta t]) dt;
    the integrand is constant between staircase breakpoints, so each
    interval contributes (e^(-beta x t_j) - e^(-beta x t_{j+1}))/x times
    its 0-or-1 level. Truncated once the exponential weight drops below
    1e-16 of the leading one.
    """
    ap = _as_alpha(alpha)
    a, beta = ap.alpha, ap.beta
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xx <= 0.0):
        raise ValueError("x must be positive")
    out = np.empty_like(xx)
    for i, xi in enumerate(xx):
        # e^(-beta x (t-1)) <= 1e-16  <=>  t >= 1 + 37/(beta x)
        cutoff = 1.0 + 38.0 / (beta * xi)
        if breaks is not None and breaks.scale == "w" \
                and breaks.alpha.alpha == a \
                and breaks.breakpoints[-1] >= cutoff:
            pts = breaks.breakpoints
            pts = pts[pts <= cutoff]
        else:
            pts = StaircaseBreaks.build(a, cutoff + 2.0).breakpoints
            pts = pts[pts <= cutoff]
        mids = 0.5 * (pts[:-1] + pts[1:])
        levels = _staircase(a, mids)
        weights = np.exp(-beta * xi * pts)
        contrib = (weights[:-1] - weights[1:]) * levels
        out[i] = float(np.sum(contrib[::-1])) / xi
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


# ---------------------------------------------------------------------
# reconstruction integrand and Laplace identity
# ---------------------------------------------------------------------


def levy_integrand_g(alpha, x):
    """Three-exponential reconstruction integrand.

    g(x) = 1/(e^x - 1) - 1/(e^(x/alpha) - 1) - 1/(e^(x/beta) - 1),
    nonnegative on (0, inf), with limit 1/2 at 0+ (the 1/x poles cancel)
    and integral -(alpha log alpha + beta log beta).
    """
    ap = _as_alpha(alpha)
    a, beta = ap.alpha, ap.beta
    xx = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xx <= 0.0):
        raise ValueError("x must be positive")
    out = np.empty_like(xx)
    small = xx < 1e-3
    if small.any():
        # 1/(e^y - 1) = 1/y - 1/2 + y/12 - y^3/720 + O(y^5); poles cancel
        xs = xx[small]
        c1 = (1.0 - 1.0 / a - 1.0 / beta) / 12.0
        c3 = (1.0 / a ** 3 + 1.0 / beta ** 3 - 1.0) / 720.0
        out[small] = 0.5 + c1 * xs + c3 * xs ** 3
    big = ~small
    if big.any():
        xb = xx[big]
        with np.errstate(over="ignore"):
            out[big] = (1.0 / np.expm1(xb) - 1.0 / np.expm1(xb / a)
                        - 1.0 / np.expm1(xb / beta))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out


def w_laplace_identity(alpha, lam: float) -> float:
    """E[e^(-lam beta W)] = Gamma(1+lam) / (Gamma(1+alpha lam) Gamma(1+beta lam))."""
    ap = _as_alpha(alpha)
    if lam < 0.0:
        raise ValueError("lambda must be nonnegative")
    return math.exp(math.lgamma(1.0 + lam)
                    - math.lgamma(1.0 + ap.alpha * lam)
                    - math.lgamma(1.0 + ap.beta * lam))
