"""Numerical membership checks for monotonicity-type function classes.

This module tests positive functions on ``(0, inf)`` against several
nested classes and reports normalized evidence margins:

* complete monotonicity (CM): ``(-1)^k f^(k) >= 0`` for every order ``k``;
* hyperbolic monotonicity (HM): ``t -> log f(e^t)`` is concave;
* hyperbolic complete monotonicity (HCM): for every ``u > 0`` the profile
  ``H_u(w) = f(uv) f(u/v)`` with ``w = v + 1/v`` is CM in ``w``;
* the rearrangement class: ``f(x) f(c/x) >= f(1/x) f(cx)`` whenever
  ``(x - 1)(c - 1) >= 0``;
* Pick positivity: ``Im g(z) >= 0`` on the upper half-plane;

plus a mode counter with plateau hysteresis and a bisection estimator for
the smallest scale ``c`` at which the density of ``c * Z`` (``Z`` the
one-sided stable variable) satisfies the rearrangement inequality.

Every check returns evidence at the configured resolution, not a proof:
derivatives are taken from a target's exact-derivative hook when it has
one and otherwise estimated by Richardson-extrapolated central
differences whose own uncertainty is folded into the margin
normalization, so that estimator noise alone can never push a margin
below the failure threshold.  Grid-point work is vectorized; the
per-``u`` profiles of the HCM check are distributed over threads
(``STABLE_LAB_THREADS``) and reduced by order-independent minima, so
reports are deterministic regardless of schedule.
"""

from __future__ import annotations

import csv
import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .laws import (
    AlphaParam,
    Family,
    VariableDescriptor,
    _as_alpha,
    derived_density,
    stable_density,
)
from .numerics import _ml_derivative, mittag_leffler

__all__ = [
    "CMReport",
    "CheckConfig",
    "EvaluationError",
    "GridSpec",
    "PickRegion",
    "TargetFunction",
    "available_targets",
    "check_class_p",
    "check_cm",
    "check_hcm",
    "check_hm",
    "check_pick",
    "count_modes",
    "estimate_c_alpha",
    "f_t_hm_witness",
    "f_t_log_derivative",
    "pick_power_product",
    "rescale",
    "target",
    "target_from_table",
]

_EPS = float(np.finfo(float).eps)


class EvaluationError(RuntimeError):
    """A target produced a non-finite or unusable value.

    ``location`` holds the offending abscissa when one is known.
    """

    def __init__(self, message: str, location=None):
        super().__init__(message)
        self.location = location


# ---------------------------------------------------------------------
# grids and configuration
# ---------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class GridSpec:
    """A one-dimensional evaluation grid on ``(0, inf)``.

    ``spacing`` is ``"log"`` (geometric) or ``"lin"`` (arithmetic).
    """

    lo: float
    hi: float
    n: int
    spacing: str = "log"

    def __post_init__(self):
        if self.spacing not in ("log", "lin"):
            raise ValueError("spacing must be 'log' or 'lin'")
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise ValueError("grid needs finite lo < hi")
        if self.spacing == "log" and lo <= 0.0:
            raise ValueError("log spacing needs lo > 0")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("grid needs at least 2 points")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "n", int(self.n))

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclasses.dataclass(frozen=True)
class CheckConfig:
    """Resolution knobs shared by the membership checks."""

    max_order: int = 8
    grid: GridSpec = GridSpec(1e-3, 1e3, 64, "log")
    u_grid: GridSpec = GridSpec(1e-2, 1e2, 16, "log")
    rel_tol: float = 1e-7

    def __post_init__(self):
        if int(self.max_order) != self.max_order or self.max_order < 2:
            raise ValueError("max_order must be an integer >= 2")
        object.__setattr__(self, "max_order", int(self.max_order))
        if not isinstance(self.grid, GridSpec) or not isinstance(
                self.u_grid, GridSpec):
            raise TypeError("grid and u_grid must be GridSpec instances")
        if not (float(self.rel_tol) > 0.0):
            raise ValueError("rel_tol must be positive")
        object.__setattr__(self, "rel_tol", float(self.rel_tol))


@dataclasses.dataclass(frozen=True)
class PickRegion:
    """Sampling rectangle in the open upper half-plane.

    Real parts are spread linearly over ``[-re_limit, re_limit]`` and
    imaginary parts geometrically over ``(0, im_limit]``, concentrating
    samples near the real axis where positivity is hardest.
    """

    re_limit: float
    im_limit: float
    n_re: int = 41
    n_im: int = 21

    def __post_init__(self):
        if not (self.re_limit > 0.0 and self.im_limit > 0.0):
            raise ValueError("re_limit and im_limit must be positive")
        if self.n_re < 2 or self.n_im < 2:
            raise ValueError("need at least 2 points per axis")

    def points(self) -> np.ndarray:
        re = np.linspace(-self.re_limit, self.re_limit, self.n_re)
        im = np.geomspace(self.im_limit * 1e-3, self.im_limit, self.n_im)
        return (re[:, None] + 1j * im[None, :]).ravel()


@dataclasses.dataclass(frozen=True)
class CMReport:
    """Outcome of a margin-based membership check.

    ``worst_margin`` is the most negative normalized margin seen;
    ``worst_location`` is its ``(order, point)`` pair, where ``point``
    is an abscissa (or a ``(u, w)`` / ``(x, c)`` pair / complex point,
    depending on the check).  ``per_order_margins`` holds the worst
    margin of each derivative order tested, ordered by rising order;
    single-inequality checks report one entry.  The check passed iff
    ``worst_margin >= -rel_tol`` at the tolerance it ran with.
    """

    passed: bool
    worst_margin: float
    worst_location: tuple
    per_order_margins: tuple


# ---------------------------------------------------------------------
# targets and the registry
# ---------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class TargetFunction:
    """A named positive function on ``(0, inf)``.

    ``fn`` maps a float array to values; ``log_fn``, when present, maps
    to log-values without intermediate under/overflow; ``derivative``,
    when present, maps ``(x, order)`` to the exact derivative of that
    order.  ``rel_accuracy`` declares the relative evaluation error of
    ``fn`` (quadrature-backed targets are noisier than closed forms) and
    widens the finite-difference noise floor accordingly.
    """

    name: str
    params: tuple
    fn: Callable[[np.ndarray], np.ndarray]
    log_fn: Callable[[np.ndarray], np.ndarray] | None = None
    derivative: Callable[[np.ndarray, int], np.ndarray] | None = None
    rel_accuracy: float = 1e-15

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.asarray(self.fn(arr), dtype=float)
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return float(out[0])
        return out

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def log_values(self, x: np.ndarray) -> np.ndarray:
        if self.log_fn is not None:
            return np.asarray(self.log_fn(np.asarray(x, dtype=float)),
                              dtype=float)
        vals = np.asarray(self.fn(np.asarray(x, dtype=float)), dtype=float)
        if np.any(vals < 0.0):
            bad = float(np.asarray(x, dtype=float)[vals < 0.0][0])
            raise EvaluationError(
                f"{self.name} is negative at x={bad:.6g}", location=bad)
        with np.errstate(divide="ignore"):
            return np.log(vals)


def _params(**kw) -> tuple:
    return tuple(sorted((k, float(v)) for k, v in kw.items()))


_BUILDERS: dict[str, Callable[..., TargetFunction]] = {}


def _register(name: str):
    def deco(builder):
        _BUILDERS[name] = builder
        return builder
    return deco


def available_targets() -> tuple:
    """Names accepted by :func:`target`, sorted."""
    return tuple(sorted(_BUILDERS))


def target(name: str, **params) -> TargetFunction:
    """Build a registered target by name and parameter map."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown target {name!r}; available: "
            f"{', '.join(available_targets())}") from None
    return builder(**params)


def _falling(e: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= e - i
    return out


@_register("exp_decay")
def _exp_decay(rate: float = 1.0) -> TargetFunction:
    r = float(rate)
    if r <= 0.0:
        raise ValueError("rate must be positive")
    return TargetFunction(
        "exp_decay", _params(rate=r),
        fn=lambda x: np.exp(-r * np.asarray(x, dtype=float)),
        log_fn=lambda x: -r * np.asarray(x, dtype=float),
        derivative=lambda x, k: (-r) ** k * np.exp(
            -r * np.asarray(x, dtype=float)),
    )


@_register("power_law")
def _power_law(exponent: float) -> TargetFunction:
    e = float(exponent)

    def deriv(x, k):
        x = np.asarray(x, dtype=float)
        return _falling(e, k) * x ** (e - k)

    return TargetFunction(
        "power_law", _params(exponent=e),
        fn=lambda x: np.asarray(x, dtype=float) ** e,
        log_fn=lambda x: e * np.log(np.asarray(x, dtype=float)),
        derivative=deriv,
    )


@_register("inverse_quadratic")
def _inverse_quadratic() -> TargetFunction:
    def deriv(x, k):
        z = np.asarray(x, dtype=float) - 1j
        sign = 1.0 if k % 2 == 0 else -1.0
        return sign * math.factorial(k) * np.imag(z ** (-(k + 1)))

    return TargetFunction(
        "inverse_quadratic", (),
        fn=lambda x: 1.0 / (1.0 + np.asarray(x, dtype=float) ** 2),
        log_fn=lambda x: -np.log1p(np.asarray(x, dtype=float) ** 2),
        derivative=deriv,
    )


@_register("hcm_factor")
def _hcm_factor(power: float = 1.0, shift: float = 1.0,
                strength: float = 1.0) -> TargetFunction:
    p, y, g = float(power), float(shift), float(strength)
    if y <= 0.0 or g <= 0.0:
        raise ValueError("shift and strength must be positive")

    def fn(x):
        x = np.asarray(x, dtype=float)
        return x ** (p - 1.0) * (x + y) ** (-g)

    def log_fn(x):
        x = np.asarray(x, dtype=float)
        return (p - 1.0) * np.log(x) - g * np.log(x + y)

    def deriv(x, k):
        x = np.asarray(x, dtype=float)
        tot = np.zeros_like(x)
        for j in range(k + 1):
            tot += (math.comb(k, j) * _falling(p - 1.0, j)
                    * x ** (p - 1.0 - j)
                    * _falling(-g, k - j) * (x + y) ** (-g - (k - j)))
        return tot

    return TargetFunction("hcm_factor", _params(power=p, shift=y, strength=g),
                          fn=fn, log_fn=log_fn, derivative=deriv)


@_register("mittag_leffler_decay")
def _ml_decay(alpha: float) -> TargetFunction:
    a = _as_alpha(alpha).alpha

    def deriv(x, k):
        sign = 1.0 if k % 2 == 0 else -1.0
        return sign * np.atleast_1d(
            _ml_derivative(a, -np.asarray(x, dtype=float), k))

    return TargetFunction(
        "mittag_leffler_decay", _params(alpha=a),
        fn=lambda x: np.atleast_1d(
            mittag_leffler(a, -np.asarray(x, dtype=float))),
        derivative=deriv,
        rel_accuracy=1e-9,
    )


@_register("mittag_leffler_stretched")
def _ml_stretched(alpha: float) -> TargetFunction:
    a = _as_alpha(alpha).alpha
    return TargetFunction(
        "mittag_leffler_stretched", _params(alpha=a),
        fn=lambda x: np.atleast_1d(
            mittag_leffler(a, -np.asarray(x, dtype=float) ** a)),
        rel_accuracy=1e-9,
    )


@_register("scaled_stable")
def _scaled_stable(alpha: float, scale: float) -> TargetFunction:
    a = _as_alpha(alpha).alpha
    c = float(scale)
    if c <= 0.0:
        raise ValueError("scale must be positive")

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0.0
        if pos.any():
            out[pos] = np.atleast_1d(stable_density(a, x[pos] / c)) / c
        return out

    return TargetFunction("scaled_stable", _params(alpha=a, scale=c),
                          fn=fn, rel_accuracy=1e-9)


@_register("mittag_leffler_power")
def _ml_power(alpha: float, power: float) -> TargetFunction:
    a = _as_alpha(alpha).alpha
    s = float(power)
    if s == 0.0:
        raise ValueError("power must be nonzero")
    base = VariableDescriptor(Family.MITTAG_LEFFLER, alpha=a)

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0.0
        if pos.any():
            y = x[pos] ** (1.0 / s)
            out[pos] = np.atleast_1d(derived_density(base, y)) \
                * y / (abs(s) * x[pos])
        return out

    return TargetFunction("mittag_leffler_power", _params(alpha=a, power=s),
                          fn=fn, rel_accuracy=1e-9)


# descriptor-backed targets: registry name == family tag, parameters are
# the descriptor's parameters under friendlier keyword names
_FAMILY_KEYS = {
    Family.STABLE: ("alpha",),
    Family.STABLE_POWER: ("alpha", "power"),
    Family.QUOTIENT_T: ("alpha",),
    Family.QUOTIENT_Y: ("alpha",),
    Family.MITTAG_LEFFLER: ("alpha",),
    Family.KANTER_V: ("alpha",),
    Family.KANTER_V_POWER: ("alpha", "power"),
    Family.V_HALF: (),
    Family.Y_SHIFTED: ("power",),
    Family.F_T: ("t",),
    Family.MIXING_X: ("alpha",),
    Family.PROP41_M: ("alpha",),
    Family.SUBORDINATED: ("alpha",),
    Family.PSS_FACTOR: ("alpha", "power"),
    Family.W_SCALE: ("alpha",),
    Family.GAMMA: ("shape",),
    Family.BETA: ("a", "b"),
    Family.EXPONENTIAL: (),
}
_QUAD_BACKED = {Family.STABLE, Family.STABLE_POWER, Family.MIXING_X,
                Family.SUBORDINATED, Family.PSS_FACTOR, Family.W_SCALE}


def _family_builder(fam: Family, keys: tuple):
    def build(**params) -> TargetFunction:
        unknown = set(params) - set(keys)
        if unknown:
            raise TypeError(
                f"{fam.value} takes {keys or 'no parameters'}, "
                f"got {sorted(unknown)}")
        missing = set(keys) - set(params)
        if missing:
            raise TypeError(f"{fam.value} needs {sorted(missing)}")
        kw: dict = {}
        if "alpha" in keys:
            kw["alpha"] = _as_alpha(params["alpha"])
        first = next((k for k in keys if k != "alpha"), None)
        if first is not None:
            kw["param"] = float(params[first])
        if fam is Family.BETA:
            kw = {"param": float(params["a"]), "param2": float(params["b"])}
        desc = VariableDescriptor(fam, **kw)

        def fn(x):
            return np.atleast_1d(derived_density(desc, np.asarray(
                x, dtype=float)))

        acc = 1e-9 if fam in _QUAD_BACKED else (
            1e-9 if fam is Family.MITTAG_LEFFLER else
            1e-12 if fam in {Family.KANTER_V, Family.KANTER_V_POWER,
                             Family.Y_SHIFTED} else 1e-15)
        return TargetFunction(fam.value, _params(
            **{k: (_as_alpha(v).alpha if k == "alpha" else v)
               for k, v in params.items()}), fn=fn, rel_accuracy=acc)

    return build


for _fam, _keys in _FAMILY_KEYS.items():
    _BUILDERS[_fam.value] = _family_builder(_fam, _keys)


def rescale(t: TargetFunction, lam: float) -> TargetFunction:
    """The target ``x -> f(lam * x)``; exact derivatives are chained."""
    lam = float(lam)
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    deriv = None
    if t.derivative is not None:
        deriv = lambda x, k: lam ** k * np.asarray(
            t.derivative(lam * np.asarray(x, dtype=float), k), dtype=float)
    log_fn = None
    if t.log_fn is not None:
        log_fn = lambda x: t.log_fn(lam * np.asarray(x, dtype=float))
    return TargetFunction(
        f"{t.name}*{lam:g}", t.params + (("arg_scale", lam),),
        fn=lambda x: t.fn(lam * np.asarray(x, dtype=float)),
        log_fn=log_fn, derivative=deriv, rel_accuracy=t.rel_accuracy)


def target_from_table(path, name: str | None = None) -> TargetFunction:
    """Ingest a tabulated target from a two-column CSV of (x, value).

    A single non-numeric header row is tolerated.  Abscissae must be
    positive and strictly increasing, values positive.  Evaluation
    interpolates a cubic spline through the log-log points and refuses
    arguments outside the tabulated range.
    """
    from scipy.interpolate import CubicSpline

    rows = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            if len(cells) != 2:
                raise ValueError(f"{path}: row {i + 1} is not two columns")
            try:
                rows.append((float(cells[0]), float(cells[1])))
            except ValueError:
                if i == 0:
                    continue
                raise ValueError(f"{path}: non-numeric row {i + 1}") from None
    if len(rows) < 4:
        raise ValueError(f"{path}: need at least 4 data rows")
    xs = np.array([r[0] for r in rows])
    vs = np.array([r[1] for r in rows])
    if np.any(xs <= 0.0) or np.any(np.diff(xs) <= 0.0):
        raise ValueError(f"{path}: x column must be positive and increasing")
    if np.any(vs <= 0.0):
        raise ValueError(f"{path}: values must be positive")
    spline = CubicSpline(np.log(xs), np.log(vs))
    lo, hi = float(xs[0]), float(xs[-1])
    label = name or Path(path).stem

    def log_fn(x):
        x = np.asarray(x, dtype=float)
        if np.any(x < lo) or np.any(x > hi):
            bad = float(x[(x < lo) | (x > hi)][0])
            raise EvaluationError(
                f"{label}: x={bad:.6g} outside tabulated "
                f"range [{lo:.6g}, {hi:.6g}]", location=bad)
        return spline(np.log(x))

    return TargetFunction(label, (("table_lo", lo), ("table_hi", hi)),
                          fn=lambda x: np.exp(log_fn(x)),
                          log_fn=log_fn, rel_accuracy=1e-6)


def _as_target(f) -> TargetFunction:
    if isinstance(f, TargetFunction):
        return f
    if callable(f):
        label = getattr(f, "__name__", "<callable>")
        return TargetFunction(label, (), fn=lambda x: np.asarray(
            f(np.asarray(x, dtype=float)), dtype=float))
    raise TypeError("expected a TargetFunction or a callable")


# ---------------------------------------------------------------------
# margin engine
# ---------------------------------------------------------------------


def _eval_values(fn, args: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(args, dtype=float)
    vals = np.asarray(fn(arr.ravel()), dtype=float).reshape(arr.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        loc = float(arr[bad][0])
        raise EvaluationError(
            f"{name} returned a non-finite value at x={loc:.6g}",
            location=loc)
    return vals


def _stencil(k: int):
    j = np.arange(k + 1)
    coeff = np.array([(-1.0) ** jj * math.comb(k, jj) for jj in j])
    offsets = k / 2.0 - j
    return offsets, coeff


def _fd_derivative(fn, pts: np.ndarray, scale: np.ndarray, k: int,
                   rel_acc: float, name: str):
    """Richardson-extrapolated central difference of order ``k``.

    Returns the estimate and a conservative bound on its own error
    (truncation proxy from the extrapolation step plus the rounding
    amplification of the stencil at the target's declared accuracy).
    """
    offsets, coeff = _stencil(k)
    eta = max(_EPS, float(rel_acc))
    step = scale * eta ** (1.0 / (k + 2))
    ests, amps = [], []
    for h in (step, step / 2.0):
        args = pts[:, None] + h[:, None] * offsets[None, :]
        vals = _eval_values(fn, args, name)
        ests.append(vals @ coeff / h ** k)
        amps.append(np.abs(vals).max(axis=1) / h ** k)
    rich = (4.0 * ests[1] - ests[0]) / 3.0
    trunc = np.abs(rich - ests[1])
    rounding = eta * (2.0 ** k) * np.maximum(amps[0], amps[1]) * (5.0 / 3.0)
    return rich, 8.0 * (trunc + rounding)


def _order_margins(tgt: TargetFunction, fn, pts: np.ndarray,
                   f0: np.ndarray, scale: np.ndarray, k: int,
                   rel_tol: float, use_exact: bool) -> np.ndarray:
    sign = 1.0 if k % 2 == 0 else -1.0
    if use_exact and tgt.derivative is not None:
        try:
            d = np.asarray(tgt.derivative(pts, k), dtype=float)
        except (ValueError, NotImplementedError):
            # hook does not cover this order; estimate instead
            est, noise = _fd_derivative(fn, pts, scale, k,
                                        tgt.rel_accuracy, tgt.name)
            s = sign * est
            denom = (np.abs(f0) * math.factorial(k) / scale ** k
                     + noise / rel_tol)
            return s / denom
        bad = ~np.isfinite(d)
        if bad.any():
            loc = float(pts[bad][0])
            raise EvaluationError(
                f"{tgt.name} derivative {k} non-finite at x={loc:.6g}",
                location=loc)
        s = sign * d
        noise = 1e-9 * np.abs(s)
    else:
        est, noise = _fd_derivative(fn, pts, scale, k, tgt.rel_accuracy,
                                    tgt.name)
        s = sign * est
    denom = np.abs(f0) * math.factorial(k) / scale ** k + noise / rel_tol
    return s / denom


def _reduce_report(entries: Sequence, rel_tol: float) -> CMReport:
    """entries: iterable of (order, margins array, locations sequence)."""
    per_order: dict = {}
    worst = math.inf
    where: tuple = (0, None)
    for order, margins, locs in entries:
        if len(margins) == 0:
            continue
        i = int(np.argmin(margins))
        m = float(margins[i])
        if m < per_order.get(order, math.inf):
            per_order[order] = m
        if m < worst:
            worst = m
            where = (order, locs[i])
    if not per_order:
        raise EvaluationError("no usable evaluation points")
    margins_by_order = tuple(per_order[k] for k in sorted(per_order))
    return CMReport(passed=bool(worst >= -rel_tol),
                    worst_margin=worst,
                    worst_location=where,
                    per_order_margins=margins_by_order)


def _worker_count() -> int:
    raw = os.environ.get("STABLE_LAB_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"STABLE_LAB_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise ValueError("STABLE_LAB_THREADS must be >= 1")
    return n


# ---------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------


def check_cm(f, cfg: CheckConfig | None = None) -> CMReport:
    """Evidence that ``(-1)^k f^(k) >= 0`` up to ``cfg.max_order``.

    Margins are the signed derivative estimates normalized by the local
    scale ``k! |f(x)| / x^k`` plus the estimator's noise floor divided
    by ``rel_tol``; the latter guarantees that finite-difference noise
    alone cannot produce a failing margin.  Grid points where ``f`` is
    zero (outside a density's support) carry no sign evidence and are
    skipped; non-finite values raise :class:`EvaluationError`.
    """
    tgt = _as_target(f)
    cfg = cfg or CheckConfig()
    pts = cfg.grid.points()
    f0 = _eval_values(tgt.fn, pts, tgt.name)
    keep = f0 > 0.0
    if keep.sum() < 3:
        raise EvaluationError(
            f"{tgt.name} is positive at fewer than 3 grid points")
    pts, f0 = pts[keep], f0[keep]
    entries = []
    for k in range(1, cfg.max_order + 1):
        margins = _order_margins(tgt, tgt.fn, pts, f0, pts, k,
                                 cfg.rel_tol, use_exact=True)
        entries.append((k, margins, pts))
    return _reduce_report(entries, cfg.rel_tol)


def check_hm(f, cfg: CheckConfig | None = None) -> CMReport:
    """Evidence that ``t -> log f(e^t)`` is concave.

    Margins are the negated second differences on a uniform ``t`` grid
    spanning the log of the configured grid; the report carries the
    single order-2 entry, located at the central abscissa ``e^t``.
    """
    tgt = _as_target(f)
    cfg = cfg or CheckConfig()
    t = np.linspace(math.log(cfg.grid.lo), math.log(cfg.grid.hi), cfg.grid.n)
    x = np.exp(t)
    f0 = _eval_values(tgt.fn, x, tgt.name)
    with np.errstate(divide="ignore"):
        g = np.where(f0 > 0.0, np.log(np.where(f0 > 0.0, f0, 1.0)), -np.inf)
    ok = np.isfinite(g[:-2]) & np.isfinite(g[1:-1]) & np.isfinite(g[2:])
    if ok.sum() < 1:
        raise EvaluationError(
            f"{tgt.name} has no three consecutive positive grid points")
    d2 = (g[:-2] - 2.0 * g[1:-1] + g[2:])[ok]
    centers = x[1:-1][ok]
    return _reduce_report([(2, -d2, centers)], cfg.rel_tol)


def check_hcm(f, cfg: CheckConfig | None = None) -> CMReport:
    """Evidence that ``H_u(w) = f(uv) f(u/v)`` is CM in ``w`` for all u.

    ``v = (w + sqrt(w^2 - 4))/2``; the ``w`` grid starts at ``2 + 1e-6``
    (the boundary ``v = 1`` degenerates differencing) and the local step
    scale shrinks with the distance to 2.  Profiles for the different
    ``u`` run on a thread pool (``STABLE_LAB_THREADS``) and are reduced
    by a schedule-independent minimum.  Derivatives in ``w`` are always
    finite differences, composition having no exact hook.
    """
    tgt = _as_target(f)
    cfg = cfg or CheckConfig()
    us = cfg.u_grid.points()
    q = np.geomspace(1e-6, cfg.grid.hi - 2.0, cfg.grid.n)
    w = 2.0 + q
    scale = 0.5 * np.minimum(q, w)

    def profile(u: float):
        def H(warr):
            warr = np.asarray(warr, dtype=float)
            v = 0.5 * (warr + np.sqrt(warr * warr - 4.0))
            return (np.asarray(tgt.fn(u * v), dtype=float)
                    * np.asarray(tgt.fn(u / v), dtype=float))

        name = f"{tgt.name}[H at u={u:.6g}]"
        h0 = _eval_values(H, w, name)
        keep = h0 > 0.0
        if keep.sum() < 3:
            return []
        pw, ps, ph = w[keep], scale[keep], h0[keep]
        sub = []
        for k in range(1, cfg.max_order + 1):
            est, noise = _fd_derivative(H, pw, ps, k,
                                        2.0 * tgt.rel_accuracy, name)
            sign = 1.0 if k % 2 == 0 else -1.0
            s = sign * est
            denom = ph * math.factorial(k) / ps ** k + noise / cfg.rel_tol
            sub.append((k, s / denom, [(float(u), float(x)) for x in pw]))
        return sub

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            groups = list(ex.map(profile, us))
    else:
        groups = [profile(u) for u in us]
    entries = [e for g in groups for e in g]
    return _reduce_report(entries, cfg.rel_tol)


def check_class_p(f, cfg: CheckConfig | None = None) -> CMReport:
    """Evidence for ``f(x) f(c/x) >= f(1/x) f(cx)`` on ``(x-1)(c-1) >= 0``.

    Both branches of the product grid (``x, c >= 1`` and ``x, c <= 1``,
    each padded with the point 1) are tested; margins are the relative
    defect ``1 - [f(1/x) f(cx)] / [f(x) f(c/x)]``, evaluated through
    log-values so deep tails stay meaningful.  On the lines ``x = 1`` or
    ``c = 1`` both sides are the same two factors, so margins there are
    exactly zero.
    """
    tgt = _as_target(f)
    cfg = cfg or CheckConfig()
    p = cfg.grid.points()
    lower = np.unique(np.append(p[p <= 1.0], 1.0))
    upper = np.unique(np.append(p[p >= 1.0], 1.0))
    entries = []
    for side in (lower, upper):
        X, C = np.meshgrid(side, side, indexing="ij")
        x, c = X.ravel(), C.ravel()
        args = np.stack([x, c / x, 1.0 / x, c * x])
        uniq, inv = np.unique(args.ravel(), return_inverse=True)
        logs = tgt.log_values(uniq)
        bad = np.isnan(logs) | (logs == np.inf)
        if bad.any():
            loc = float(uniq[bad][0])
            raise EvaluationError(
                f"{tgt.name} unusable at x={loc:.6g}", location=loc)
        lv = logs[inv].reshape(4, x.size)
        a = lv[0] + lv[1]
        b = lv[2] + lv[3]
        both_zero = np.isneginf(a) & np.isneginf(b)
        with np.errstate(invalid="ignore"):
            delta = b - a
        delta = np.where(both_zero, 0.0, np.clip(delta, None, 50.0))
        margins = -np.expm1(delta)
        locs = list(zip(x.tolist(), c.tolist()))
        entries.append((0, margins, locs))
    return _reduce_report(entries, cfg.rel_tol)


def check_pick(g, region: PickRegion, cfg: CheckConfig | None = None
               ) -> CMReport:
    """Evidence that ``Im g(z) >= 0`` on a grid over the given region.

    ``g`` must be vectorized over a complex array and analytic on the
    region (the caller's responsibility); powers are taken on the
    principal branch with the cut along the negative real axis.
    """
    cfg = cfg or CheckConfig()
    if not isinstance(region, PickRegion):
        raise TypeError("region must be a PickRegion")
    z = region.points()
    vals = np.asarray(g(z), dtype=complex)
    bad = ~np.isfinite(vals)
    if bad.any():
        loc = complex(z[bad][0])
        raise EvaluationError(
            f"non-finite value at z={loc:.6g}", location=loc)
    margins = vals.imag
    return _reduce_report([(0, margins, list(z))], cfg.rel_tol)


def count_modes(f, grid: GridSpec, rel_tol: float = 1e-7) -> int:
    """Number of local maxima of ``f`` along ``grid``.

    Counts strict rise-to-fall turnarounds with plateau hysteresis
    ``rel_tol * max f`` so floating-point ripples do not register; a
    maximum at either grid edge counts as a mode (a decreasing density
    has one mode, at the left edge).
    """
    tgt = _as_target(f)
    y = _eval_values(tgt.fn, grid.points(), tgt.name)
    top = float(np.max(y))
    if top <= 0.0:
        return 0
    eps = rel_tol * top
    modes = 0
    rising = True
    ref = float(y[0])
    for val in map(float, y[1:]):
        if rising:
            if val > ref:
                ref = val
            elif val < ref - eps:
                modes += 1
                rising = False
                ref = val
        else:
            if val < ref:
                ref = val
            elif val > ref + eps:
                rising = True
                ref = val
    if rising:
        modes += 1
    return modes


def estimate_c_alpha(alpha, cfg: CheckConfig | None = None, *,
                     c_max: float = 8.0) -> tuple:
    """Bracket the smallest scale ``c`` with ``c * Z`` in the
    rearrangement class.

    Returns ``(lower, upper)`` with the inequality check failing at
    ``lower`` and passing at ``upper``.  For ``alpha <= 1/2`` scaling
    never breaks the inequality and the bracket is exactly ``(0, 0)``.
    If even ``c_max`` fails the check the bracket is open-ended:
    ``(c_max, inf)``.  When no failing scale is found down to
    ``c_max * 2**-18`` the bracket is ``(0, smallest passing c)``.

    The default configuration uses a coarser grid than
    :class:`CheckConfig`'s (cost grows with the square of the grid
    size and each probe re-evaluates a quadrature-backed density).
    """
    a = _as_alpha(alpha)
    if cfg is None:
        cfg = CheckConfig(grid=GridSpec(1e-2, 1e2, 25, "log"))
    if not (float(c_max) > 0.0):
        raise ValueError("c_max must be positive")
    c_max = float(c_max)

    def ok(c: float) -> bool:
        t = target("scaled_stable", alpha=a.alpha, scale=c)
        return check_class_p(t, cfg).passed

    if a.alpha <= 0.5 and ok(0.05) and ok(1.0):
        return (0.0, 0.0)

    if not ok(c_max):
        return (c_max, math.inf)
    hi = c_max
    lo = None
    c = c_max
    for _ in range(18):
        c *= 0.5
        if ok(c):
            hi = c
        else:
            lo = c
            break
    if lo is None:
        return (0.0, hi)
    while hi - lo > 5e-3 * hi:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return (lo, hi)


# ---------------------------------------------------------------------
# upper half-plane helpers
# ---------------------------------------------------------------------


def pick_power_product(u: float) -> Callable[[np.ndarray], np.ndarray]:
    """The product ``((1-z)^u - (-z)^u)((1-zbar)^(u+1) - (-zbar)^(u+1))``.

    For ``u`` in ``(0, 1)`` this has a nonnegative imaginary part on the
    upper half-plane, which certifies the Pick property of the
    logarithmic derivative behind :func:`f_t_log_derivative`.
    """
    uu = float(u)

    def h(z):
        z = np.asarray(z, dtype=complex)
        zb = np.conjugate(z)
        return (((1.0 - z) ** uu - (-z) ** uu)
                * ((1.0 - zb) ** (uu + 1.0) - (-zb) ** (uu + 1.0)))

    return h


def f_t_log_derivative(t: float) -> Callable[[np.ndarray], np.ndarray]:
    """``g'(z)/g(z)`` for ``g(z) = f_t(-z)``, on the cut plane.

    Equals ``1/(1-z) + (t/2) ((1-z)^u - (-z)^u) / ((1-z)^(u+1) -
    (-z)^(u+1))`` with ``u = t - 1``; it is Pick exactly when the
    ``f_t`` family member is hyperbolically completely monotone.
    """
    tt = float(t)
    if tt <= 0.0:
        raise ValueError("t must be positive")
    u = tt - 1.0

    def g(z):
        z = np.asarray(z, dtype=complex)
        num = (1.0 - z) ** u - (-z) ** u
        den = (1.0 - z) ** (u + 1.0) - (-z) ** (u + 1.0)
        return 1.0 / (1.0 - z) + 0.5 * tt * num / den

    return g


def f_t_hm_witness(t: float) -> Callable[[np.ndarray], np.ndarray]:
    """Log-derivative profile ``1/x + (t/2)(x^(t-1) - 1)/(x^t - 1)``.

    If the ``f_t`` family member were hyperbolically monotone this would
    be nonincreasing on ``[1, inf)``; for ``t < 1`` it rises back toward
    zero like ``-t/(2 x^t)``, and detecting that rise on a grid
    certifies the failure.
    """
    tt = float(t)
    if tt <= 0.0:
        raise ValueError("t must be positive")

    def m(x):
        x = np.asarray(x, dtype=float)
        num = np.where(x == 1.0, tt - 1.0, x ** (tt - 1.0) - 1.0)
        den = np.where(x == 1.0, tt, x ** tt - 1.0)
        return 1.0 / x + 0.5 * tt * num / den

    return m
