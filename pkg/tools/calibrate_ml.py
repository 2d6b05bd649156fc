"""Calibrate the Mittag-Leffler branch-switch radii.

The runtime evaluator has three branches for E_alpha^(k)(-z):
  * double-double power series up to z = r1,
  * float64 Mellin-Barnes contour integral on the band (r1, r2),
  * adaptively truncated large-argument expansion from z = r2.

For each alpha on a grid and each derivative order k = 0..8 this tool
finds validated r1 (largest grid z where the series stays within TARGET
relative error) and r2 (smallest grid z from which the expansion does),
and confirms the band branch on [r1, r2].  The reference is the same
Mellin-Barnes integral evaluated with mpmath at 42 digits -- it has no
cancellation and is uniform in alpha/z/order -- itself cross-validated
against direct high-precision series summation at cheap spots.
Results are written to src/stable_lab/_ml_switch.py.

Usage:  python tools/calibrate_ml.py [--alphas 0.5,0.7]
"""

import argparse
import importlib
import math
import pathlib
import sys
import types

import mpmath as mp
import numpy as np
import scipy.special as sps

# import stable_lab.numerics without running the package __init__ (the
# package may be half-built while this offline tool runs)
_pkg_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "stable_lab"
if "stable_lab" not in sys.modules:
    _pkg = types.ModuleType("stable_lab")
    _pkg.__path__ = [str(_pkg_dir)]
    sys.modules["stable_lab"] = _pkg
_numerics = importlib.import_module("stable_lab.numerics")
_ML_SERIES_CAP = _numerics._ML_SERIES_CAP
_log_abs_rgamma = _numerics._log_abs_rgamma
_ml_asymptotic = _numerics._ml_asymptotic
_ml_mb_float = _numerics._ml_mb_float
_ml_series_dd = _numerics._ml_series_dd

TARGET = 1e-11
PUBLIC_BOUND = 1e-10      # hard requirement for orders 0..3
KS = tuple(range(9))
PUBLIC_KS = (0, 1, 2, 3)
ALPHAS = (0.02, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45,
          0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.98)
GRID = np.unique(np.round(np.concatenate([
    np.arange(0.55, 3.001, 0.05),
    np.arange(3.25, 12.001, 0.25),
    np.arange(12.5, 60.001, 0.5),
]), 3))
GRID_A = np.unique(np.concatenate([GRID, np.arange(61.0, 201.0, 1.0)]))


# ---------------------------------------------------------------------
# references
# ---------------------------------------------------------------------

def mb_ref(alpha: float, z: float, k: int) -> mp.mpf:
    """E_alpha^(k)(-z) via the Mellin-Barnes integral on Re s = 1/2."""
    with mp.workdps(42):
        a = mp.mpf(repr(alpha))
        zz = mp.mpf(repr(z))
        decay = math.pi * (1.0 - 0.5 * alpha)
        t_max = 105.0 / decay
        osc = max(abs(math.log(z)), 0.4)
        seg = max(min(6.0 / osc, t_max / 4.0), t_max / 48.0)
        points = [float(t) for t in np.arange(0.0, t_max, seg)] + [t_max]
        c = mp.mpf("0.5")

        def h(t):
            s = mp.mpc(c, t)
            return (mp.pi / mp.sin(mp.pi * s) / mp.gamma(1 - a * s)
                    * mp.rf(s, k) * mp.power(zz, -s - k))

        val = mp.quad(h, points, method="gauss-legendre")
        return mp.re(val) / mp.pi


def series_refs(alpha: float, z: float, ks, n_cap=30000, dps_cap=900):
    """All E^(k)(-z) for k in ks by direct mpmath summation (or None).

    Shares one Gamma(1 + alpha*m) table across orders.  Only used to
    cross-validate the Mellin-Barnes reference where the sum is cheap.
    """
    kmax = max(ks)
    n = np.arange(400000, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logt = (n * math.log(z) + sps.gammaln(n + kmax + 1)
                - sps.gammaln(n + 1) - sps.gammaln(1.0 + alpha * (n + kmax)))
    peak = float(np.nanmax(logt))
    need = np.nonzero(logt >= -120.0)[0]
    if need.size == 0 or need[-1] == n.size - 1:
        return None
    n_ref = int(need[-1])
    dps = int(peak / math.log(10.0)) + 60
    if n_ref > n_cap or dps > dps_cap:
        return None
    with mp.workdps(dps):
        x = -mp.mpf(repr(z))
        a = mp.mpf(repr(alpha))
        gam = [mp.gamma(1 + a * m) for m in range(n_ref + kmax + 1)]
        totals = {k: mp.mpf(0) for k in ks}
        xp = mp.mpf(1)
        for nn in range(n_ref + 1):
            rf = 1
            for k in sorted(ks):
                if k > 0:
                    rf *= nn + k
                totals[k] += rf * xp / gam[nn + k]
            xp *= x
        return totals


def validate_mb_reference():
    spots = [(0.10, 1.2), (0.30, 2.0), (0.50, 3.0), (0.70, 5.0), (0.95, 8.0)]
    worst = 0.0
    for alpha, z in spots:
        refs = series_refs(alpha, z, KS)
        assert refs is not None, f"series reference infeasible at {alpha}, {z}"
        for k in KS:
            mb = mb_ref(alpha, z, k)
            err = float(abs(mb - refs[k]) / abs(refs[k]))
            worst = max(worst, err)
            assert err < 1e-18, (
                f"MB reference disagrees with direct sum at alpha={alpha}, "
                f"z={z}, k={k}: rel={err:.3e}")
    print(f"MB reference cross-validated at {len(spots)} spots "
          f"(worst rel {worst:.2e})", flush=True)


# ---------------------------------------------------------------------
# fast error estimates (numpy only) used to bracket the boundaries
# ---------------------------------------------------------------------

def asym_value_and_est(alpha: float, z: float, k: int):
    """Float value of the truncated expansion and its relative error
    estimate (smallest kept term plus rounding)."""
    n = np.arange(1, 420, dtype=float)
    lg_r = _log_abs_rgamma(1.0 - alpha * n)
    logt = sps.gammaln(n + k) - sps.gammaln(n) - (n + k) * math.log(z) + lg_r
    finite = np.isfinite(logt)
    lt = logt[finite]
    grow = np.nonzero(np.diff(lt) > 0)[0]
    stop = int(grow[0]) + 1 if grow.size else lt.size
    val = float(_ml_asymptotic(alpha, np.array([z]), k)[0])
    min_term = math.exp(min(lt[stop - 1], 700.0))
    max_term = math.exp(min(float(np.max(lt[:stop])), 700.0))
    scale = max(abs(val), 1e-300)
    return val, (min_term + stop * 1.1e-16 * max_term) / scale


def e_scale(alpha: float, z: float, k: int) -> float:
    """Magnitude estimate of E^(k)(-z) for normalizing error estimates."""
    val, est = asym_value_and_est(alpha, z, k)
    if est < 1e-2:
        return abs(val)
    v = abs(float(_ml_series_dd(alpha, np.array([-z]), k)[0]))
    return max(v, 1e-300)


def est_series(alpha: float, z: float, k: int) -> float:
    """Estimated relative error of the double-double series at -z."""
    n = np.arange(_ML_SERIES_CAP, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logt = (n * math.log(z) + sps.gammaln(n + k + 1) - sps.gammaln(n + 1)
                - sps.gammaln(1.0 + alpha * (n + k)))
    peak = float(np.max(logt))
    if peak > 700.0 or int(np.argmax(logt)) >= _ML_SERIES_CAP - 1:
        return np.inf
    n_terms = int(np.nonzero(logt >= peak - 85.0)[0][-1]) + 1
    if n_terms >= _ML_SERIES_CAP:
        return np.inf
    err = 1e-31 * math.exp(peak) * math.sqrt(n_terms)
    return err / max(e_scale(alpha, z, k), 1e-300)


def est_asym(alpha: float, z: float, k: int) -> float:
    return asym_value_and_est(alpha, z, k)[1]


# ---------------------------------------------------------------------
# validated boundaries
# ---------------------------------------------------------------------

def mb_err(alpha: float, z: float, k: int, branch: str, cache: dict) -> float:
    key = (round(float(z), 4), k)
    if key not in cache:
        cache[key] = mb_ref(alpha, float(z), k)
    ref = cache[key]
    if branch == "series":
        val = float(_ml_series_dd(alpha, np.array([-z]), k)[0])
    elif branch == "band":
        val = float(_ml_mb_float(alpha, np.array([z]), k)[0])
    else:
        val = float(_ml_asymptotic(alpha, np.array([z]), k)[0])
    return float(abs(mp.mpf(val) - ref) / abs(ref))


def bisect_last_true(pred, grid):
    """Index of the last True of a True...False predicate (-1 if none)."""
    if not pred(grid[0]):
        return -1
    if pred(grid[-1]):
        return len(grid) - 1
    lo, hi = 0, len(grid) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(grid[mid]):
            lo = mid
        else:
            hi = mid
    return lo


def series_bound(alpha: float, k: int, cache: dict):
    """Largest validated z for the double-double series branch."""
    margin = TARGET / 3.0
    idx = bisect_last_true(lambda z: est_series(alpha, z, k) <= margin, GRID)
    if idx < 0:
        raise RuntimeError(f"alpha={alpha} k={k}: series fails everywhere")
    while idx >= 0:
        r1 = float(GRID[idx])
        spots = sorted({round(max(float(GRID[0]), 0.7 * r1), 2),
                        round(max(float(GRID[0]), r1 - 0.5), 2), r1})
        worst = max(mb_err(alpha, z, k, "series", cache) for z in spots)
        if worst <= TARGET:
            return r1, worst
        idx -= 5
    raise RuntimeError(f"alpha={alpha} k={k}: no validated series bound")


def asym_start(alpha: float, k: int, cache: dict):
    """Smallest validated z for the large-argument branch."""
    margin = TARGET / 3.0
    idx = bisect_last_true(lambda z: est_asym(alpha, z, k) > margin, GRID_A)
    j = idx + 1
    if j >= len(GRID_A):
        raise RuntimeError(f"alpha={alpha} k={k}: expansion never settles")
    while j < len(GRID_A):
        r2 = float(GRID_A[j])
        spots = sorted({r2, round(r2 + 1.0, 2), round(1.5 * r2, 2),
                        min(round(3.0 * r2, 2), 240.0), 240.0})
        worst = max(mb_err(alpha, z, k, "asym", cache) for z in spots)
        if worst <= TARGET:
            return r2, worst
        j += 5
    raise RuntimeError(f"alpha={alpha} k={k}: no validated expansion start")


def band_worst(alpha: float, k: int, r1: float, r2: float, cache: dict):
    """Worst float64 contour-branch error across the band [r1, r2]."""
    zs = np.unique(np.round(np.linspace(r1, max(r1, r2), 5), 3))
    return max(mb_err(alpha, float(z), k, "band", cache) for z in zs)


def calibrate(alpha: float):
    cache = {}
    out = []
    for k in KS:
        r1, w_series = series_bound(alpha, k, cache)
        r2, w_asym = asym_start(alpha, k, cache)
        w_band = band_worst(alpha, k, r1, r2, cache)
        worst = max(w_series, w_asym, w_band)
        if k in PUBLIC_KS and worst > PUBLIC_BOUND:
            raise RuntimeError(
                f"alpha={alpha} k={k}: public order missed {PUBLIC_BOUND:g} "
                f"(attained {worst:.2e})")
        out.append((r1, r2, worst))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alphas", type=str, default=None,
                    help="comma-separated subset (smoke test); skips writing")
    args = ap.parse_args()
    alphas = (tuple(float(a) for a in args.alphas.split(","))
              if args.alphas else ALPHAS)

    validate_mb_reference()
    rows = []
    for alpha in alphas:
        res = calibrate(alpha)
        rows.append((alpha, res))
        worst = max(w for _, _, w in res)
        print(f"alpha={alpha:5.2f}: r1 "
              + " ".join(f"{r1:5.2f}" for r1, _, _ in res)
              + "  r2 " + " ".join(f"{r2:6.2f}" for _, r2, _ in res)
              + f"  worst rel {worst:.1e}", flush=True)

    if args.alphas:
        print("subset run: not writing _ml_switch.py")
        return
    out = (pathlib.Path(__file__).resolve().parents[1]
           / "src/stable_lab/_ml_switch.py")
    lines = [f"  alpha={alpha:5.2f}:  worst rel {max(w for _, _, w in res):.2e}"
             for alpha, res in rows]
    r1_rows = ",\n        ".join(
        "(" + ", ".join(f"{rows[i][1][k][0]:.2f}" for i in range(len(rows)))
        + ")" for k in KS)
    r2_rows = ",\n        ".join(
        "(" + ", ".join(f"{rows[i][1][k][1]:.2f}" for i in range(len(rows)))
        + ")" for k in KS)
    body = (
        '"""Band edges for the three-branch Mittag-Leffler evaluator\n'
        "(power series / float64 contour integral / large-argument\n"
        "expansion), calibrated offline against an mpmath Mellin-Barnes\n"
        "reference at relative target 1e-11 for derivative orders 0..8.\n"
        "One row per order; linear interpolation in alpha with clamped\n"
        "endpoints.  Generated by tools/calibrate_ml.py -- do not edit\n"
        "by hand.\n\n"
        "Validated worst-case relative error (max over orders 0..8 and\n"
        "probe points in all three branches):\n"
        + "\n".join(lines) + "\n"
        '"""\n\n'
        "SWITCH_RADIUS = (\n"
        f"    ({', '.join(f'{a:.2f}' for a, _ in rows)}),\n"
        "    (\n"
        f"        {r1_rows},\n"
        "    ),\n"
        "    (\n"
        f"        {r2_rows},\n"
        "    ),\n"
        ")\n"
    )
    out.write_text(body)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
