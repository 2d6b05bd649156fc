import sys

import numpy as np

from calibrate_ml import (GRID, asym_start, band_worst, mb_err,
                          series_bound)

alpha, k = float(sys.argv[1]), int(sys.argv[2])
cache = {}
r1, w_s = series_bound(alpha, k, cache)
print("series r1:", r1, "worst", w_s)
r2, w_a = asym_start(alpha, k, cache)
print("asym r2:", r2, "worst", w_a)
for z in np.linspace(r1, r2, 7):
    e = mb_err(alpha, float(z), k, "band", cache)
    print(f"band z={z:7.3f} rel={e:9.2e}")
