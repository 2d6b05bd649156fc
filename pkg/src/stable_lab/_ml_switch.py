"""Band edges for the three-branch Mittag-Leffler evaluator
(power series / float64 contour integral / large-argument
expansion), calibrated offline against an mpmath Mellin-Barnes
reference at relative target 1e-11 for derivative orders 0..8.
One row per order; linear interpolation in alpha with clamped
endpoints.  Generated by tools/calibrate_ml.py -- do not edit
by hand.

Validated worst-case relative error (max over orders 0..8 and
probe points in all three branches):
  alpha= 0.02:  worst rel 1.24e-12
  alpha= 0.05:  worst rel 8.84e-13
  alpha= 0.10:  worst rel 3.30e-12
  alpha= 0.15:  worst rel 3.07e-12
  alpha= 0.20:  worst rel 8.51e-12
  alpha= 0.25:  worst rel 8.17e-12
  alpha= 0.30:  worst rel 9.73e-12
  alpha= 0.35:  worst rel 5.00e-12
  alpha= 0.40:  worst rel 7.68e-12
  alpha= 0.45:  worst rel 8.59e-12
  alpha= 0.50:  worst rel 3.50e-12
  alpha= 0.55:  worst rel 5.17e-12
  alpha= 0.60:  worst rel 9.00e-12
  alpha= 0.65:  worst rel 9.43e-12
  alpha= 0.70:  worst rel 8.92e-12
  alpha= 0.75:  worst rel 7.12e-12
  alpha= 0.80:  worst rel 7.03e-12
  alpha= 0.85:  worst rel 8.54e-12
  alpha= 0.90:  worst rel 9.78e-12
  alpha= 0.95:  worst rel 9.97e-12
  alpha= 0.98:  worst rel 9.44e-12
"""

SWITCH_RADIUS = (
    (0.02, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.98),
    (
        (1.05, 1.20, 1.45, 1.75, 2.10, 2.55, 3.00, 3.50, 4.25, 5.25, 6.50, 7.75, 9.25, 11.25, 11.50, 16.00, 19.00, 23.00, 27.00, 29.50, 32.50),
        (1.05, 1.15, 1.40, 1.70, 2.05, 2.45, 2.95, 3.50, 4.25, 5.00, 6.00, 7.25, 8.75, 10.50, 12.50, 12.50, 17.50, 21.00, 25.00, 29.50, 29.50),
        (1.05, 1.15, 1.40, 1.65, 2.00, 2.40, 2.85, 3.25, 4.00, 4.75, 5.75, 5.75, 8.25, 10.00, 11.75, 14.00, 16.50, 19.50, 23.50, 27.00, 29.50),
        (1.05, 1.15, 1.35, 1.60, 1.95, 2.30, 2.75, 3.25, 3.75, 4.50, 5.50, 6.50, 7.75, 9.50, 11.25, 13.00, 15.50, 18.50, 22.00, 25.50, 25.00),
        (1.05, 1.15, 1.35, 1.60, 1.90, 2.25, 2.65, 3.00, 3.75, 4.50, 5.25, 6.25, 7.50, 9.00, 10.75, 12.50, 15.00, 17.50, 21.00, 21.50, 26.00),
        (1.00, 1.10, 1.30, 1.55, 1.85, 2.15, 2.60, 3.00, 3.50, 4.25, 5.00, 6.00, 7.25, 8.50, 10.25, 12.00, 14.00, 17.00, 20.00, 23.00, 25.00),
        (1.00, 1.10, 1.30, 1.50, 1.80, 2.10, 2.50, 2.95, 3.50, 4.00, 4.75, 5.75, 7.00, 8.25, 9.75, 11.75, 13.50, 16.00, 19.00, 22.00, 21.50),
        (1.00, 1.10, 1.25, 1.25, 1.50, 2.05, 2.40, 2.85, 3.25, 4.00, 4.75, 5.50, 6.75, 8.00, 9.50, 11.25, 13.00, 15.50, 18.50, 21.50, 20.50),
        (1.00, 1.05, 1.25, 1.45, 1.45, 2.00, 2.35, 2.75, 3.25, 3.75, 4.50, 5.50, 6.50, 7.75, 8.00, 10.75, 13.00, 15.00, 18.00, 18.50, 20.00),
    ),
    (
        (1.60, 1.95, 2.10, 3.75, 2.40, 2.55, 5.00, 6.00, 4.25, 12.50, 5.25, 16.50, 8.00, 12.00, 14.50, 13.00, 15.50, 19.50, 23.00, 29.00, 32.00),
        (2.00, 2.05, 2.20, 4.25, 2.50, 2.70, 5.25, 7.50, 4.75, 13.50, 5.75, 17.50, 9.00, 14.50, 17.00, 14.50, 17.50, 22.00, 26.50, 33.50, 35.50),
        (3.00, 2.90, 2.80, 4.75, 2.65, 2.80, 5.50, 9.25, 5.00, 14.50, 6.00, 19.00, 9.50, 16.50, 19.50, 15.50, 19.50, 23.00, 29.50, 37.50, 38.00),
        (4.00, 4.00, 3.75, 5.25, 3.25, 2.90, 6.00, 11.25, 5.25, 16.00, 6.25, 20.50, 10.00, 18.50, 20.50, 16.50, 20.50, 24.50, 31.00, 38.50, 39.50),
        (5.00, 5.00, 4.75, 5.75, 4.00, 3.50, 6.25, 13.00, 5.50, 17.00, 6.50, 22.00, 10.50, 21.00, 21.50, 17.50, 21.50, 27.00, 32.00, 40.50, 41.50),
        (6.00, 6.00, 5.75, 6.25, 4.75, 4.25, 6.50, 15.00, 5.50, 18.50, 6.75, 23.50, 11.25, 24.00, 22.50, 18.50, 22.50, 29.50, 33.50, 42.00, 46.00),
        (7.00, 7.00, 6.50, 6.75, 5.50, 5.00, 7.00, 17.00, 5.75, 19.50, 7.00, 25.50, 11.50, 27.00, 23.50, 19.00, 23.50, 31.50, 34.50, 44.00, 48.00),
        (8.00, 7.75, 7.50, 7.25, 6.50, 5.75, 7.50, 18.50, 6.00, 21.00, 7.25, 27.00, 11.75, 30.00, 24.50, 19.50, 25.00, 34.00, 36.00, 45.50, 49.50),
        (9.00, 8.75, 8.50, 7.75, 7.25, 6.25, 8.00, 20.50, 6.00, 22.00, 7.50, 28.50, 12.50, 33.00, 25.50, 20.50, 26.00, 36.50, 39.50, 47.00, 51.50),
    ),
)
