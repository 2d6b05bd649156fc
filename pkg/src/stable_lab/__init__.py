"""Toolkit for positive stable laws: densities, samplers, and
complete-monotonicity style property checks."""

from .numerics import (
    IntegrationError,
    QuadConfig,
    SeriesKind,
    cot_diff,
    eulerian_series,
    gamma_ext,
    integrate,
    mittag_leffler,
)
from .laws import (
    AlphaParam,
    DensityGrid,
    Family,
    KanterEval,
    VariableDescriptor,
    derived_density,
    fractional_moment,
    kanter_b,
    laplace_transform,
    power_density,
    stable_density,
    support_left_edge,
)
from .levy import (
    StaircaseBreaks,
    levy_density_w,
    levy_integrand_g,
    theta,
    w_laplace_identity,
)
from .sampling import (
    SampleBatch,
    SeedSpec,
    empirical_laplace,
    ks_distance,
    sample,
)
from ._backend import BACKEND

__all__ = [
    "AlphaParam",
    "BACKEND",
    "DensityGrid",
    "Family",
    "IntegrationError",
    "KanterEval",
    "QuadConfig",
    "SampleBatch",
    "SeedSpec",
    "SeriesKind",
    "StaircaseBreaks",
    "VariableDescriptor",
    "empirical_laplace",
    "ks_distance",
    "sample",
    "cot_diff",
    "derived_density",
    "eulerian_series",
    "fractional_moment",
    "gamma_ext",
    "integrate",
    "kanter_b",
    "laplace_transform",
    "levy_density_w",
    "levy_integrand_g",
    "mittag_leffler",
    "power_density",
    "stable_density",
    "support_left_edge",
    "theta",
    "w_laplace_identity",
]

__version__ = "0.1.0"
