"""Exact self-similar impact solutions for a bar with a cubic
phase-transforming stress response."""

from .errors import (
    ConvergenceError,
    DomainError,
    KineticsError,
    MaterialError,
    NoSignChangeError,
    RegimeError,
    SpinodalError,
    UnavailableCurveError,
)
from .material import BarState, Material, integral_c, stress, wave_speed
from .regimes import (
    Kinetics,
    LoadingRegime,
    MaterialCase,
    Thresholds,
    classify_loading,
    classify_material,
    h_star,
    select_kinetics,
    thresholds,
)
from .riemann import Discontinuity, FanRegion, WaveKind, WaveSolution, evaluate, profile, solve

__version__ = "0.1.0"
