"""Threshold impact velocities, loading regimes and kinetics selection."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import KineticsError, RegimeError
from .material import Material
from .numerics import f_antiderivative, find_root

SQRT3 = math.sqrt(3.0)

CASE_TOL = 1e-9
DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class Thresholds:
    """Impact velocities bounding the weak, intermediate and strong regimes.

    ``v_double_star`` is None when h < sqrt(3).
    """

    v_star: float
    v_double_star: Optional[float]
    v_triple_star: float


class LoadingRegime(enum.Enum):
    WEAK = "weak"
    INTERMEDIATE = "intermediate"
    STRONG = "strong"


@dataclass(frozen=True)
class Loading:
    regime: LoadingRegime
    degenerate: bool = False

    def __str__(self):
        if self.degenerate:
            return f"{self.regime.value}(degenerate)"
        return self.regime.value


class MaterialCase(enum.Enum):
    A1 = "A1"  # h > h*
    A2 = "A2"  # h = h*
    A3 = "A3"  # sqrt(3) < h < h*
    B = "B"  # h = sqrt(3)
    C = "C"  # h < sqrt(3)


class Kinetics(enum.Enum):
    AUTO = "auto"
    DISSIPATION_FREE = "dissipation-free"
    MAXIMALLY_DISSIPATIVE = "maximally-dissipative"


def v_double_star_scaled(h: float) -> float:
    """V**/c1 = 2h*sqrt(h^2/3 - 1); only meaningful for h >= sqrt(3)."""
    return 2.0 * h * math.sqrt(max(h * h / 3.0 - 1.0, 0.0))


def thresholds(m: Material) -> Thresholds:
    h = m.h
    v_star = m.c1 * f_antiderivative(h)
    v_dd = m.c1 * v_double_star_scaled(h) if h >= SQRT3 else None
    v_ttt = 3.0 * m.c1 * h * math.sqrt(h * h - 1.0)
    return Thresholds(v_star, v_dd, v_ttt)


def critical_ratio_residual(h: float) -> float:
    """Phi(h) = F(h) - 2h*sqrt(h^2/3 - 1), i.e. (V* - V**)/c1."""
    return f_antiderivative(h) - v_double_star_scaled(h)


@functools.lru_cache(maxsize=None)
def h_star() -> float:
    """Critical ratio h* in (sqrt(3), 2) at which V* = V**."""
    return find_root(critical_ratio_residual, SQRT3, 2.0)


def classify_material(m: Material) -> MaterialCase:
    h, hs = m.h, h_star()
    if abs(h - hs) <= CASE_TOL * hs:
        return MaterialCase.A2
    if h > hs:
        return MaterialCase.A1
    if abs(h - SQRT3) <= CASE_TOL * SQRT3:
        return MaterialCase.B
    if h > SQRT3:
        return MaterialCase.A3
    return MaterialCase.C


def classify_loading(m: Material, v: float, th: Optional[Thresholds] = None) -> Loading:
    if not v > 0.0:
        raise RegimeError(f"impact velocity must be positive, got {v!r}")
    th = th or thresholds(m)
    if v <= th.v_star:
        return Loading(LoadingRegime.WEAK)
    if abs(v - th.v_triple_star) <= DEGENERATE_TOL * th.v_triple_star:
        return Loading(LoadingRegime.STRONG, degenerate=True)
    if v > th.v_triple_star:
        return Loading(LoadingRegime.STRONG)
    return Loading(LoadingRegime.INTERMEDIATE)


def select_kinetics(m: Material, requested: Kinetics = Kinetics.AUTO) -> Kinetics:
    """Resolve the kinetic relation used for intermediate impacts.

    Automatic selection uses dissipation-free kinetics only when h > h*
    (case A1); on h <= h* it falls back to maximal dissipation.
    """
    if requested is Kinetics.AUTO:
        if classify_material(m) is MaterialCase.A1:
            return Kinetics.DISSIPATION_FREE
        return Kinetics.MAXIMALLY_DISSIPATIVE
    if requested is Kinetics.DISSIPATION_FREE and m.h <= SQRT3:
        raise KineticsError(
            f"dissipation-free kinetics needs h > sqrt(3); this material has h={m.h:.6g}"
        )
    return requested
