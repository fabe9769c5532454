"""Solution loci in the dimensionless (s_dot/c2, V/c1) plane.

Each labeled curve is the image of one piece of the admissible region in
the (gamma+, gamma-) plane.  Point names follow the usual picture of that
region: B = (alpha, g(alpha)), C = (0, 3(alpha+beta)/2), E = (0, alpha+beta)
and F, the upper end of the zero-speed curve gamma- = g(gamma+).  When
h > sqrt(3) the region is the quadrilateral BCEF, at h = sqrt(3) the
triangle BCE and for h < sqrt(3) the triangle BCF.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .diagnostics import zero_speed_strain
from .errors import UnavailableCurveError
from .material import Material, gamma_of_eta
from .numerics import f_antiderivative
from .regimes import SQRT3, MaterialCase, classify_material, v_double_star_scaled
from .riemann import pb_only_speed_scaled

DEFAULT_SAMPLES = 256


class CurveLabel(enum.Enum):
    RAREFACTION_OA = "OA"
    SEGMENT_BC = "BC"
    SEGMENT_CD = "CD"
    SEGMENT_CE = "CE"
    SEGMENT_CF = "CF"
    SEGMENT_EF = "EF"
    AXIS_BE_OR_BF = "AXIS"


class LocusSample(NamedTuple):
    param: float
    s_hat: float
    v_hat: float
    gamma_plus: float
    gamma_minus: float


@dataclass(frozen=True)
class LocusCurve:
    label: CurveLabel
    parameter_name: str
    samples: tuple


@dataclass(frozen=True)
class BoundaryPiece:
    label: str
    points: tuple


def _grid(lo: float, hi: float, n: int) -> list:
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    pts = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    pts[-1] = hi
    return pts


def available_curves(m: Material) -> list:
    labels = [CurveLabel.RAREFACTION_OA, CurveLabel.SEGMENT_BC, CurveLabel.SEGMENT_CD]
    if m.h >= SQRT3:
        labels += [CurveLabel.SEGMENT_CE, CurveLabel.SEGMENT_EF]
    else:
        labels.append(CurveLabel.SEGMENT_CF)
    labels.append(CurveLabel.AXIS_BE_OR_BF)
    return labels


def cf_lower_phi(h: float) -> float:
    """phi at which the gamma+ = 0 segment meets the zero-speed curve."""
    return 0.5 * (h + math.sqrt(3.0 * (4.0 - h * h)))


def _eta_sample(m, label, eta, F_h):
    h = m.h
    root = math.sqrt(max(eta * eta - 1.0, 0.0))
    tail = F_h - f_antiderivative(eta)
    gp = min(max(gamma_of_eta(m, eta), 0.0), m.alpha)
    if label is CurveLabel.RAREFACTION_OA:
        return LocusSample(eta, root, tail, gp, gp)
    if label is CurveLabel.SEGMENT_BC:
        return LocusSample(eta, root, 3.0 * eta * root + tail, gp, 1.5 * (m.alpha + m.beta) - 2.0 * gp)
    if label is CurveLabel.SEGMENT_EF:
        s = math.sqrt(max(eta * eta / 3.0 - 1.0, 0.0))
        return LocusSample(eta, s, v_double_star_scaled(eta) + tail, gp, m.alpha + m.beta - gp)
    # zero-speed axis
    return LocusSample(eta, 0.0, tail, gp, zero_speed_strain(m, gp))


def _phi_sample(m, phi):
    s = pb_only_speed_scaled(m.h, phi)
    return LocusSample(phi, s, (phi + m.h) * s, 0.0, m.mid + m.half_gap * phi)


def curve(
    m: Material,
    label: CurveLabel,
    n: int = DEFAULT_SAMPLES,
    phi_max: Optional[float] = None,
) -> LocusCurve:
    """Sample one labeled locus curve at n parameter values, endpoints included."""
    if label not in available_curves(m):
        raise UnavailableCurveError(
            f"curve {label.value} does not exist for h={m.h:.6g}"
        )
    h = m.h
    if label in (CurveLabel.SEGMENT_CD, CurveLabel.SEGMENT_CE, CurveLabel.SEGMENT_CF):
        if label is CurveLabel.SEGMENT_CD:
            lo, hi = 2.0 * h, (4.0 * h if phi_max is None else phi_max)
        elif label is CurveLabel.SEGMENT_CE:
            lo, hi = h, 2.0 * h
        else:
            lo, hi = cf_lower_phi(h), 2.0 * h
        samples = tuple(_phi_sample(m, p) for p in _grid(lo, hi, n))
        return LocusCurve(label, "phi", samples)
    if label is CurveLabel.SEGMENT_EF:
        lo, hi = SQRT3, h
    elif label is CurveLabel.AXIS_BE_OR_BF:
        lo, hi = 1.0, (SQRT3 if h >= SQRT3 else h)
    else:
        lo, hi = 1.0, h
    F_h = f_antiderivative(h)
    samples = tuple(_eta_sample(m, label, e, F_h) for e in _grid(lo, hi, n))
    return LocusCurve(label, "eta", samples)


def all_curves(m: Material, n: int = DEFAULT_SAMPLES, phi_max: Optional[float] = None) -> list:
    return [curve(m, label, n, phi_max) for label in available_curves(m)]


def region_vertices(m: Material) -> dict:
    """Corner points of the admissible (gamma+, gamma-) region."""
    s = m.alpha + m.beta
    verts = {
        "B": (m.alpha, zero_speed_strain(m, m.alpha)),
        "C": (0.0, 1.5 * s),
    }
    case = classify_material(m)
    if case is MaterialCase.C:
        verts["F"] = (0.0, zero_speed_strain(m, 0.0))
    else:
        verts["E"] = (0.0, s)
        if case is not MaterialCase.B:
            r = SQRT3 * (m.beta - m.alpha)
            verts["F"] = (0.5 * (s - r), 0.5 * (s + r))
    return verts


def region_boundary(m: Material, n: int = DEFAULT_SAMPLES) -> list:
    """Boundary polylines of the admissible (gamma+, gamma-) region.

    Straight pieces are emitted as their two end points; the zero-speed
    curve gamma- = g(gamma+) is sampled at n points.
    """
    v = region_vertices(m)
    B, C = v["B"], v["C"]
    pieces = [BoundaryPiece("BC", (B, C))]
    if "E" in v:
        pieces.append(BoundaryPiece("CE", (C, v["E"])))
        if "F" in v:
            pieces.append(BoundaryPiece("EF", (v["E"], v["F"])))
            end_label, end = "F", v["F"]
        else:
            end_label, end = "E", v["E"]
    else:
        pieces.append(BoundaryPiece("CF", (C, v["F"])))
        end_label, end = "F", v["F"]
    g_pts = []
    for gp in _grid(end[0], m.alpha, n):
        g = zero_speed_strain(m, gp)
        g_pts.append((gp, g if g is not None else end[1]))
    g_pts[0], g_pts[-1] = end, B
    pieces.append(BoundaryPiece(end_label + "B", tuple(g_pts)))
    return pieces
