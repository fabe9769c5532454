"""Thermodynamic and admissibility checks for a moving strain discontinuity."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from fractions import Fraction

from .material import Material, chord_slope_exact, stress, wave_speed
from .riemann import Discontinuity

SONIC_TOL = 1e-9
FLAG_TOL = 1e-9


class Sonic(enum.Enum):
    SUBSONIC = "subsonic"
    SONIC = "sonic"
    SUPERSONIC = "supersonic"


@dataclass(frozen=True)
class JumpResiduals:
    mass: float
    momentum: float
    mass_normalized: float
    momentum_normalized: float


@dataclass(frozen=True)
class AdmissibilityReport:
    dissipation_sign_ok: bool
    trailing_ok: bool
    speed_real_ok: bool
    speed_real_vacuous: bool
    driving_force: float
    dissipation_rate: float
    sonic_front: Sonic
    sonic_back: Sonic

    @property
    def ok(self) -> bool:
        return self.dissipation_sign_ok and self.trailing_ok and self.speed_real_ok


def driving_force(m: Material, d: Discontinuity) -> float:
    gp, gm = d.gamma_front, d.gamma_back
    return m.young_modulus / 12.0 * (gp - gm) ** 3 * ((m.alpha + m.beta) - (gp + gm))


def dissipation_rate(m: Material, d: Discontinuity) -> float:
    return driving_force(m, d) * d.speed


def normalized_driving_force(m: Material, d: Discontinuity) -> float:
    """f / (E*((beta-alpha)/2)^4), comparable across materials."""
    return driving_force(m, d) / (m.young_modulus * m.half_gap**4)


def zero_speed_strain(m: Material, gamma_plus: float) -> Optional[float]:
    """Back strain g(gamma+) at which the chord through gamma+ is horizontal.

    Returns None where the radicand is negative (no such strain).
    """
    s = m.alpha + m.beta
    radicand = 3.0 * (0.5 * (3.0 * m.beta - m.alpha) - gamma_plus) * (
        0.5 * (m.beta - 3.0 * m.alpha) + gamma_plus
    )
    if radicand < 0.0:
        return None
    return 0.5 * s + 0.5 * (0.5 * s - gamma_plus + math.sqrt(radicand))


def sonic_character(m: Material, s_dot: float, gamma: float) -> Sonic:
    c = wave_speed(m, gamma)
    if abs(s_dot - c) <= SONIC_TOL * m.c0:
        return Sonic.SONIC
    return Sonic.SUBSONIC if s_dot < c else Sonic.SUPERSONIC


def admissibility(m: Material, d: Discontinuity, xi1: float) -> AdmissibilityReport:
    """Admissibility of a phase boundary trailing a fan whose tail moves at xi1.

    Checks nonnegative dissipation (gamma+ + gamma- >= alpha+beta), that the
    boundary does not overtake the fan (2*gamma+ + gamma- <= 3*(alpha+beta)/2
    and s_dot <= xi1), and that the chord speed is real (gamma- >= g(gamma+)).
    """
    s = m.alpha + m.beta
    gp, gm = d.gamma_front, d.gamma_back
    tol = FLAG_TOL * s
    dissipation_ok = gp + gm >= s - tol
    trailing_ok = 2.0 * gp + gm <= 1.5 * s + tol and d.speed <= xi1 + SONIC_TOL * m.c0
    g = zero_speed_strain(m, gp)
    speed_real_ok = True if g is None else gm >= g - tol
    f = driving_force(m, d)
    return AdmissibilityReport(
        dissipation_sign_ok=dissipation_ok,
        trailing_ok=trailing_ok,
        speed_real_ok=speed_real_ok,
        speed_real_vacuous=g is None,
        driving_force=f,
        dissipation_rate=f * d.speed,
        sonic_front=sonic_character(m, d.speed, gp),
        sonic_back=sonic_character(m, d.speed, gm),
    )


def md_kinetic_driving_force(m: Material, s_dot: float) -> float:
    """Driving force demanded by maximal dissipation at boundary speed s_dot."""
    return 2.25 * m.young_modulus * m.half_gap**4 * (1.0 + (s_dot / m.c2) ** 2) ** 2


def kinetic_relation_md_residual(m: Material, d: Discontinuity) -> float:
    return driving_force(m, d) - md_kinetic_driving_force(m, d.speed)


def chord_identity_error(m: Material, d: Discontinuity) -> float:
    """|rho*s^2 - chord| / max(rho*s^2, |chord|), computed exactly.

    Zero for a zero-strength jump with zero speed.
    """
    if d.gamma_front == d.gamma_back:
        return 0.0
    lhs = Fraction(m.density) * Fraction(d.speed) ** 2
    rhs = chord_slope_exact(m, d.gamma_front, d.gamma_back)
    scale = max(abs(lhs), abs(rhs))
    return float(abs(lhs - rhs) / scale) if scale else 0.0


def strain_rounding_bound(m: Material, g1: float, g2: float, ulps: float = 4.0) -> float:
    """Change in the chord slope of (g1, g2) from ``ulps`` roundings of its inputs.

    A stored solution cannot satisfy a chord relation more closely than
    this; it dominates the relative error once the chord nears zero.
    """
    s = m.alpha + m.beta
    d1 = abs((2.0 * g1 + g2) / 3.0 - 0.5 * s)
    d2 = abs((g1 + 2.0 * g2) / 3.0 - 0.5 * s)
    ds = 0.5 * abs(g1 + g2)
    return ulps * m.young_modulus * (
        d1 * math.ulp(g1) + d2 * math.ulp(g2) + ds * math.ulp(s)
    )


def jump_residuals(m: Material, d: Discontinuity) -> JumpResiduals:
    """Residuals of the mass and momentum jump conditions across d.

    Normalized by c0*max|strain| and rho*c0^2*max|strain| respectively.
    """
    dg = d.gamma_front - d.gamma_back
    dv = d.v_front - d.v_back
    r1 = d.speed * dg + dv
    r2 = d.speed * m.density * dv + (stress(m, d.gamma_front) - stress(m, d.gamma_back))
    scale = max(abs(d.gamma_front), abs(d.gamma_back)) or 1.0
    return JumpResiduals(
        r1,
        r2,
        r1 / (m.c0 * scale),
        r2 / (m.density * m.c0**2 * scale),
    )
