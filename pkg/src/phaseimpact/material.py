"""Cubic stress-response bar material.

The stress is

    sigma(g) = E * (g**3/3 - (alpha+beta)*g**2/2 + alpha*beta*g)

which rises on the alpha-branch [0, alpha], falls on the spinodal
(alpha, beta) and rises again on the beta-branch [beta, inf).  Many
formulas are simpler in the dimensionless coordinate

    eta = (alpha + beta - 2*g) / (beta - alpha)

in which eta(alpha) = 1, eta(0) = h and c(g) = c2*sqrt(eta**2 - 1) on
the alpha-branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, MaterialError, SpinodalError
from .numerics import f_antiderivative


@dataclass(frozen=True)
class Material:
    """Constitutive parameters and the wave-speed constants derived from them.

    ``c0`` is the small-amplitude sound speed, ``c1`` and ``c2`` are the
    velocity and speed scales of the dimensionless loci and ``h`` is the
    ratio (beta+alpha)/(beta-alpha).
    """

    young_modulus: float
    density: float
    alpha: float
    beta: float
    c0: float = field(init=False)
    c1: float = field(init=False)
    c2: float = field(init=False)
    h: float = field(init=False)

    def __post_init__(self):
        E, rho, a, b = self.young_modulus, self.density, self.alpha, self.beta
        for name, value in (("young", E), ("density", rho), ("alpha", a), ("beta", b)):
            if not math.isfinite(value):
                raise MaterialError(f"{name} must be finite, got {value!r}")
        if not (0.0 < a < b):
            raise MaterialError(
                f"material requires 0<alpha<beta, got alpha={a!r}, beta={b!r}"
            )
        if not (E > 0.0 and rho > 0.0):
            raise MaterialError(
                f"material requires E>0 and rho>0, got E={E!r}, rho={rho!r}"
            )
        c0 = math.sqrt(E * a * b / rho)
        c1 = (b - a) ** 2 / (4.0 * math.sqrt(a * b)) * c0
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", 2.0 * c1 / (b - a))
        object.__setattr__(self, "h", (b + a) / (b - a))

    @classmethod
    def dimensionless(cls, alpha: float, beta: float) -> "Material":
        """Material with E = rho = 1."""
        return cls(1.0, 1.0, alpha, beta)

    @property
    def mid(self) -> float:
        """Inflection strain (alpha+beta)/2."""
        return 0.5 * (self.alpha + self.beta)

    @property
    def half_gap(self) -> float:
        """(beta-alpha)/2, the strain unit of the eta coordinate."""
        return 0.5 * (self.beta - self.alpha)


@dataclass(frozen=True)
class BarState:
    strain: float
    velocity: float

    def __post_init__(self):
        if not self.strain > -1.0:
            raise DomainError(f"strain must exceed -1, got {self.strain!r}")


def stress(m: Material, gamma: float) -> float:
    if not gamma > -1.0:
        raise DomainError(f"stress requires gamma > -1, got {gamma!r}")
    g = gamma
    return m.young_modulus * (
        g * g * g / 3.0 - 0.5 * (m.alpha + m.beta) * g * g + m.alpha * m.beta * g
    )


def stress_derivative(m: Material, gamma: float) -> float:
    g = gamma
    return m.young_modulus * (g - m.alpha) * (g - m.beta)


def chord_slope(m: Material, g1: float, g2: float) -> float:
    """(sigma(g1) - sigma(g2)) / (g1 - g2), without the division.

    Reduces to sigma'(g1) when g1 == g2.
    """
    return m.young_modulus * (
        (g1 * g1 + g1 * g2 + g2 * g2) / 3.0
        - 0.5 * (m.alpha + m.beta) * (g1 + g2)
        + m.alpha * m.beta
    )


def chord_slope_exact(m: Material, g1: float, g2: float) -> Fraction:
    """:func:`chord_slope` in rational arithmetic on the given doubles.

    Near a stationary boundary the chord is a tiny difference of O(E*g^2)
    terms, so the float version cannot resolve it to a relative accuracy.
    """
    E, a, b = Fraction(m.young_modulus), Fraction(m.alpha), Fraction(m.beta)
    x, y = Fraction(g1), Fraction(g2)
    return E * ((x * x + x * y + y * y) / 3 - (a + b) * (x + y) / 2 + a * b)


def wave_speed(m: Material, gamma: float) -> float:
    """Sound speed sqrt(sigma'(gamma)/rho) on the two stable branches."""
    if gamma < 0.0:
        raise DomainError(f"wave_speed requires gamma >= 0, got {gamma!r}")
    if m.alpha < gamma < m.beta:
        raise SpinodalError(
            f"gamma={gamma!r} lies in the spinodal interval ({m.alpha!r}, {m.beta!r})"
        )
    prod = (gamma - m.alpha) * (gamma - m.beta)
    return m.c0 * math.sqrt(prod / (m.alpha * m.beta)) if prod > 0.0 else 0.0


def eta_of_gamma(m: Material, gamma: float) -> float:
    return (m.alpha + m.beta - 2.0 * gamma) / (m.beta - m.alpha)


def gamma_of_eta(m: Material, eta: float) -> float:
    return m.mid - m.half_gap * eta


def integral_c(m: Material, gamma_lo: float, gamma_hi: float) -> float:
    """Integral of the sound speed over [gamma_lo, gamma_hi] on the alpha-branch.

    Evaluated in closed form as c1*(F(eta(lo)) - F(eta(hi))).
    """
    if not (0.0 <= gamma_lo <= gamma_hi <= m.alpha):
        raise DomainError(
            f"integral_c requires 0 <= lo <= hi <= alpha, "
            f"got [{gamma_lo!r}, {gamma_hi!r}] with alpha={m.alpha!r}"
        )
    if gamma_lo == gamma_hi:
        return 0.0
    # clamp: eta_of_gamma(alpha) can round to 1 - ulp
    eta_lo = max(eta_of_gamma(m, gamma_lo), 1.0)
    eta_hi = max(eta_of_gamma(m, gamma_hi), 1.0)
    return m.c1 * (f_antiderivative(eta_lo) - f_antiderivative(eta_hi))
