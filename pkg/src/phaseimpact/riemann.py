"""Self-similar solutions of the impact problem for the cubic bar.

The bar occupies x >= 0, starts undisturbed and has its end pulled with
velocity -V for t > 0.  Every solution depends on xi = x/t only and is a
left-to-right sequence of constant states separated by waves (jumps or
centered fans).  The construction depends on the loading regime:

* weak (V <= V*): one centered rarefaction fan;
* strong (V >= V***): one shock;
* intermediate: a phase boundary trailing a fan, closed by a kinetic
  relation.  Dissipation-free kinetics fixes gamma+ + gamma- = alpha+beta
  and, past V**, degenerates to a lone phase boundary with gamma+ = 0.
  Maximally dissipative kinetics makes the boundary sonic in front,
  s_dot = c(gamma+), which forces 2*gamma+ + gamma- = 3*(alpha+beta)/2.

The intermediate constructions are solved in a dimensionless coordinate
(eta, phi, or q = sqrt(eta^2 - 1) for the sonic boundary), where each
bracket is an O(1) interval with known endpoint velocities.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, KineticsError, RegimeError
from .material import (
    BarState,
    Material,
    chord_slope_exact,
    gamma_of_eta,
    integral_c,
    stress,
    wave_speed,
)
from .numerics import DEFAULT_ROOT_CONFIG, RootConfig, f_antiderivative, find_root
from .regimes import (
    SQRT3,
    Kinetics,
    Loading,
    LoadingRegime,
    MaterialCase,
    Thresholds,
    classify_loading,
    classify_material,
    select_kinetics,
    thresholds,
    v_double_star_scaled,
)

# Endpoint residuals below this fraction of V are treated as exact roots.
_ENDPOINT_TOL = 1e-13
# How far a chord-consistent speed may sit from the solved one, over c0.
_SPEED_MATCH_TOL = 3e-11
# Brent to full double precision in the parameter, including near zero.
_FULL_PRECISION = RootConfig(abs_tol=1e-300, rel_tol=1e-16)


class WaveKind(enum.Enum):
    SHOCK = "shock"
    DEGENERATE_SHOCK = "degenerate-shock"
    PHASE_BOUNDARY = "phase-boundary"


@dataclass(frozen=True)
class FanRegion:
    """Centered rarefaction occupying xi_lo <= x/t <= xi_hi."""

    xi_lo: float
    xi_hi: float
    back_strain: float
    front_strain: float

    @property
    def speed(self) -> float:
        return self.xi_lo


@dataclass(frozen=True)
class Discontinuity:
    """Jump moving at x = speed*t; 'front' is the side ahead of it (larger x)."""

    speed: float
    gamma_front: float
    gamma_back: float
    v_front: float
    v_back: float
    kind: WaveKind


Wave = Union[Discontinuity, FanRegion]


@dataclass(frozen=True)
class WaveSolution:
    """An impact solution as alternating states and waves.

    ``states[i]`` lies left of ``waves[i]`` and ``states[i+1]`` right of it,
    so ``states[0]`` is the plate-adjacent state and ``states[-1]`` the
    undisturbed bar.
    """

    material: Material
    impact_velocity: float
    kinetics: Kinetics
    loading: Loading
    thresholds: Thresholds
    states: tuple
    waves: tuple
    nonstandard_selection: bool = False

    @property
    def regime(self) -> LoadingRegime:
        return self.loading.regime

    @property
    def pattern(self) -> list:
        out = [self.states[0]]
        for wave, state in zip(self.waves, self.states[1:]):
            out.extend((wave, state))
        return out

    @property
    def discontinuity(self) -> Optional[Discontinuity]:
        for w in self.waves:
            if isinstance(w, Discontinuity):
                return w
        return None

    @property
    def fan(self) -> Optional[FanRegion]:
        for w in self.waves:
            if isinstance(w, FanRegion):
                return w
        return None


def _root_in_bracket(residual, lo, hi, scale, cfg=DEFAULT_ROOT_CONFIG):
    r_lo, r_hi = residual(lo), residual(hi)
    if (r_lo > 0) == (r_hi > 0):
        # roundoff at an exact endpoint root
        tol = _ENDPOINT_TOL * scale
        if abs(r_lo) <= tol and abs(r_lo) <= abs(r_hi):
            return lo
        if abs(r_hi) <= tol:
            return hi
    return find_root(residual, lo, hi, cfg)


def _strain_from_eta(m: Material, eta: float) -> float:
    return min(max(gamma_of_eta(m, eta), 0.0), m.alpha)


def _fan(m: Material, gamma_back: float, xi_lo: Optional[float] = None) -> FanRegion:
    if xi_lo is None:
        xi_lo = wave_speed(m, gamma_back)
    return FanRegion(xi_lo, m.c0, gamma_back, 0.0)


def _consistent_speed(m: Material, g_front: float, g_back: float, s_dot: float) -> float:
    """Speed of a jump between two stored strains, kept consistent with them.

    Rounding the strains to doubles moves their chord slope by about
    E*eps*g, which is large relative to rho*s^2 for a slow boundary.  The
    speed whose square matches the exact chord of the stored pair is used
    when it agrees with the accurately computed ``s_dot``; otherwise (a
    boundary slower than about 1e-4*c0) ``s_dot`` is kept.
    """
    q = chord_slope_exact(m, g_front, g_back) / Fraction(m.density)
    if q > 0:
        chord_speed = math.sqrt(float(q))
        if abs(chord_speed - s_dot) <= _SPEED_MATCH_TOL * m.c0:
            return chord_speed
    return s_dot


def _solution(m, v, kinetics, loading, th, states, waves, nonstandard=False):
    return WaveSolution(
        m, v, kinetics, loading, th, tuple(states), tuple(waves), nonstandard
    )


def solve_weak(m: Material, v: float, kinetics: Kinetics = Kinetics.AUTO) -> WaveSolution:
    """Single centered rarefaction fan for 0 < V <= V*."""
    th = thresholds(m)
    if not 0.0 < v <= th.v_star:
        raise RegimeError(f"weak solution needs 0 < V <= V*={th.v_star!r}, got {v!r}")
    F_h = f_antiderivative(m.h)
    eta1 = _root_in_bracket(
        lambda e: m.c1 * (F_h - f_antiderivative(e)) - v, 1.0, m.h, v
    )
    g1 = _strain_from_eta(m, eta1)
    states = [BarState(g1, -v), BarState(0.0, 0.0)]
    return _solution(m, v, kinetics, Loading(LoadingRegime.WEAK), th, states, [_fan(m, g1)])


def _strong_residual(m: Material, v: float):
    root_ab = math.sqrt(m.alpha * m.beta)
    s = m.alpha + m.beta

    def r(g):
        return g * m.c0 * math.sqrt(g * g / 3.0 - 0.5 * s * g + m.alpha * m.beta) / root_ab - v

    return r


def solve_strong(m: Material, v: float, kinetics: Kinetics = Kinetics.AUTO) -> WaveSolution:
    """Single shock for V >= V***; degenerate (s_dot = c0) at V = V***."""
    th = thresholds(m)
    loading = classify_loading(m, v, th)
    if loading.regime is not LoadingRegime.STRONG:
        raise RegimeError(f"strong solution needs V >= V***={th.v_triple_star!r}, got {v!r}")
    g_deg = 1.5 * (m.alpha + m.beta)
    if loading.degenerate:
        g_minus = g_deg
        kind = WaveKind.DEGENERATE_SHOCK
    else:
        r = _strong_residual(m, v)
        hi = 2.0 * g_deg
        while r(hi) < 0.0:
            hi *= 2.0
        g_minus = find_root(r, g_deg, hi)
        kind = WaveKind.SHOCK
    s_dot = v / g_minus
    shock = Discontinuity(s_dot, 0.0, g_minus, 0.0, -v, kind)
    states = [BarState(g_minus, -v), BarState(0.0, 0.0)]
    return _solution(m, v, kinetics, loading, th, states, [shock])


def _out_of_range(v, lo, hi, what):
    return RegimeError(f"{what} needs V in {lo!r}..{hi!r}, got {v!r}")


def solve_intermediate_md(
    m: Material, v: float, kinetics: Kinetics = Kinetics.MAXIMALLY_DISSIPATIVE
) -> WaveSolution:
    """Sonic phase boundary flush against the tail of the fan, V* < V < V***.

    Solves 3*eta*sqrt(eta^2-1) + F(h) - F(eta) = V/c1 for eta in [1, h],
    posed in q = sqrt(eta^2 - 1) = s_dot/c2, which stays well conditioned as
    the boundary slows to rest at V = V*.
    """
    th = thresholds(m)
    if not th.v_star < v < th.v_triple_star:
        raise _out_of_range(v, th.v_star, th.v_triple_star, "maximally dissipative solution")
    F_h = f_antiderivative(m.h)

    def eta_minus_one(q):
        return q * q / (1.0 + math.sqrt(1.0 + q * q))

    def residual(q):
        t = eta_minus_one(q)
        return m.c1 * (3.0 * (1.0 + t) * q + F_h - f_antiderivative(1.0 + t)) - v

    q = _root_in_bracket(residual, 0.0, math.sqrt(m.h * m.h - 1.0), v, _FULL_PRECISION)
    g_plus = min(max(m.alpha - m.half_gap * eta_minus_one(q), 0.0), m.alpha)
    g_minus = 1.5 * (m.alpha + m.beta) - 2.0 * g_plus
    s_dot = _consistent_speed(m, g_plus, g_minus, m.c2 * q)
    v_plus = 0.0 - integral_c(m, 0.0, g_plus)  # no signed zero at gamma+ = 0
    pb = Discontinuity(s_dot, g_plus, g_minus, v_plus, -v, WaveKind.PHASE_BOUNDARY)
    states = [BarState(g_minus, -v), BarState(g_plus, v_plus), BarState(0.0, 0.0)]
    waves = [pb, _fan(m, g_plus, s_dot)]
    return _solution(m, v, kinetics, Loading(LoadingRegime.INTERMEDIATE), th, states, waves)


def solve_intermediate_df(
    m: Material, v: float, kinetics: Kinetics = Kinetics.DISSIPATION_FREE
) -> WaveSolution:
    """Dissipation-free phase boundary behind a fan, V* < V <= V**.

    Solves 2*eta*sqrt(eta^2/3-1) + F(h) - F(eta) = V/c1 for eta in
    [sqrt(3), h]; the boundary then has gamma+ + gamma- = alpha + beta.
    """
    if m.h <= SQRT3:
        raise KineticsError(f"dissipation-free branch is empty for h={m.h:.6g} <= sqrt(3)")
    th = thresholds(m)
    if not th.v_star < v <= th.v_double_star:
        raise _out_of_range(v, th.v_star, th.v_double_star, "dissipation-free solution")
    F_h = f_antiderivative(m.h)

    def residual(e):
        return m.c1 * (v_double_star_scaled(e) + F_h - f_antiderivative(e)) - v

    eta = _root_in_bracket(residual, SQRT3, m.h, v)
    s = m.alpha + m.beta
    g_minus = s - _strain_from_eta(m, eta)
    # exact subtraction (g_minus lies in [s/2, s]), so g_plus + g_minus == s
    g_plus = s - g_minus
    s_dot = _consistent_speed(m, g_plus, g_minus, m.c2 * math.sqrt(max(eta * eta / 3.0 - 1.0, 0.0)))
    v_plus = 0.0 - integral_c(m, 0.0, g_plus)  # no signed zero at gamma+ = 0
    pb = Discontinuity(s_dot, g_plus, g_minus, v_plus, -v, WaveKind.PHASE_BOUNDARY)
    states = [BarState(g_minus, -v), BarState(g_plus, v_plus), BarState(0.0, 0.0)]
    waves = [pb, _fan(m, g_plus)]
    return _solution(m, v, kinetics, Loading(LoadingRegime.INTERMEDIATE), th, states, waves)


def pb_only_speed_scaled(h: float, phi: float) -> float:
    """s_dot/c2 on the gamma+ = 0 segment, phi = (2*gamma- - alpha - beta)/(beta - alpha)."""
    return math.sqrt(max((phi * phi - h * phi + h * h) / 3.0 - 1.0, 0.0))


def solve_phase_boundary_only(
    m: Material, v: float, kinetics: Kinetics = Kinetics.DISSIPATION_FREE
) -> WaveSolution:
    """Lone phase boundary with undisturbed front state, V** <= V <= V***."""
    if m.h < SQRT3:
        raise KineticsError(f"phase-boundary-only branch needs h >= sqrt(3), got h={m.h:.6g}")
    th = thresholds(m)
    if not th.v_double_star <= v <= th.v_triple_star:
        raise _out_of_range(v, th.v_double_star, th.v_triple_star, "phase-boundary-only solution")
    h = m.h

    def residual(phi):
        return m.c1 * (phi + h) * pb_only_speed_scaled(h, phi) - v

    phi = _root_in_bracket(residual, h, 2.0 * h, v)
    g_minus = m.mid + m.half_gap * phi
    s_dot = _consistent_speed(m, 0.0, g_minus, v / g_minus)
    pb = Discontinuity(s_dot, 0.0, g_minus, 0.0, -v, WaveKind.PHASE_BOUNDARY)
    states = [BarState(g_minus, -v), BarState(0.0, 0.0)]
    return _solution(m, v, kinetics, Loading(LoadingRegime.INTERMEDIATE), th, states, [pb])


def solve(m: Material, v_impact: float, kinetics: Kinetics = Kinetics.AUTO) -> WaveSolution:
    """Solution of the impact problem for any positive impact velocity."""
    th = thresholds(m)
    loading = classify_loading(m, v_impact, th)
    resolved = select_kinetics(m, kinetics)
    if loading.regime is LoadingRegime.WEAK:
        return solve_weak(m, v_impact, resolved)
    if loading.regime is LoadingRegime.STRONG:
        return solve_strong(m, v_impact, resolved)
    if resolved is Kinetics.MAXIMALLY_DISSIPATIVE:
        return solve_intermediate_md(m, v_impact, resolved)
    nonstandard = classify_material(m) is not MaterialCase.A1
    if th.v_double_star is not None and v_impact <= th.v_double_star:
        sol = solve_intermediate_df(m, v_impact, resolved)
    else:
        sol = solve_phase_boundary_only(m, v_impact, resolved)
    if nonstandard:
        sol = dataclasses.replace(sol, nonstandard_selection=True)
    return sol


def fan_state(m: Material, xi: float) -> tuple:
    """(strain, velocity) inside a centered fan at xi = x/t in [0, c0]."""
    eta = min(math.sqrt(1.0 + (xi / m.c2) ** 2), m.h)
    gamma = m.mid - math.sqrt(m.half_gap**2 + m.alpha * m.beta * xi * xi / m.c0**2)
    velocity = -m.c1 * (f_antiderivative(m.h) - f_antiderivative(eta))
    return gamma, velocity


def _state_at(sol: WaveSolution, xi: float, from_left: bool = False) -> tuple:
    for i, wave in enumerate(sol.waves):
        edge = wave.speed
        if xi < edge or (from_left and xi == edge):
            s = sol.states[i]
            return s.strain, s.velocity
        if isinstance(wave, FanRegion) and xi <= wave.xi_hi:
            return fan_state(sol.material, xi)
    s = sol.states[-1]
    return s.strain, s.velocity


def evaluate(sol: WaveSolution, xi: float) -> tuple:
    """(strain, velocity, stress) at xi = x/t; jumps take the front value."""
    if xi < 0.0:
        raise DomainError(f"xi must be nonnegative, got {xi!r}")
    gamma, velocity = _state_at(sol, xi)
    return gamma, velocity, stress(sol.material, gamma)


def wave_edges(sol: WaveSolution) -> list:
    """Distinct speeds of every jump and fan edge, ascending."""
    edges = set()
    for w in sol.waves:
        if isinstance(w, FanRegion):
            edges.update((w.xi_lo, w.xi_hi))
        else:
            edges.add(w.speed)
    return sorted(edges)


def profile(sol: WaveSolution, t: float, x_max: float, n: int) -> list:
    """Rows (x, strain, velocity, stress) at time t on [0, x_max].

    Each wave edge inside the window contributes two rows at the same x,
    the left limit then the right limit, so jumps render as vertical steps.
    """
    if not t > 0.0:
        raise DomainError(f"time must be positive, got {t!r}")
    if not x_max > 0.0:
        raise DomainError(f"x_max must be positive, got {x_max!r}")
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n!r}")
    # (x, side): side 0 is a left limit, 1 the ordinary (front) value
    points = {(x_max * i / (n - 1), 1) for i in range(n)}
    for edge in wave_edges(sol):
        x = edge * t
        if 0.0 <= x <= x_max:
            points.add((x, 0))
            points.add((x, 1))
    rows = []
    for x, side in sorted(points):
        xi = x / t
        for w in sol.waves:
            # x/t need not round back to the wave speed
            if x == w.speed * t:
                xi = w.speed
            elif isinstance(w, FanRegion) and x == w.xi_hi * t:
                xi = w.xi_hi
        gamma, velocity = _state_at(sol, xi, from_left=(side == 0))
        rows.append((x, gamma, velocity, stress(sol.material, gamma)))
    return rows
