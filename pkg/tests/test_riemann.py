import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaseimpact.errors import DomainError, KineticsError, RegimeError
from phaseimpact.material import Material, integral_c, stress, wave_speed
from phaseimpact.numerics import f_antiderivative
from phaseimpact.regimes import SQRT3, Kinetics, LoadingRegime, h_star, thresholds, v_double_star_scaled
from phaseimpact.riemann import (
    Discontinuity,
    FanRegion,
    WaveKind,
    evaluate,
    fan_state,
    pb_only_speed_scaled,
    profile,
    solve,
    solve_intermediate_df,
    solve_intermediate_md,
    solve_phase_boundary_only,
    solve_strong,
    solve_weak,
    wave_edges,
)

MD, DF = Kinetics.MAXIMALLY_DISSIPATIVE, Kinetics.DISSIPATION_FREE

# mpmath bisection oracle values (40 digits, rounded to double)
DF13_V2 = dict(eta=1.9263987471083344, gp=0.0736012528916656383, gm=3.9263987471083344,
               s=0.486830611493210701, c=1.64651514808111024)
MD15_V10 = dict(eta=1.17988373860988894, gp=0.640232522780222118, gm=7.71953495443955576,
                s=1.25239871708022558, c_back=4.27481112871396690)
STRONG13_G7_V = 16.1658075373095214


def random_material(rng):
    a = rng.uniform(0.1, 5)
    return Material(rng.uniform(0.1, 10), rng.uniform(0.1, 10), a, a * rng.uniform(1.01, 20))


def check_shape(sol):
    speeds = []
    for w in sol.waves:
        speeds += [w.xi_lo, w.xi_hi] if isinstance(w, FanRegion) else [w.speed]
    assert speeds == sorted(speeds)
    assert sol.states[0].velocity == -sol.impact_velocity
    assert sol.states[-1].strain == 0.0 and sol.states[-1].velocity == 0.0
    assert len(sol.states) == len(sol.waves) + 1


# -- weak ---------------------------------------------------------------

def test_weak_at_v_star(m13):
    sol = solve_weak(m13, thresholds(m13).v_star)
    assert sol.states[0].strain == pytest.approx(1.0, abs=1e-12)
    assert sol.fan.xi_lo == pytest.approx(0.0, abs=1e-6)
    check_shape(sol)


def test_weak_interior_example(m13):
    sol = solve_weak(m13, 0.80715187142969293)
    assert sol.states[0].strain == pytest.approx(2 - math.sqrt(2), rel=1e-12)
    assert sol.fan.xi_lo == pytest.approx(1.0, rel=1e-12)


def test_weak_small_impact(m13):
    sol = solve_weak(m13, 1e-9)
    assert sol.states[0].strain < 1e-9
    assert sol.fan.xi_lo == pytest.approx(m13.c0, rel=1e-8)


def test_weak_out_of_range(m13):
    with pytest.raises(RegimeError):
        solve_weak(m13, 1.1)


def test_solve_dispatches_weak(m13):
    sol = solve(m13, 0.5)
    assert sol.regime is LoadingRegime.WEAK
    assert [type(p).__name__ for p in sol.pattern] == ["BarState", "FanRegion", "BarState"]


# -- strong -------------------------------------------------------------

def test_strong_degenerate(m13):
    sol = solve_strong(m13, 6 * SQRT3)
    d = sol.discontinuity
    assert d.kind is WaveKind.DEGENERATE_SHOCK
    assert d.gamma_back == 6.0
    assert d.speed == pytest.approx(SQRT3, rel=1e-14)


def test_strong_example(m13):
    sol = solve_strong(m13, STRONG13_G7_V)
    d = sol.discontinuity
    assert d.gamma_back == pytest.approx(7.0, rel=1e-13)
    assert d.speed == pytest.approx(2.30940107675850306, rel=1e-13)
    assert m13.c0 < d.speed < wave_speed(m13, d.gamma_back)
    check_shape(sol)


def test_strong_equivalent_form(m13):
    for v in (10.5, 20.0, 500.0, 1e6):
        g = solve_strong(m13, v).discontinuity.gamma_back
        assert m13.density * v * v == pytest.approx(g * stress(m13, g), rel=1e-12)


def test_strong_out_of_range(m13):
    with pytest.raises(RegimeError):
        solve_strong(m13, 10.0)


# -- maximally dissipative ----------------------------------------------

def test_md_example(m15):
    sol = solve(m15, 10.0)
    assert sol.kinetics is MD
    d = sol.discontinuity
    assert d.gamma_front == pytest.approx(MD15_V10["gp"], rel=1e-12)
    assert d.gamma_back == pytest.approx(MD15_V10["gm"], rel=1e-12)
    assert d.speed == pytest.approx(MD15_V10["s"], rel=1e-12)
    assert d.speed == pytest.approx(wave_speed(m15, d.gamma_front), rel=1e-12)
    assert wave_speed(m15, d.gamma_back) == pytest.approx(MD15_V10["c_back"], rel=1e-12)
    assert 2 * d.gamma_front + d.gamma_back == pytest.approx(9.0, abs=1e-12)
    assert sol.fan.xi_lo == d.speed
    assert d.v_front == pytest.approx(-integral_c(m15, 0.0, d.gamma_front), rel=1e-15)
    assert [type(p).__name__ for p in sol.pattern] == [
        "BarState", "Discontinuity", "BarState", "FanRegion", "BarState"]
    check_shape(sol)


def test_md_limits(m13):
    th = thresholds(m13)
    top = solve_intermediate_md(m13, th.v_triple_star * (1 - 1e-12)).discontinuity
    assert top.gamma_back == pytest.approx(6.0, abs=1e-5)
    assert top.speed == pytest.approx(m13.c0, rel=1e-5)
    bottom = solve_intermediate_md(m13, th.v_star * (1 + 1e-12)).discontinuity
    assert bottom.gamma_front == pytest.approx(1.0, abs=1e-5)
    assert bottom.gamma_back == pytest.approx(4.0, abs=1e-5)
    assert bottom.speed < 1e-3


def test_md_out_of_range(m13):
    th = thresholds(m13)
    for v in (th.v_star, th.v_triple_star):
        with pytest.raises(RegimeError):
            solve_intermediate_md(m13, v)


# -- dissipation-free and phase-boundary only ---------------------------

def test_df_example(m13):
    sol = solve(m13, 2.0)
    assert sol.kinetics is DF and not sol.nonstandard_selection
    d = sol.discontinuity
    assert d.gamma_front == pytest.approx(DF13_V2["gp"], rel=1e-12)
    assert d.gamma_back == pytest.approx(DF13_V2["gm"], rel=1e-13)
    assert d.speed == pytest.approx(DF13_V2["s"], rel=1e-12)
    assert d.gamma_front + d.gamma_back == 4.0
    assert wave_speed(m13, d.gamma_front) == pytest.approx(DF13_V2["c"], rel=1e-12)
    assert wave_speed(m13, d.gamma_back) == pytest.approx(DF13_V2["c"], rel=1e-12)
    assert d.speed < wave_speed(m13, d.gamma_front)
    check_shape(sol)


def test_df_at_v_double_star_fan_vanishes(m13):
    v = thresholds(m13).v_double_star
    assert v == pytest.approx(4 / SQRT3, rel=1e-15)
    sol = solve_intermediate_df(m13, v)
    d = sol.discontinuity
    assert d.gamma_front == pytest.approx(0.0, abs=1e-12)
    assert d.gamma_back == pytest.approx(4.0, abs=1e-12)
    assert sol.fan.xi_lo == pytest.approx(m13.c0, rel=1e-12)


def test_df_matches_pb_only_at_v_double_star(m13):
    v = thresholds(m13).v_double_star
    a = solve_intermediate_df(m13, v).discontinuity
    b = solve_phase_boundary_only(m13, v).discontinuity
    for x, y in ((a.gamma_front, b.gamma_front), (a.gamma_back, b.gamma_back), (a.speed, b.speed)):
        assert x == pytest.approx(y, abs=1e-8)


def test_df_requires_h_above_sqrt3(m15):
    with pytest.raises(KineticsError):
        solve_intermediate_df(m15, 3.0)
    with pytest.raises(KineticsError):
        solve(m15, 3.0, DF)


def test_pb_only_endpoints(m13):
    low = solve_phase_boundary_only(m13, 4 / SQRT3).discontinuity
    assert low.gamma_back == pytest.approx(4.0, rel=1e-12)
    assert low.speed == pytest.approx(1 / SQRT3, rel=1e-12)
    high = solve_phase_boundary_only(m13, 6 * SQRT3).discontinuity
    assert high.gamma_back == pytest.approx(6.0, rel=1e-12)
    assert high.speed == pytest.approx(m13.c0, rel=1e-12)


def test_pb_only_interior(m13):
    for v in (3.0, 5.0, 9.0):
        sol = solve(m13, v, DF)
        d = sol.discontinuity
        assert len(sol.waves) == 1 and d.gamma_front == 0.0
        assert d.speed * d.gamma_back == pytest.approx(v, rel=1e-10)
        assert m13.density * d.speed**2 == pytest.approx(stress(m13, d.gamma_back) / d.gamma_back, rel=1e-10)
        assert 0 < d.speed <= m13.c0


def test_pb_only_scaled_speed_endpoints():
    h = 2.0
    assert pb_only_speed_scaled(h, h) == pytest.approx(math.sqrt(h * h / 3 - 1), rel=1e-15)
    assert pb_only_speed_scaled(h, 2 * h) == pytest.approx(math.sqrt(h * h - 1), rel=1e-15)


def test_nonstandard_selection_flag():
    hs = h_star()
    m = Material.dimensionless(1.0, 3.65)  # case A3
    assert m.h < hs
    auto = solve(m, 1.5)
    assert auto.kinetics is MD and not auto.nonstandard_selection
    forced = solve(m, 1.5, DF)
    assert forced.nonstandard_selection
    assert forced.discontinuity.gamma_front == 0.0


# -- invariants over many materials ------------------------------------

def _intermediate_velocities(th, k=7):
    return [th.v_star + (th.v_triple_star - th.v_star) * (i + 0.5) / k for i in range(k)]


def test_md_invariants_random():
    rng = random.Random(5)
    for _ in range(40):
        m = random_material(rng)
        th = thresholds(m)
        s = m.alpha + m.beta
        for v in _intermediate_velocities(th):
            sol = solve(m, v, MD)
            d = sol.discontinuity
            assert abs(d.speed - wave_speed(m, d.gamma_front)) / m.c0 < 1e-10
            assert d.speed < wave_speed(m, d.gamma_back)
            assert abs(2 * d.gamma_front + d.gamma_back - 1.5 * s) <= 1e-12 * s
            assert d.gamma_front + d.gamma_back > s
            check_shape(sol)


def test_df_invariants_random():
    rng = random.Random(6)
    hs = h_star()
    count = 0
    while count < 40:
        m = random_material(rng)
        if m.h <= hs:
            continue
        count += 1
        th = thresholds(m)
        s = m.alpha + m.beta
        for i in range(5):
            v = th.v_star + (th.v_double_star - th.v_star) * (i + 0.5) / 5
            sol = solve(m, v)
            d = sol.discontinuity
            assert sol.kinetics is DF
            assert d.gamma_front + d.gamma_back == s
            cp, cm = wave_speed(m, d.gamma_front), wave_speed(m, d.gamma_back)
            assert cp == pytest.approx(cm, rel=1e-10)
            assert d.speed < cp
            check_shape(sol)


def _grid_strictly_increasing(fn, lo, hi, n=1000):
    vals = [fn(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    return all(b > a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("beta", [1.2, 2.0, 3.0, 3.65, 5.0, 20.0, 100.0])
def test_eta_equations_monotone(beta):
    m = Material.dimensionless(1.0, beta)
    h, F_h = m.h, f_antiderivative(m.h)
    assert _grid_strictly_increasing(lambda e: -(F_h - f_antiderivative(e)), 1.0, h)
    assert _grid_strictly_increasing(
        lambda e: 3 * e * math.sqrt(e * e - 1) + F_h - f_antiderivative(e), 1.0, h)
    if h > SQRT3:
        assert _grid_strictly_increasing(
            lambda e: v_double_star_scaled(e) + F_h - f_antiderivative(e), SQRT3, h)
        assert _grid_strictly_increasing(lambda p: (p + h) * pb_only_speed_scaled(h, p), h, 2 * h)


# -- evaluation and profiles --------------------------------------------

def test_evaluate_fan_example(m13):
    sol = solve(m13, thresholds(m13).v_star)
    g, v, sig = evaluate(sol, 1.0)
    assert g == pytest.approx(2 - math.sqrt(2), rel=1e-13)
    assert v == pytest.approx(-0.80715187142969293, rel=1e-13)
    assert v == pytest.approx(-integral_c(m13, 0.0, g), rel=1e-12)
    assert sig == stress(m13, g)


def test_fan_state_inverts_wave_speed(m15):
    for xi in (0.1, 0.7, 1.5, 2.2):
        g, _ = fan_state(m15, xi)
        assert wave_speed(m15, g) == pytest.approx(xi, rel=1e-12)


@pytest.mark.parametrize("v, kin", [(0.5, Kinetics.AUTO), (2.0, DF), (5.0, MD), (5.0, DF), (12.0, MD)])
def test_boundary_and_far_field(m13, v, kin):
    sol = solve(m13, v, kin)
    assert evaluate(sol, 0.0)[1] == -v
    assert evaluate(sol, 1e-12)[1] == -v
    # a strong shock outruns c0, so "far field" means past the leading wave
    lead = max(wave_edges(sol))
    assert evaluate(sol, lead * 1.0001) == (0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        evaluate(sol, -1e-3)


def test_jump_returns_front_state(m15):
    sol = solve(m15, 10.0)
    d = sol.discontinuity
    g, v, _ = evaluate(sol, d.speed)
    assert (g, v) == pytest.approx((d.gamma_front, d.v_front), rel=1e-12)


@pytest.mark.parametrize("beta, v, kin", [(3.0, 0.7, MD), (3.0, 2.0, DF), (5.0, 10.0, MD)])
def test_fan_edges_continuous(beta, v, kin):
    m = Material.dimensionless(1.0, beta)
    sol = solve(m, v, kin)
    fan, behind = sol.fan, sol.states[-2]
    tol = 1e-10 * max(m.alpha, v)
    g, vel = fan_state(m, fan.xi_lo)
    assert abs(g - behind.strain) <= tol and abs(vel - behind.velocity) <= tol
    g, vel = fan_state(m, fan.xi_hi)
    assert abs(g) <= tol and abs(vel) <= tol


def test_profile_straddles_jump(m13):
    sol = solve(m13, 20.0)
    rows = profile(sol, 1.0, 4.0, 11)
    xs = [r[0] for r in rows]
    assert xs == sorted(xs)
    s = sol.discontinuity.speed
    at = [r for r in rows if r[0] == s]
    assert len(at) == 2 and at[0][1] == sol.states[0].strain and at[1][1] == 0.0
    strains = [r[1] for r in rows]
    steps = sum(a != b for a, b in zip(strains, strains[1:]))
    assert steps == 1


def test_profile_endpoints(m13):
    rows = profile(solve(m13, 2.0), 1.0, 3.0, 2)
    assert rows[0][0] == 0.0 and rows[0][2] == -2.0
    assert rows[-1][0] == 3.0 and rows[-1][1:] == (0.0, 0.0, 0.0)


def test_profile_md_no_plateau(m15):
    sol = solve(m15, 10.0)
    s = sol.discontinuity.speed
    rows = profile(sol, 1.0, 3.0, 50)
    after = [r for r in rows if r[0] > s][0]
    g_fan, _ = fan_state(m15, after[0])
    assert after[1] == pytest.approx(g_fan, rel=1e-12)


def test_profile_weak_monotone(m13):
    rows = profile(solve(m13, 0.9), 1.0, 2.5, 300)
    strains = [r[1] for r in rows]
    assert all(b <= a for a, b in zip(strains, strains[1:]))


def test_profile_parameter_errors(m13):
    sol = solve(m13, 0.5)
    for args in ((0.0, 1.0, 5), (1.0, 0.0, 5), (1.0, 1.0, 1)):
        with pytest.raises(DomainError):
            profile(sol, *args)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 30.0), st.floats(0.0, 3.0), st.floats(0.1, 10.0))
def test_self_similarity(v, x, k):
    m = Material.dimensionless(1.0, 3.0)
    sol = solve(m, v)
    t = 1.3
    assert evaluate(sol, (k * x) / (k * t)) == pytest.approx(evaluate(sol, x / t), rel=1e-12, abs=1e-12)


def test_profile_dilation(m13):
    sol = solve(m13, 2.0)
    a = profile(sol, 1.0, 2.0, 9)
    b = profile(sol, 2.0, 4.0, 9)
    assert len(a) == len(b)
    for ra, rb in zip(a, b):
        assert rb[0] == pytest.approx(2 * ra[0], rel=1e-14)
        assert rb[1:] == pytest.approx(ra[1:], rel=1e-12, abs=1e-14)


def test_wave_edges(m15):
    sol = solve(m15, 10.0)
    assert wave_edges(sol) == [sol.discontinuity.speed, m15.c0]


def test_solution_is_immutable(m13):
    sol = solve(m13, 2.0)
    with pytest.raises(AttributeError):
        sol.impact_velocity = 3.0
    assert isinstance(sol.discontinuity, Discontinuity)


def test_solve_rejects_nonpositive(m13):
    with pytest.raises(RegimeError):
        solve(m13, -1.0)


@pytest.mark.parametrize("beta", [1.5, 3.0, 5.0, 15.0])
def test_md_accurate_near_v_star(beta):
    from phaseimpact.diagnostics import chord_identity_error, jump_residuals

    m = Material.dimensionless(1.0, beta)
    v_star = thresholds(m).v_star
    for k in range(1, 14):
        d = solve_intermediate_md(m, v_star * (1 + 10.0**-k)).discontinuity
        r = jump_residuals(m, d)
        assert max(abs(r.mass_normalized), abs(r.momentum_normalized)) < 1e-10
        # V - V* = 3 c1 q (1 + O(q^2)) as the boundary comes to rest
        if k >= 3:
            q = d.speed / m.c2
            assert 3 * m.c1 * q == pytest.approx(v_star * 10.0**-k, rel=1e-3)
        if d.speed > 1e-4 * m.c0:
            assert chord_identity_error(m, d) < 1e-10
