"""Tests for the constrained moment minimizer core."""

import math

import numpy as np
import pytest

from eigenfloor.minimizer import (
    MinimizationInput,
    asymptotic_moment,
    beta_moment_bound,
    closed_form_plateau,
    dimension_constants,
    liyau_moment,
    melas_moment_bound,
    minimizer_profile,
    optimal_moment,
    optimal_moment4,
    planar_closed_moment,
    planar_closed_moment4,
    power_diff,
    profile_moment_of,
    scaled_mass,
    shifted_root_expansion,
    solve_plateau,
)

PI = math.pi

# Canonical witness: n=2, cap=slope=1, mass=7pi/3 puts the scaled mass at
# exactly 7 and the plateau root at exactly 1, so every downstream value
# has a closed rational-times-pi form.
WITNESS = MinimizationInput(n=2, cap=1.0, slope=1.0, mass=7.0 * PI / 3.0)


def admissible_input(rng, n, m_star_max=1e6):
    """Random input with scaled mass >= 1, the regime the bounds cover."""
    cap = 10.0 ** rng.uniform(-1.0, 1.0)
    slope = 10.0 ** rng.uniform(-1.0, 1.0)
    m_star = 10.0 ** rng.uniform(0.0, math.log10(m_star_max))
    omega = dimension_constants(n).ball_volume
    mass = m_star * omega * cap ** (n + 1) / ((n + 1) * slope**n)
    return MinimizationInput(n=n, cap=cap, slope=slope, mass=mass)


def test_dimension_constants():
    c2 = dimension_constants(2)
    assert abs(c2.ball_volume - PI) < 1e-15
    assert abs(c2.sphere_area - 2.0 * PI) < 1e-15
    c3 = dimension_constants(3)
    assert abs(c3.ball_volume - 4.0 * PI / 3.0) < 1e-14
    assert abs(c3.sphere_area - 4.0 * PI) < 1e-14
    c4 = dimension_constants(4)
    assert abs(c4.ball_volume - PI * PI / 2.0) < 1e-14
    assert abs(c4.sphere_area - 2.0 * PI * PI) < 1e-14
    # sphere area is n * ball volume in every dimension
    for n in range(2, 12):
        c = dimension_constants(n)
        assert abs(c.sphere_area - n * c.ball_volume) < 1e-12 * c.sphere_area


def test_input_validation():
    with pytest.raises(ValueError):
        MinimizationInput(n=1, cap=1.0, slope=1.0, mass=1.0)
    with pytest.raises(ValueError):
        MinimizationInput(n=2, cap=0.0, slope=1.0, mass=1.0)
    with pytest.raises(ValueError):
        MinimizationInput(n=2, cap=1.0, slope=-1.0, mass=1.0)
    with pytest.raises(ValueError):
        MinimizationInput(n=2, cap=1.0, slope=1.0, mass=0.0)
    with pytest.raises(ValueError):
        MinimizationInput(n=2, cap=math.inf, slope=1.0, mass=1.0)


def test_scaled_mass_witness():
    assert abs(scaled_mass(WITNESS) - 7.0) < 1e-13
    small = MinimizationInput(n=2, cap=1.0, slope=1.0, mass=0.05)
    assert scaled_mass(small) < 1.0


def test_power_diff_small_integers():
    # exact against integer arithmetic on small arguments
    for t in range(0, 6):
        for k in range(1, 8):
            expected = (t + 1) ** k - t**k
            assert power_diff(float(t), k) == float(expected)


def test_power_diff_large_argument():
    # (t+1)^k - t^k loses all precision when formed directly at t = 1e12;
    # the binomial form keeps full relative accuracy.
    t = 1e12
    for k in (2, 3, 4, 5):
        exact = (10**12 + 1) ** k - (10**12) ** k  # python ints, exact
        got = power_diff(t, k)
        assert abs(got - exact) <= 1e-15 * exact


def test_solve_plateau_witness_and_edges():
    t = solve_plateau(2, 7.0)
    assert abs(t - 1.0) < 1e-12
    for n in range(2, 9):
        assert abs(solve_plateau(n, 1.0)) < 1e-12
    with pytest.raises(ValueError):
        solve_plateau(2, 0.5)


def test_solve_plateau_residuals_and_closed_forms():
    for n in range(2, 9):
        for m_star in (1.0, 2.0, 7.0, 31.0, 1e3, 1e6, 1e12):
            t = solve_plateau(n, m_star)
            resid = abs(power_diff(t, n + 1) - m_star)
            assert resid <= 1e-11 * m_star
            if n in (2, 3, 4):
                t_closed = closed_form_plateau(n, m_star)
                assert abs(t - t_closed) <= 1e-11 * max(1.0, t)


def test_solve_plateau_monotone():
    grid = np.geomspace(1.0, 1e9, 40)
    for n in (2, 3, 5):
        roots = [solve_plateau(n, m) for m in grid]
        assert all(a < b for a, b in zip(roots, roots[1:]))


def test_profile_plateau_branch():
    prof = minimizer_profile(WITNESS)
    assert prof.kind == "plateau-ramp"
    assert abs(prof.plateau - 1.0) < 1e-12
    assert abs(prof.scaled_plateau - 1.0) < 1e-12
    assert prof.peak is None
    assert abs(prof.support_radius - 2.0) < 1e-12
    assert prof.value(0.0) == WITNESS.cap
    assert abs(prof.value(1.5) - 0.5) < 1e-12
    assert prof.value(2.0) == 0.0
    assert prof.value(5.0) == 0.0


def test_profile_degenerate_branch():
    inp = MinimizationInput(n=2, cap=1.0, slope=1.0, mass=0.05)
    prof = minimizer_profile(inp)
    assert prof.kind == "triangular"
    assert prof.plateau is None
    expected_peak = scaled_mass(inp) ** (1.0 / 3.0)
    assert abs(prof.peak - expected_peak) < 1e-13
    assert prof.peak < inp.cap
    assert prof.value(0.0) == prof.peak
    assert abs(prof.support_radius - prof.peak / inp.slope) < 1e-13


def test_profile_mass_recovery():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        cap = 10.0 ** rng.uniform(-1, 1)
        slope = 10.0 ** rng.uniform(-1, 1)
        mass = 10.0 ** rng.uniform(-3, 3)
        inp = MinimizationInput(n=n, cap=cap, slope=slope, mass=mass)
        prof = minimizer_profile(inp)
        sigma = dimension_constants(n).sphere_area
        recovered = sigma * profile_moment_of(prof, n - 1)
        assert abs(recovered - mass) <= 1e-12 * mass


def test_optimal_moment_witnesses():
    assert abs(optimal_moment(WITNESS) - 3.1 * PI) <= 1e-13 * PI
    # n=3 with scaled mass 15 has root t=1 and mass 5 pi
    inp3 = MinimizationInput(n=3, cap=1.0, slope=1.0, mass=5.0 * PI)
    assert abs(scaled_mass(inp3) - 15.0) < 1e-12
    assert abs(optimal_moment(inp3) - 42.0 * PI / 5.0) <= 1e-12 * PI


def test_optimal_moment4_witness():
    assert abs(optimal_moment4(WITNESS) - 127.0 * PI / 21.0) <= 1e-12 * PI


def test_liyau_and_melas_witnesses():
    assert abs(liyau_moment(WITNESS) - 49.0 * PI / 18.0) <= 1e-13 * PI
    assert abs(melas_moment_bound(WITNESS) - 203.0 * PI / 72.0) <= 1e-13 * PI


def test_ordering_in_admissible_regime():
    rng = np.random.default_rng(101)
    for _ in range(300):
        n = int(rng.integers(2, 7))
        inp = admissible_input(rng, n)
        liy = liyau_moment(inp)
        mel = melas_moment_bound(inp)
        opt = optimal_moment(inp)
        assert liy < mel
        assert mel <= opt * (1.0 + 1e-12)


def test_homogeneity():
    # (cap, slope, mass) -> (a cap, a slope, a mass) rescales every moment
    # functional by a.
    rng = np.random.default_rng(11)
    funcs = (
        optimal_moment,
        optimal_moment4,
        liyau_moment,
        melas_moment_bound,
        asymptotic_moment,
    )
    for _ in range(20):
        n = int(rng.integers(2, 6))
        inp = admissible_input(rng, n)
        a = 10.0 ** rng.uniform(-2, 2)
        scaled = MinimizationInput(
            n=n, cap=a * inp.cap, slope=a * inp.slope, mass=a * inp.mass
        )
        for f in funcs:
            base = f(inp)
            assert abs(f(scaled) - a * base) <= 1e-11 * abs(a * base)


def test_degenerate_branch_continuity():
    # value is continuous across the plateau/triangular switch
    for n in (2, 3, 4):
        omega = dimension_constants(n).ball_volume
        mass1 = omega / (n + 1.0)  # scaled mass exactly 1
        lo = optimal_moment(MinimizationInput(n, 1.0, 1.0, mass1 * (1 - 1e-9)))
        hi = optimal_moment(MinimizationInput(n, 1.0, 1.0, mass1 * (1 + 1e-9)))
        assert abs(hi - lo) <= 1e-7 * hi


def test_planar_closed_forms_match():
    rng = np.random.default_rng(42)
    for _ in range(200):
        inp = admissible_input(rng, 2)
        closed = planar_closed_moment(inp.cap, inp.slope, inp.mass)
        closed4 = planar_closed_moment4(inp.cap, inp.slope, inp.mass)
        assert abs(optimal_moment(inp) - closed) <= 1e-12 * closed
        assert abs(optimal_moment4(inp) - closed4) <= 1e-12 * closed4
        assert abs(asymptotic_moment(inp) - closed) <= 1e-12 * closed


def test_asymptotic_moment_three_terms():
    # for n >= 3 the truncated series sits strictly below the exact value
    # on the admissible range and tightens as the mass grows
    for n in (3, 4):
        gaps = []
        for m_star in (1e2, 1e4, 1e6):
            omega = dimension_constants(n).ball_volume
            mass = m_star * omega / (n + 1.0)
            inp = MinimizationInput(n=n, cap=1.0, slope=1.0, mass=mass)
            exact = optimal_moment(inp)
            series = asymptotic_moment(inp)
            assert series < exact
            gaps.append((exact - series) / exact)
        assert gaps[0] > gaps[1] > gaps[2]


def test_shifted_root_expansion():
    # three-term expansion of the shifted root (t + 1/2)
    eta = shifted_root_expansion(2, 7.0, terms=3)
    assert abs(eta - 1.5) < 5e-6
    # error shrinks as terms are added (the third term vanishes for n=3,
    # so use n=4 where all three corrections are active)
    t = solve_plateau(4, 1e3) + 0.5
    errs = [abs(shifted_root_expansion(4, 1e3, terms=k) - t) for k in (1, 2, 3)]
    assert errs[0] > errs[1] > errs[2]
    # and as the scaled mass grows
    for n in (2, 3, 4, 5):
        e_small = abs(shifted_root_expansion(n, 1e3) - solve_plateau(n, 1e3) - 0.5)
        e_large = abs(shifted_root_expansion(n, 1e6) - solve_plateau(n, 1e6) - 0.5)
        assert e_large < e_small


def test_beta_moment_bound():
    full = beta_moment_bound(WITNESS, 1.0)
    expected = liyau_moment(WITNESS) + (2.0 / 12.0) * WITNESS.mass
    assert abs(full - expected) <= 1e-13 * full
    reduced = beta_moment_bound(WITNESS, 0.5)
    assert liyau_moment(WITNESS) < reduced < full
    with pytest.raises(ValueError):
        beta_moment_bound(WITNESS, 0.0)
    with pytest.raises(ValueError):
        beta_moment_bound(WITNESS, 1.5)
