"""Independent oracles: lattice spectra, quadrature, LP, rearrangement."""

import math

import numpy as np
import pytest

from eigenfloor.minimizer import (
    MinimizationInput,
    minimizer_profile,
    optimal_moment,
    optimal_moment4,
    profile_moment_of,
)
from eigenfloor.verification import (
    LpInfeasibleError,
    RadialProfileGrid,
    SpectrumSample,
    audit,
    box_spectrum,
    lp_minimize,
    lp_minimize_profile,
    quadrature_moment,
    rearrangement_moment_check,
)
from eigenfloor.geometry import Box

PI = math.pi

WITNESS = MinimizationInput(n=2, cap=1.0, slope=1.0, mass=7.0 * PI / 3.0)


def disk_grid(center, radius, size=41, cell=0.1):
    """Indicator of a disk sampled on a grid centered at the origin."""
    idx = (np.arange(size) - (size - 1) / 2.0) * cell
    x, y = np.meshgrid(idx, idx, indexing="ij")
    return ((x - center[0]) ** 2 + (y - center[1]) ** 2 <= radius**2).astype(float)


def test_box_spectrum_witnesses():
    sample = box_spectrum((1.0, 1.0), 5)
    assert sample.operator == "laplace"
    assert sample.source == "exact_box"
    expected = PI**2 * np.array([2.0, 5.0, 5.0, 8.0, 10.0])
    assert np.allclose(sample.eigenvalues, expected, rtol=1e-12)
    cube = box_spectrum((1.0, 1.0, 1.0), 1)
    assert cube.eigenvalues[0] == pytest.approx(3.0 * PI**2, rel=1e-12)
    wide = box_spectrum((PI, PI), 1)
    assert wide.eigenvalues[0] == pytest.approx(2.0, rel=1e-12)


def test_box_spectrum_count_and_order():
    sample = box_spectrum((1.0, 2.0, 3.0), 300)
    ev = np.asarray(sample.eigenvalues)
    assert len(ev) == 300
    assert np.all(np.diff(ev) >= 0.0)
    assert ev[0] == pytest.approx(PI**2 * (1.0 + 0.25 + 1.0 / 9.0), rel=1e-12)
    # partial sums are cumulative
    sums = sample.partial_sums()
    assert sums[0] == ev[0]
    assert sums[-1] == pytest.approx(float(np.sum(ev)), rel=1e-14)


def test_box_spectrum_workers_agree():
    serial = box_spectrum((1.0, 1.5), 400, workers=1)
    threaded = box_spectrum((1.0, 1.5), 400, workers=3)
    assert serial.eigenvalues == threaded.eigenvalues


def test_box_spectrum_weyl_consistency():
    # the m-th eigenvalue approaches the Weyl growth 4 pi m / V
    sample = box_spectrum((1.0, 1.0), 2000)
    ratio = sample.eigenvalues[-1] / (4.0 * PI * 2000.0)
    assert 0.9 < ratio < 1.1


def test_spectrum_sample_validation():
    with pytest.raises(ValueError):
        SpectrumSample(operator="laplace", eigenvalues=(2.0, 1.0), source="test")
    with pytest.raises(ValueError):
        SpectrumSample(operator="laplace", eigenvalues=(0.0, 1.0), source="test")
    with pytest.raises(ValueError):
        SpectrumSample(operator="laplace", eigenvalues=(), source="test")


def test_radial_profile_grid_validation():
    RadialProfileGrid(step=0.1, values=(1.0, 0.5, 0.0))
    with pytest.raises(ValueError):
        RadialProfileGrid(step=0.1, values=(0.5, 1.0))  # increasing
    with pytest.raises(ValueError):
        RadialProfileGrid(step=0.1, values=(1.0, -0.5))
    with pytest.raises(ValueError):
        RadialProfileGrid(step=0.0, values=(1.0,))


def test_quadrature_matches_closed_moments():
    prof = minimizer_profile(WITNESS)
    assert quadrature_moment(prof, 1.0) == pytest.approx(7.0 / 6.0, rel=1e-12)
    assert quadrature_moment(prof, 3.0) == pytest.approx(31.0 / 20.0, rel=1e-12)
    assert quadrature_moment(prof, 5.0) == pytest.approx(
        profile_moment_of(prof, 5.0), rel=1e-10
    )
    # degenerate branch
    small = MinimizationInput(n=3, cap=1.0, slope=2.0, mass=0.01)
    sprof = minimizer_profile(small)
    for gamma in (2.0, 4.0):
        assert quadrature_moment(sprof, gamma) == pytest.approx(
            profile_moment_of(sprof, gamma), rel=1e-10
        )


def test_lp_oracle_witness():
    closed = optimal_moment(WITNESS)
    val = lp_minimize(WITNESS, grid_points=400)
    assert abs(val - closed) / closed < 1e-4
    # the LP relaxes the true problem on a grid, so it lands close from
    # either side; refinement must shrink the gap
    errs = [abs(lp_minimize(WITNESS, grid_points=g) - closed) / closed for g in (200, 400, 800)]
    assert errs[0] > errs[1] > errs[2]


def test_lp_oracle_degenerate_and_quartic():
    small = MinimizationInput(n=2, cap=1.0, slope=1.0, mass=0.05)
    closed = optimal_moment(small)
    assert abs(lp_minimize(small, grid_points=400) - closed) / closed < 1e-4
    quartic = lp_minimize(WITNESS, grid_points=400, moment_power=4)
    assert abs(quartic - optimal_moment4(WITNESS)) / optimal_moment4(WITNESS) < 1e-4


def test_lp_infeasible_when_truncated():
    # r_max too small to hold the required mass under the cap
    with pytest.raises(LpInfeasibleError):
        lp_minimize(WITNESS, grid_points=200, r_max=1.0)


def test_lp_profile_respects_constraints():
    val, grid = lp_minimize_profile(WITNESS, grid_points=200)
    v = np.asarray(grid.values)
    assert v.max() <= WITNESS.cap + 1e-9
    assert np.all(np.diff(v) <= 1e-12)
    assert np.max(np.abs(np.diff(v))) <= WITNESS.slope * grid.step * (1.0 + 1e-6)
    # the reported objective matches the grid moment
    r = (np.arange(len(v)) + 0.5) * grid.step
    sigma = 2.0 * PI
    moment = float(np.sum(sigma * r**3 * v) * grid.step)
    assert moment == pytest.approx(val, rel=1e-9)


def test_rearrangement_centered_disk_equality():
    chk = rearrangement_moment_check(disk_grid((0.0, 0.0), 1.55), cell=0.1)
    assert chk.ok
    assert chk.rearranged == pytest.approx(chk.raw, rel=1e-12)


def test_rearrangement_off_center_strict():
    chk = rearrangement_moment_check(disk_grid((0.75, 0.0), 1.55), cell=0.1)
    assert chk.ok
    assert chk.raw - chk.rearranged > 1e-3


def test_rearrangement_two_level_step():
    # larger values on an outer annulus get swapped inward
    idx = (np.arange(41) - 20.0) * 0.1
    x, y = np.meshgrid(idx, idx, indexing="ij")
    r = np.sqrt(x**2 + y**2)
    grid = np.where(r <= 0.5, 1.0, 0.0) + np.where((r > 1.0) & (r <= 1.5), 3.0, 0.0)
    chk = rearrangement_moment_check(grid, cell=0.1)
    assert chk.ok
    assert chk.raw - chk.rearranged > 1e-3


def test_rearrangement_validation():
    with pytest.raises(ValueError):
        rearrangement_moment_check(np.ones(5), cell=0.1)
    with pytest.raises(ValueError):
        rearrangement_moment_check(-np.ones((3, 3)), cell=0.1)
    with pytest.raises(ValueError):
        rearrangement_moment_check(np.ones((3, 3)), cell=0.0)


def test_audit_unit_square():
    rep = audit("laplace", Box(sides=(1.0, 1.0)), 25)
    assert rep.ok
    assert rep.spectral
    assert len(rep.rows) == 25
    assert rep.violations == ()
    assert rep.argmin_m == 1
    assert rep.min_slack == pytest.approx(13.208012931787778, rel=1e-10)
    row10 = rep.rows[9]
    assert row10.m == 10
    assert row10.spectrum_sum == pytest.approx(100.0 * PI**2, rel=1e-12)
    assert row10.slack == pytest.approx(row10.spectrum_sum - row10.exact, rel=1e-12)
    lo, hi = rep.exact_minus_two_term
    assert 0.0 < lo <= hi


def test_audit_accepts_matching_external_spectrum():
    sample = box_spectrum((1.0, 1.0), 30)
    external = SpectrumSample(
        operator="laplace", eigenvalues=sample.eigenvalues, source="external"
    )
    rep = audit("laplace", Box(sides=(1.0, 1.0)), 30, spectrum=external)
    assert rep.ok


def test_audit_flags_corrupted_spectrum():
    ev = list(box_spectrum((1.0, 1.0), 30).eigenvalues)
    ev[6] = ev[6] / 2.0
    corrupted = SpectrumSample(
        operator="laplace", eigenvalues=tuple(sorted(ev)), source="external"
    )
    rep = audit("laplace", Box(sides=(1.0, 1.0)), 30, spectrum=corrupted)
    assert not rep.ok
    assert rep.violations


def test_audit_ordering_only_operators():
    rep = audit("stokes", Box(sides=(1.0, 1.0)), 15)
    assert rep.ok
    assert not rep.spectral
    assert rep.min_slack is None
    assert all(row.spectrum_sum is None for row in rep.rows)
    bil = audit("bilaplace", Box(sides=(1.0, 1.0)), 8)
    assert bil.ok
    assert all(row.melas is None for row in bil.rows)


def test_audit_no_theorem_dimension():
    rep = audit("laplace", Box(sides=(1.0,) * 5), 6)
    assert rep.ok
    assert rep.spectral
    assert all(row.two_term is None for row in rep.rows)
    assert rep.exact_minus_two_term is None


def test_audit_workers_agree():
    a = audit("laplace", Box(sides=(1.0, 1.0, 1.0)), 20, workers=1)
    b = audit("laplace", Box(sides=(1.0, 1.0, 1.0)), 20, workers=2)
    assert a.rows == b.rows
