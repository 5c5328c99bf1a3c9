"""Independent oracles that check the bounds and the closed forms at desk scale.

Three oracles, none of which share code with the quantities they check:

* exact Dirichlet spectra of boxes by lattice enumeration (ground truth the
  bounds must stay below),
* adaptive quadrature of the explicit minimizer profile (checks the moment
  closed forms),
* a discretized linear program for the constrained radial minimization
  (checks the plateau-root route to the optimal value),

plus a discrete Hardy-Littlewood rearrangement check and an end-to-end
audit harness combining spectra and bounds.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .bounds import (
    BoundReport,
    GeometrySummary,
    OperatorKind,
    bound_exact,
    summarize_shape,
)
from .geometry import Box, DomainShape
from .minimizer import (
    MinimizationInput,
    MinimizerProfile,
    dimension_constants,
    minimizer_profile,
)


class LpInfeasibleError(RuntimeError):
    """The discretized problem cannot reach the prescribed mass."""


@dataclass(frozen=True)
class SpectrumSample:
    """A finite initial segment of an operator spectrum."""

    operator: str
    eigenvalues: tuple[float, ...]
    source: str  # "exact_box" or "external"

    def __post_init__(self):
        if self.source not in ("exact_box", "external"):
            raise ValueError(f"unknown spectrum source {self.source!r}")
        if not self.eigenvalues:
            raise ValueError("spectrum must contain at least one eigenvalue")
        prev = 0.0
        for i, ev in enumerate(self.eigenvalues):
            if not (ev > 0 and math.isfinite(ev)):
                raise ValueError(f"eigenvalue {i} must be positive and finite, got {ev}")
            if ev < prev:
                raise ValueError(f"eigenvalues must be nondecreasing, broken at index {i}")
            prev = ev

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(np.asarray(self.eigenvalues, dtype=float))


@dataclass(frozen=True)
class RadialProfileGrid:
    """Sampled nonincreasing radial profile on a uniform grid."""

    step: float
    values: tuple[float, ...]

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive, got {self.step}")
        if not self.values:
            raise ValueError("profile grid must be non-empty")
        scale = max(1.0, max(self.values))
        tol = 1e-9 * scale
        prev = None
        for i, v in enumerate(self.values):
            if not math.isfinite(v) or v < -tol:
                raise ValueError(f"profile value {i} must be >= 0, got {v}")
            if prev is not None and v > prev + tol:
                raise ValueError(f"profile must be nonincreasing, broken at index {i}")
            prev = v


def _axis_terms(sides: list[float], cutoff: float) -> list[np.ndarray]:
    terms = []
    for a in sides:
        kmax = int(math.floor(a * math.sqrt(cutoff) / math.pi))
        k = np.arange(1, kmax + 1, dtype=float)
        terms.append((math.pi * k / a) ** 2)
    return terms


def _accumulate(base: np.ndarray, rest: list[np.ndarray], cutoff: float) -> np.ndarray:
    vals = base[base <= cutoff]
    for terms in rest:
        vals = (vals[:, None] + terms[None, :]).ravel()
        vals = vals[vals <= cutoff]
    return vals


def _enumerate_below(sides: list[float], cutoff: float, workers: int) -> np.ndarray:
    terms = _axis_terms(sides, cutoff)
    if any(len(t) == 0 for t in terms):
        return np.empty(0)
    first, rest = terms[0], terms[1:]
    if workers <= 1 or len(first) < 2 * workers:
        return _accumulate(first, rest, cutoff)
    chunks = np.array_split(first, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: _accumulate(c, rest, cutoff), chunks))
    return np.concatenate(parts)


def box_spectrum(sides, count: int, workers: int = 1) -> SpectrumSample:
    """First `count` Dirichlet Laplacian eigenvalues of an axis-aligned box.

    The spectrum is pi^2 * sum_i (k_i / a_i)^2 over positive integer
    multi-indices; enumeration is cut off at 1.5x the Weyl asymptote for
    the count (plus a two-mode floor for small counts) and the cutoff is
    doubled until it provably contains the first `count` values.
    """
    sides = [float(a) for a in sides]
    n = len(sides)
    if n < 2:
        raise ValueError(f"box needs dimension >= 2, got {n}")
    if any(not (a > 0 and math.isfinite(a)) for a in sides):
        raise ValueError(f"box sides must be positive, got {sides}")
    if count < 1:
        raise ValueError(f"eigenvalue count must be >= 1, got {count}")
    cons = dimension_constants(n)
    volume = math.prod(sides)
    weyl_scale = ((2.0 * math.pi) ** n / (cons.ball_volume * volume)) ** (2.0 / n)
    ground = math.pi**2 * sum(1.0 / a**2 for a in sides)
    cutoff = 1.5 * weyl_scale * count ** (2.0 / n) + 2.0 * ground
    for _ in range(64):
        vals = _enumerate_below(sides, cutoff, workers)
        if len(vals) >= count:
            # every value <= cutoff was enumerated, so the smallest `count`
            # of them are the true first eigenvalues
            vals = np.sort(vals)[:count]
            return SpectrumSample(
                operator="laplace", eigenvalues=tuple(vals), source="exact_box"
            )
        cutoff *= 2.0
    raise RuntimeError("lattice enumeration budget exceeded")


def quadrature_moment(profile: MinimizerProfile, gamma: float) -> float:
    """Adaptive quadrature of r^gamma * F(r) over the profile support."""
    if gamma < 0:
        raise ValueError(f"moment exponent must be >= 0, got {gamma}")
    value, _ = integrate.quad(
        lambda r: r**gamma * profile.value(r),
        0.0,
        profile.support_radius,
        points=list(profile.breakpoints),
        limit=200,
    )
    return value


def _lp_solve(
    inp: MinimizationInput,
    grid_points: int,
    r_max: float | None,
    moment_power: int,
) -> tuple[float, RadialProfileGrid]:
    if grid_points < 50:
        raise ValueError(f"grid must have >= 50 points, got {grid_points}")
    if moment_power not in (2, 4):
        raise ValueError(f"moment power must be 2 or 4, got {moment_power}")
    cons = dimension_constants(inp.n)
    if r_max is None:
        # 1.25x the support puts the profile breakpoints on cell boundaries
        # for grid sizes divisible by 5, giving clean second-order decay
        r_max = 1.25 * minimizer_profile(inp).support_radius
    if not (r_max > 0 and math.isfinite(r_max)):
        raise ValueError(f"r_max must be positive, got {r_max}")
    n_pts = grid_points
    delta = r_max / n_pts
    r = (np.arange(n_pts) + 0.5) * delta
    mass_w = cons.sphere_area * delta * r ** (inp.n - 1)
    obj_w = cons.sphere_area * delta * r ** (inp.n + moment_power - 1)
    reachable = inp.cap * mass_w.sum()
    if inp.mass > reachable * (1.0 + 1e-12):
        raise LpInfeasibleError(
            f"mass {inp.mass} exceeds the grid maximum {reachable}; "
            "increase r_max or grid_points"
        )
    idx = np.arange(n_pts - 1)
    a_mono = np.zeros((n_pts - 1, n_pts))
    a_mono[idx, idx] = -1.0
    a_mono[idx, idx + 1] = 1.0
    a_lip = np.zeros((n_pts - 1, n_pts))
    a_lip[idx, idx] = 1.0
    a_lip[idx, idx + 1] = -1.0
    a_ub = np.vstack([a_mono, a_lip])
    b_ub = np.concatenate(
        [np.zeros(n_pts - 1), np.full(n_pts - 1, inp.slope * delta)]
    )
    res = optimize.linprog(
        obj_w,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=mass_w[None, :],
        b_eq=[inp.mass],
        bounds=(0.0, inp.cap),
        method="highs",
    )
    if res.status == 2:
        raise LpInfeasibleError(f"LP reported infeasible: {res.message}")
    if not res.success:
        raise RuntimeError(f"LP solver failed: {res.message}")
    x = np.clip(res.x, 0.0, None)
    scale = max(1.0, inp.cap)
    if np.any(res.x > inp.cap + 1e-7 * scale):
        raise RuntimeError("LP solution violates the cap constraint")
    diffs = x[:-1] - x[1:]
    if np.any(diffs > inp.slope * delta * (1.0 + 1e-6) + 1e-9 * scale):
        raise RuntimeError("LP solution violates the slope constraint")
    grid = RadialProfileGrid(step=delta, values=tuple(np.minimum.accumulate(x)))
    return float(res.fun), grid


def lp_minimize(
    inp: MinimizationInput,
    grid_points: int = 400,
    r_max: float | None = None,
    moment_power: int = 2,
) -> float:
    """Optimum of the discretized minimization problem (midpoint rule).

    Variables are profile values at cell midpoints; the cap, monotonicity,
    discrete Lipschitz, and mass constraints are all imposed on the same
    discretization as the objective.  Solved exactly (up to solver
    tolerance) with the HiGHS simplex/IPM backend.
    """
    value, _ = _lp_solve(inp, grid_points, r_max, moment_power)
    return value


def lp_minimize_profile(
    inp: MinimizationInput,
    grid_points: int = 400,
    r_max: float | None = None,
    moment_power: int = 2,
) -> tuple[float, RadialProfileGrid]:
    """Like lp_minimize, but also returns the optimal sampled profile."""
    return _lp_solve(inp, grid_points, r_max, moment_power)


@dataclass(frozen=True)
class RearrangementCheck:
    raw: float
    rearranged: float
    ok: bool


def rearrangement_moment_check(samples, cell: float) -> RearrangementCheck:
    """Discrete Hardy-Littlewood check on a 2D grid of nonnegative values.

    The grid is read as cell averages on a lattice centered at the origin.
    raw is sum |xi|^2 F(xi) * cell^2; rearranged is the same moment after
    replacing F by its symmetric-decreasing rearrangement (sort the values
    descending and refill the cells by increasing |xi|).  raw >= rearranged
    holds exactly in exact arithmetic, so ok only absorbs roundoff.
    """
    grid = np.asarray(samples, dtype=float)
    if grid.ndim != 2:
        raise ValueError(f"samples must be a 2D grid, got ndim={grid.ndim}")
    if not (cell > 0 and math.isfinite(cell)):
        raise ValueError(f"cell size must be positive, got {cell}")
    if np.any(~np.isfinite(grid)) or np.any(grid < 0):
        raise ValueError("samples must be finite and nonnegative")
    rows, cols = grid.shape
    x = (np.arange(rows) - (rows - 1) / 2.0) * cell
    y = (np.arange(cols) - (cols - 1) / 2.0) * cell
    radius2 = (x[:, None] ** 2 + y[None, :] ** 2).ravel()
    values = grid.ravel()
    area = cell * cell
    raw = float(np.dot(radius2, values)) * area
    rearranged = float(
        np.dot(np.sort(radius2), np.sort(values)[::-1])
    ) * area
    tol = 1e-12 * max(1.0, abs(raw)) + 1e-12 * area
    return RearrangementCheck(raw=raw, rearranged=rearranged, ok=raw >= rearranged - tol)


@dataclass(frozen=True)
class AuditRow:
    m: int
    spectrum_sum: float | None
    liyau: float
    melas: float | None
    exact: float
    two_term: float | None
    slack: float | None


@dataclass(frozen=True)
class AuditReport:
    """Outcome of the end-to-end bound audit for one operator and shape."""

    operator: str
    m_max: int
    spectral: bool
    rows: tuple[AuditRow, ...]
    violations: tuple[str, ...]
    min_slack: float | None
    argmin_m: int | None
    exact_minus_two_term: tuple[float, float] | None

    @property
    def ok(self) -> bool:
        return not self.violations


# relative headroom for floating-point comparisons of mathematically
# strict-or-equal orderings
_REL_TOL = 1e-9


def _below(a: float, b: float) -> bool:
    """a <= b up to relative tolerance."""
    return a <= b + _REL_TOL * max(abs(a), abs(b), 1.0)


def audit(
    kind: OperatorKind | str,
    shape: DomainShape,
    m_max: int,
    spectrum: SpectrumSample | None = None,
    workers: int = 1,
) -> AuditReport:
    """Check every bound ordering for m = 1..m_max against ground truth.

    Asserted orderings: liyau <= melas <= exact, liyau <= two_term, and,
    when a spectrum is available (enumerated for Laplacian boxes, or given
    externally), partial sums dominate both exact and two_term.  The
    relation between exact and two_term is recorded, not asserted.  An
    external spectrum on a Laplacian box is additionally cross-checked
    level by level against the enumerated ground truth.
    """
    kind = OperatorKind(kind)
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    geom = summarize_shape(shape)
    reports: list[BoundReport] = [
        bound_exact(kind, geom, m) for m in range(1, m_max + 1)
    ]
    violations: list[str] = []

    enumerated: SpectrumSample | None = None
    if kind == OperatorKind.LAPLACE and isinstance(shape, Box):
        enumerated = box_spectrum(shape.sides, m_max, workers=workers)
    if spectrum is not None:
        if len(spectrum.eigenvalues) < m_max:
            raise ValueError(
                f"spectrum has {len(spectrum.eigenvalues)} eigenvalues, need {m_max}"
            )
        if enumerated is not None:
            for j in range(m_max):
                got = spectrum.eigenvalues[j]
                want = enumerated.eigenvalues[j]
                if abs(got - want) > 1e-6 * max(1.0, abs(want)):
                    violations.append(
                        f"m={j + 1}: external eigenvalue {got:.9g} does not match "
                        f"the enumerated value {want:.9g}"
                    )
        sums = spectrum.partial_sums()
    elif enumerated is not None:
        sums = enumerated.partial_sums()
    else:
        sums = None

    rows: list[AuditRow] = []
    min_slack = None
    argmin_m = None
    diff_lo = None
    diff_hi = None
    for i, rep in enumerate(reports):
        m = i + 1
        if rep.melas is not None:
            if not _below(rep.liyau, rep.melas):
                violations.append(f"m={m}: liyau {rep.liyau} exceeds melas {rep.melas}")
            if not _below(rep.melas, rep.exact):
                violations.append(f"m={m}: melas {rep.melas} exceeds exact {rep.exact}")
        elif not _below(rep.liyau, rep.exact):
            violations.append(f"m={m}: leading term {rep.liyau} exceeds exact {rep.exact}")
        if rep.two_term is not None:
            if not _below(rep.liyau, rep.two_term):
                violations.append(
                    f"m={m}: liyau {rep.liyau} exceeds two-term bound {rep.two_term}"
                )
            diff = rep.exact - rep.two_term
            diff_lo = diff if diff_lo is None else min(diff_lo, diff)
            diff_hi = diff if diff_hi is None else max(diff_hi, diff)
        slack = None
        s = None
        if sums is not None:
            s = float(sums[i])
            dominated = rep.exact
            if not _below(rep.exact, s):
                violations.append(f"m={m}: partial sum {s} is below exact bound {rep.exact}")
            if rep.two_term is not None:
                dominated = max(dominated, rep.two_term)
                if not _below(rep.two_term, s):
                    violations.append(
                        f"m={m}: partial sum {s} is below two-term bound {rep.two_term}"
                    )
            slack = s - dominated
            if min_slack is None or slack < min_slack:
                min_slack = slack
                argmin_m = m
        rows.append(
            AuditRow(
                m=m,
                spectrum_sum=s,
                liyau=rep.liyau,
                melas=rep.melas,
                exact=rep.exact,
                two_term=rep.two_term,
                slack=slack,
            )
        )
    return AuditReport(
        operator=kind.value,
        m_max=m_max,
        spectral=sums is not None,
        rows=tuple(rows),
        violations=tuple(violations),
        min_slack=min_slack,
        argmin_m=argmin_m,
        exact_minus_two_term=None if diff_lo is None else (diff_lo, diff_hi),
    )
