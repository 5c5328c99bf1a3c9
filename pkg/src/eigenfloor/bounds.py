"""Lower bounds for partial sums of operator eigenvalues.

For the Dirichlet Laplacian, the Stokes operator, and the Dirichlet
bi-Laplacian on a bounded domain Omega in R^n, the sum of the first m
eigenvalues is bounded below by the constrained radial minimum computed in
:mod:`eigenfloor.minimizer`, instantiated with

    laplace:    M = (2 pi)^-n |Omega|,        L = 2 (2 pi)^-n sqrt(|Omega| I),
    stokes:     M = (2 pi)^-n (n-1) |Omega|,  L = 2 (2 pi)^-n sqrt(n(n-1)) sqrt(|Omega| I),
    bilaplace:  same M, L as laplace with moment power 4,

where I is the minimal moment of inertia of Omega.  The slope constraint
comes from a Hardy-Littlewood rearrangement argument applied to averaged
spectral projections, which is why I enters only through sqrt(|Omega| I).

The exact minimum refines the classical Berezin-Li-Yau bound by a second
term of order m; certified two-term forms with dimension-dependent safety
factors are published for n = 2, 3, 4 and exposed here next to the exact
value, so the two can be compared but neither is silently substituted for
the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import geometry
from .minimizer import (
    MinimizationInput,
    dimension_constants,
    liyau_moment,
    melas_moment_bound,
    asymptotic_moment,
    optimal_moment,
    optimal_moment4,
    scaled_mass,
)


class OperatorKind(str, Enum):
    LAPLACE = "laplace"
    STOKES = "stokes"
    BILAPLACE = "bilaplace"


# published two-term safety factors, rounded down (safe direction), and the
# lemma-level values they were rounded from; n = 2 is exact in both tables
BETA_PUBLISHED = {
    OperatorKind.LAPLACE: {2: 119.0 / 120.0, 3: 0.986, 4: 0.983},
    OperatorKind.STOKES: {2: 239.0 / 240.0, 3: 0.986, 4: 0.978},
}
BETA_LEMMA = {
    OperatorKind.LAPLACE: {2: 119.0 / 120.0, 3: 0.9869, 4: 0.9835},
    OperatorKind.STOKES: {2: 239.0 / 240.0, 3: 0.9861, 4: 0.9786},
}

# inner constant of the planar bi-Laplacian two-term bound
BILAPLACE_2D_FACTOR = 12095.0 / 12096.0


@dataclass(frozen=True)
class GeometrySummary:
    """A domain reduced to what the bounds need: n, |Omega|, and I(Omega).

    Rejects (volume, inertia) pairs below the isoperimetric moment floor,
    since no domain attains them and the bound ordering may fail there.
    """

    n: int
    volume: float
    inertia: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"dimension must be >= 2, got {self.n}")
        if not (self.volume > 0 and math.isfinite(self.volume)):
            raise ValueError(f"volume must be positive, got {self.volume}")
        if not (self.inertia > 0 and math.isfinite(self.inertia)):
            raise ValueError(f"inertia must be positive, got {self.inertia}")
        omega = dimension_constants(self.n).ball_volume
        floor = (
            self.n * self.volume ** (1.0 + 2.0 / self.n)
            / ((self.n + 2.0) * omega ** (2.0 / self.n))
        )
        if self.inertia < floor * (1.0 - 1e-12):
            raise ValueError(
                f"inertia {self.inertia} is below the isoperimetric floor {floor}; "
                "no domain has this (volume, inertia) pair"
            )


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one (operator, domain, m) triple.

    Fields that have no published counterpart for the operator (melas,
    asymptotic, epsilon for the bi-Laplacian; two_term outside n = 2, 3, 4)
    are None.  epsilon is the defect in
    exact = liyau + (c/48) (|Omega|/I) m (1 - epsilon) with c = n for the
    Laplacian and c = n-1 for Stokes.  degenerate flags the (unreachable on
    real domains with m >= 1) triangular branch of the minimizer.
    """

    operator: str
    m: int
    liyau: float
    exact: float
    melas: float | None = None
    asymptotic: float | None = None
    two_term: float | None = None
    epsilon: float | None = None
    degenerate: bool = False


def summarize_shape(shape: geometry.DomainShape) -> GeometrySummary:
    """Reduce a catalog shape to the (n, volume, inertia) summary."""
    return GeometrySummary(
        n=geometry.dimension(shape),
        volume=geometry.volume(shape),
        inertia=geometry.inertia_min(shape),
    )


def ml_constants(kind: OperatorKind | str, geom: GeometrySummary) -> tuple[float, float]:
    """Cap M and slope L of the minimization instance for the given operator."""
    kind = OperatorKind(kind)
    n = geom.n
    phase = (2.0 * math.pi) ** (-n)
    root = math.sqrt(geom.volume * geom.inertia)
    if kind in (OperatorKind.LAPLACE, OperatorKind.BILAPLACE):
        return phase * geom.volume, 2.0 * phase * root
    return (
        phase * (n - 1) * geom.volume,
        2.0 * phase * math.sqrt(n * (n - 1.0)) * root,
    )


def minimization_input(
    kind: OperatorKind | str, geom: GeometrySummary, m: float
) -> MinimizationInput:
    cap, slope = ml_constants(kind, geom)
    return MinimizationInput(n=geom.n, cap=cap, slope=slope, mass=float(m))


def bound_liyau(kind: OperatorKind | str, geom: GeometrySummary, m: float) -> float:
    """Berezin-Li-Yau bound n/(n+2) ((2 pi)^n / (omega_n c |Omega|))^(2/n) m^(1+2/n).

    c = 1 for the Laplacian and n-1 for Stokes; the bi-Laplacian has a
    fourth-power analogue exposed via bilaplace_leading instead.
    """
    kind = OperatorKind(kind)
    if kind == OperatorKind.BILAPLACE:
        raise ValueError("bound_liyau covers laplace and stokes; see bilaplace_leading")
    return liyau_moment(minimization_input(kind, geom, m))


def bilaplace_leading(geom: GeometrySummary, m: float) -> float:
    """Leading term n/(n+4) ((2 pi)^n / (omega_n |Omega|))^(4/n) m^(1+4/n)."""
    n = geom.n
    omega = dimension_constants(n).ball_volume
    cap = (2.0 * math.pi) ** (-n) * geom.volume
    return n / (n + 4.0) * (1.0 / (omega * cap)) ** (4.0 / n) * m ** (1.0 + 4.0 / n)


def bound_two_term(
    kind: OperatorKind | str, geom: GeometrySummary, m: float, sharp: bool = False
) -> float:
    """Certified two-term lower bound for the eigenvalue sum.

    laplace:  liyau + (n/48) beta_n (|Omega|/I) m         (n = 2, 3, 4)
    stokes:   liyau + ((n-1)/48) beta_n (|Omega|/I) m     (n = 2, 3, 4)
    bilaplace (n = 2): 16 pi^2 m^3 / (3 |Omega|^2)
                       + (pi / (3 I)) (12095/12096) m^2

    sharp=True swaps the rounded safety factors for the lemma-level ones.
    """
    kind = OperatorKind(kind)
    n = geom.n
    if kind == OperatorKind.BILAPLACE:
        if n != 2:
            raise ValueError(f"bi-Laplacian two-term bound is published for n=2 only, got n={n}")
        return (
            16.0 * math.pi**2 * m**3 / (3.0 * geom.volume**2)
            + math.pi / (3.0 * geom.inertia) * BILAPLACE_2D_FACTOR * m**2
        )
    table = BETA_LEMMA if sharp else BETA_PUBLISHED
    if n not in table[kind]:
        raise ValueError(f"two-term bound is published for n in {{2, 3, 4}}, got n={n}")
    beta = table[kind][n]
    c = n if kind == OperatorKind.LAPLACE else n - 1
    second = c / 48.0 * beta * geom.volume / geom.inertia * m
    return bound_liyau(kind, geom, m) + second


def has_two_term(kind: OperatorKind | str, n: int) -> bool:
    """Whether a published two-term form exists for (operator, n)."""
    kind = OperatorKind(kind)
    if kind == OperatorKind.BILAPLACE:
        return n == 2
    return n in (2, 3, 4)


def bound_exact(
    kind: OperatorKind | str, geom: GeometrySummary, m: float, sharp: bool = False
) -> BoundReport:
    """Evaluate every applicable bound for one (operator, domain, m) triple."""
    kind = OperatorKind(kind)
    inp = minimization_input(kind, geom, m)
    degenerate = scaled_mass(inp) < 1.0
    two_term = bound_two_term(kind, geom, m, sharp=sharp) if has_two_term(kind, geom.n) else None
    if kind == OperatorKind.BILAPLACE:
        return BoundReport(
            operator=kind.value,
            m=int(m) if float(m).is_integer() else m,
            liyau=bilaplace_leading(geom, m),
            exact=optimal_moment4(inp),
            two_term=two_term,
            degenerate=degenerate,
        )
    liyau = liyau_moment(inp)
    exact = optimal_moment(inp)
    c = geom.n if kind == OperatorKind.LAPLACE else geom.n - 1
    full_second = c / 48.0 * geom.volume / geom.inertia * m
    return BoundReport(
        operator=kind.value,
        m=int(m) if float(m).is_integer() else m,
        liyau=liyau,
        exact=exact,
        melas=melas_moment_bound(inp),
        asymptotic=asymptotic_moment(inp),
        two_term=two_term,
        epsilon=1.0 - (exact - liyau) / full_second,
        degenerate=degenerate,
    )


def scaled_mass_floor(kind: OperatorKind | str, n: int) -> float:
    """Minimum of m_star / m over admissible domains (attained by balls).

    laplace: (n+1) (4 pi)^n / omega_n^2 * (n/(n+2))^(n/2)
    stokes:  the same with an extra 1/(n-1) and (n^2/((n-1)(n+2)))^(n/2)
    """
    kind = OperatorKind(kind)
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    omega = dimension_constants(n).ball_volume
    base = (n + 1) * (4.0 * math.pi) ** n / omega**2
    if kind == OperatorKind.LAPLACE:
        return base * (n / (n + 2.0)) ** (n / 2.0)
    if kind == OperatorKind.STOKES:
        return base / (n - 1.0) * (n**2 / ((n - 1.0) * (n + 2.0))) ** (n / 2.0)
    raise ValueError("scaled-mass floors cover laplace and stokes")


def weyl_asymptote(kind: OperatorKind | str, geom: GeometrySummary, k: float) -> float:
    """Leading Weyl asymptote of the k-th eigenvalue.

    laplace:   ((2 pi)^n / (omega_n |Omega|))^(2/n) k^(2/n)
    stokes:    the same with (n-1)|Omega| in place of |Omega|
    bilaplace: the laplace value squared (k^(4/n) growth)
    """
    kind = OperatorKind(kind)
    n = geom.n
    omega = dimension_constants(n).ball_volume
    base = (2.0 * math.pi) ** n / (omega * geom.volume)
    if kind == OperatorKind.STOKES:
        base /= n - 1.0
    power = 4.0 if kind == OperatorKind.BILAPLACE else 2.0
    return base ** (power / n) * k ** (power / n)
