"""Gradient-constrained radial minimization behind two-term eigenvalue bounds.

The central object is the variational problem

    minimize   sigma_n * integral_0^inf r^(n+1) F(r) dr
    over       F : [0, inf) -> [0, M], nonincreasing, with -F' <= L,
    subject to sigma_n * integral_0^inf r^(n-1) F(r) dr = m,

where sigma_n is the area of the unit sphere in R^n.  Dropping the slope
constraint gives the classical Berezin-Li-Yau quantity; keeping it gives a
strictly larger minimum whose value this module computes in closed form.

The minimizer is a plateau-ramp profile: equal to M on [0, s], decaying
with the maximal slope L on [s, s + M/L], and zero beyond.  The plateau
length is fixed by the mass constraint through the scaled mass

    m_star = m (n+1) L^n / (omega_n M^(n+1)),

which reduces the constraint to (t+1)^(n+1) - t^(n+1) = m_star for the
dimensionless plateau t = s L / M.  For m_star < 1 the cap is inactive and
the minimizer degenerates to a triangular profile h - L r with h < M.

The same machinery with the weight r^(n+3) (moment power 4) serves
fourth-order operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class DimensionConstants:
    """Unit-ball volume and unit-sphere area in R^n."""

    n: int
    ball_volume: float
    sphere_area: float


def dimension_constants(n: int) -> DimensionConstants:
    """Return omega_n = pi^(n/2) / Gamma(n/2 + 1) and sigma_n = n * omega_n."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    omega = math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    return DimensionConstants(n=n, ball_volume=omega, sphere_area=n * omega)


@dataclass(frozen=True)
class MinimizationInput:
    """Data of one minimization instance.

    cap is the pointwise bound M, slope the Lipschitz bound L, and mass the
    prescribed value m of sigma_n * integral r^(n-1) F dr.
    """

    n: int
    cap: float
    slope: float
    mass: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"dimension must be >= 2, got {self.n}")
        if not (self.cap > 0 and math.isfinite(self.cap)):
            raise ValueError(f"cap must be positive and finite, got {self.cap}")
        if not (self.slope > 0 and math.isfinite(self.slope)):
            raise ValueError(f"slope must be positive and finite, got {self.slope}")
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")


def scaled_mass(inp: MinimizationInput) -> float:
    """Dimensionless mass m_star = m (n+1) L^n / (omega_n M^(n+1))."""
    omega = dimension_constants(inp.n).ball_volume
    return inp.mass * (inp.n + 1) * inp.slope**inp.n / (omega * inp.cap ** (inp.n + 1))


def power_diff(t: float, k: int) -> float:
    """(t+1)^k - t^k evaluated as sum_{j<k} C(k,j) t^j.

    The all-positive binomial form keeps full relative precision for large t,
    where the naive difference loses up to k*log10(t) digits.
    """
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    acc = 0.0
    for j in range(k - 1, -1, -1):
        acc = acc * t + math.comb(k, j)
    return acc


def solve_plateau(n: int, m_scaled: float, rel_tol: float = 1e-12, max_iter: int = 200) -> float:
    """Solve (t+1)^(n+1) - t^(n+1) = m_scaled for the scaled plateau t >= 0.

    Uses safeguarded Newton iteration on the bracket
    [max(x-1, 0), x] with x = (m_scaled/(n+1))^(1/n); both ends bound the
    root for every m_scaled >= 1.  Falls back to bisection whenever a Newton
    step leaves the bracket.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if not m_scaled >= 1.0:
        raise ValueError(
            f"scaled mass must be >= 1 for a plateau (cap active), got {m_scaled}"
        )
    k = n + 1
    x = (m_scaled / k) ** (1.0 / n)
    lo = max(x - 1.0, 0.0)
    hi = x
    if power_diff(lo, k) >= m_scaled:
        return lo
    t = hi
    for _ in range(max_iter):
        f = power_diff(t, k) - m_scaled
        if f == 0.0:
            return t
        if f > 0.0:
            hi = t
        else:
            lo = t
        # derivative of (t+1)^k - t^k is k * ((t+1)^n - t^n)
        nxt = t - f / (k * power_diff(t, n))
        if not (lo <= nxt <= hi) or not math.isfinite(nxt):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - t) <= rel_tol * max(1.0, abs(nxt)):
            return nxt
        t = nxt
    return t


def closed_form_plateau(n: int, m_scaled: float) -> float:
    """Closed-form root of (t+1)^(n+1) - t^(n+1) = m_scaled for n in {2, 3, 4}."""
    if not m_scaled >= 1.0:
        raise ValueError(
            f"scaled mass must be >= 1 for a plateau (cap active), got {m_scaled}"
        )
    if n == 2:
        return math.sqrt(m_scaled / 3.0 - 1.0 / 12.0) - 0.5
    if n == 3:
        # depressed cubic 4*eta^3 + eta = m_scaled for eta = t + 1/2; the
        # negative Cardano branch is rewritten as -(1/3)/(m + R)^(1/3) to
        # avoid cancellation for large m_scaled
        r = math.sqrt(m_scaled * m_scaled + 1.0 / 27.0)
        a = (m_scaled + r) ** (1.0 / 3.0)
        return 0.5 * (a - 1.0 / (3.0 * a)) - 0.5
    if n == 4:
        # biquadratic 5*eta^4 + (5/2)*eta^2 + 5/16 = m_scaled + 1/16
        inner = math.sqrt(20.0 * m_scaled + 5.0) / 10.0
        return math.sqrt(inner - 0.25) - 0.5
    raise ValueError(f"closed-form roots exist for n in {{2, 3, 4}}, got n={n}")


@dataclass(frozen=True)
class MinimizerProfile:
    """Optimal radial profile, either plateau-ramp or triangular.

    kind is "plateau-ramp" (cap active: M on [0, plateau], maximal decay to
    zero after) or "triangular" (cap inactive: peak - slope*r).  plateau and
    scaled_plateau are set only for the former, peak only for the latter.
    """

    kind: str
    cap: float
    slope: float
    plateau: float | None = None
    scaled_plateau: float | None = None
    peak: float | None = None

    @property
    def support_radius(self) -> float:
        if self.kind == "plateau-ramp":
            return self.plateau + self.cap / self.slope
        return self.peak / self.slope

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Radii where the profile changes analytic branch."""
        if self.kind == "plateau-ramp":
            return (self.plateau, self.support_radius)
        return (self.support_radius,)

    def value(self, r: float) -> float:
        if r < 0:
            raise ValueError(f"radius must be >= 0, got {r}")
        if self.kind == "plateau-ramp":
            if r <= self.plateau:
                return self.cap
            return max(self.cap - self.slope * (r - self.plateau), 0.0)
        return max(self.peak - self.slope * r, 0.0)


def minimizer_profile(inp: MinimizationInput) -> MinimizerProfile:
    """Optimal profile for the given instance (solves the plateau equation)."""
    m_sc = scaled_mass(inp)
    if m_sc >= 1.0:
        t = solve_plateau(inp.n, m_sc)
        return MinimizerProfile(
            kind="plateau-ramp",
            cap=inp.cap,
            slope=inp.slope,
            plateau=t * inp.cap / inp.slope,
            scaled_plateau=t,
        )
    peak = inp.cap * m_sc ** (1.0 / (inp.n + 1))
    return MinimizerProfile(kind="triangular", cap=inp.cap, slope=inp.slope, peak=peak)


def profile_moment(gamma: float, cap: float, slope: float, scaled_plateau: float) -> float:
    """integral_0^inf r^gamma Phi(r) dr for the plateau-ramp profile.

    Equals M^(gamma+2) / ((gamma+1)(gamma+2) L^(gamma+1)) *
    ((t+1)^(gamma+2) - t^(gamma+2)); gamma must make the powers integral
    when the stable binomial form is used, which holds for the moments
    gamma = n-1, n+1, n+3 needed here.
    """
    if gamma < 0:
        raise ValueError(f"moment exponent must be >= 0, got {gamma}")
    k = gamma + 2
    k_int = round(k)
    if abs(k - k_int) < 1e-12:
        diff = power_diff(scaled_plateau, k_int)
    else:
        diff = (scaled_plateau + 1.0) ** k - scaled_plateau**k
    return cap**k / ((gamma + 1.0) * k * slope ** (gamma + 1.0)) * diff


def profile_moment_of(profile: MinimizerProfile, gamma: float) -> float:
    """integral_0^inf r^gamma F(r) dr for either profile kind."""
    if profile.kind == "plateau-ramp":
        return profile_moment(gamma, profile.cap, profile.slope, profile.scaled_plateau)
    return profile_moment(gamma, profile.peak, profile.slope, 0.0)


def _weighted_value(inp: MinimizationInput, gamma: int) -> float:
    """sigma_n * integral r^gamma F for the optimal profile, stable branch split."""
    cons = dimension_constants(inp.n)
    profile = minimizer_profile(inp)
    return cons.sphere_area * profile_moment_of(profile, gamma)


def optimal_moment(inp: MinimizationInput) -> float:
    """Minimum of sigma_n * integral r^(n+1) F dr under cap, slope, and mass.

    For m_star >= 1 this is
    sigma_n M^(n+3) / ((n+2)(n+3) L^(n+2)) * ((t+1)^(n+3) - t^(n+3));
    for m_star < 1 the same expression with the triangular peak in place of
    the cap and t = 0.
    """
    return _weighted_value(inp, inp.n + 1)


def optimal_moment4(inp: MinimizationInput) -> float:
    """Minimum of sigma_n * integral r^(n+3) F dr (moment power 4 variant)."""
    return _weighted_value(inp, inp.n + 3)


def liyau_moment(inp: MinimizationInput) -> float:
    """Berezin-Li-Yau value: the minimum when the slope constraint is dropped.

    Equals n/(n+2) * (1 / (omega_n M))^(2/n) * m^(1 + 2/n); the minimizer is
    then the indicator of a ball with the prescribed mass.
    """
    omega = dimension_constants(inp.n).ball_volume
    n = inp.n
    return n / (n + 2.0) * (1.0 / (omega * inp.cap)) ** (2.0 / n) * inp.mass ** (1.0 + 2.0 / n)


def melas_moment_bound(inp: MinimizationInput) -> float:
    """Melas-type lower bound: Li-Yau value plus M^2 m / (6 (n+2) L^2).

    A strict lower bound for the constrained minimum, weaker than the exact
    value for every admissible input.
    """
    n = inp.n
    return liyau_moment(inp) + inp.cap**2 * inp.mass / (6.0 * (n + 2.0) * inp.slope**2)


def asymptotic_moment(inp: MinimizationInput) -> float:
    """Three-term large-mass expansion of the constrained minimum.

    liyau + (n/12) (M^2/L^2) m
          - n(n-1)(3n+2)/1440 * M^4 (M omega_n)^(2/n) / L^4 * m^(1 - 2/n).
    Exact for n = 2 (when the cap is active); a strict lower bound for n >= 3.
    """
    n = inp.n
    omega = dimension_constants(n).ball_volume
    second = n / 12.0 * inp.cap**2 / inp.slope**2 * inp.mass
    third = (
        n * (n - 1) * (3 * n + 2) / 1440.0
        * inp.cap**4 * (inp.cap * omega) ** (2.0 / n) / inp.slope**4
        * inp.mass ** (1.0 - 2.0 / n)
    )
    return liyau_moment(inp) + second - third


def beta_moment_bound(inp: MinimizationInput, beta: float) -> float:
    """Two-term lower bound liyau + beta * (n/12) (M^2/L^2) m.

    Valid for dimension-dependent safety factors beta < 1; the certified
    per-dimension values live in the operator layer.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"safety factor must be in (0, 1], got {beta}")
    n = inp.n
    return liyau_moment(inp) + beta * n / 12.0 * inp.cap**2 / inp.slope**2 * inp.mass


def shifted_root_expansion(n: int, m_scaled: float, terms: int = 3) -> float:
    """Large-mass expansion of eta = t + 1/2 in powers of x = (m_scaled/(n+1))^(1/n).

    eta = x - (n-1)/24 * x^(-1) + (n-1)(n-3)(2n+1)/5760 * x^(-3) + O(x^(-5)).
    The x^(-3) coefficient reproduces the exact quadratic and biquadratic
    roots for n = 2 and n = 4 and vanishes for n = 3, as the depressed cubic
    requires.
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if terms not in (1, 2, 3):
        raise ValueError(f"terms must be 1, 2, or 3, got {terms}")
    if not m_scaled >= 1.0:
        raise ValueError(f"scaled mass must be >= 1, got {m_scaled}")
    x = (m_scaled / (n + 1.0)) ** (1.0 / n)
    eta = x
    if terms >= 2:
        eta -= (n - 1) / 24.0 / x
    if terms >= 3:
        eta += (n - 1) * (n - 3) * (2 * n + 1) / 5760.0 / x**3
    return eta


def planar_closed_moment(cap: float, slope: float, mass: float) -> float:
    """Independent n = 2 closed form of the constrained minimum.

    m^2/(2 pi M) + M^2 m / (6 L^2) - pi M^5 / (90 L^4), valid while the cap
    is active (m_star >= 1); used as a cross-check for the root-based route.
    """
    return (
        mass**2 / (2.0 * math.pi * cap)
        + cap**2 * mass / (6.0 * slope**2)
        - math.pi * cap**5 / (90.0 * slope**4)
    )


def planar_closed_moment4(cap: float, slope: float, mass: float) -> float:
    """Independent n = 2 closed form for moment power 4.

    m^3/(3 pi^2 M^2) + M m^2 / (3 pi L^2) - pi M^7 / (567 L^6), valid while
    the cap is active.
    """
    return (
        mass**3 / (3.0 * math.pi**2 * cap**2)
        + cap * mass**2 / (3.0 * math.pi * slope**2)
        - math.pi * cap**7 / (567.0 * slope**6)
    )
