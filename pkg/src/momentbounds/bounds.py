"""Sharp closed-form bounds on m3 and their extremal two-point distributions.

For any random variable with E X <= 0 and finite fourth moment,

    m3 <= sqrt(m4 m2 - m2^3) <= (4/27)^(1/4) m4^(3/4),

and both bounds are attained exactly by zero-mean two-point distributions.
This module evaluates the bounds, detects tightness, constructs the
attaining distributions, and extracts a support certificate from a
singular Hankel matrix.  Without the sign condition on m1, ``m3_interval``
gives the exact two-sided range of m3 compatible with (m1, m2, m4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .moments import (
    DiscreteDistribution,
    InfeasibleMomentsError,
    MomentVector,
    feasibility,
    hankel,
    hankel_det_closed_form,
    moment_scale,
    moments_from_discrete,
)

__all__ = [
    "QUARTER_CONSTANT",
    "EXTREMAL_U_FACTOR",
    "EXTREMAL_V_FACTOR",
    "BoundResult",
    "MomentInterval",
    "Certificate",
    "ExtremalSpec",
    "bound_trivial",
    "bound_sqrt",
    "bound_quarter",
    "m3_interval",
    "two_point_zero_mean",
    "extremal_from_sigma",
    "certificate_from_hankel",
]

#: The sharp constant (4/27)^(1/4) = 0.6204032394013997...
QUARTER_CONSTANT = (4.0 / 27.0) ** 0.25

#: Support points of the equality case are -u, v with u, v these multiples
#: of the free scale sigma.
EXTREMAL_U_FACTOR = (math.sqrt(3.0) - 1.0) / math.sqrt(2.0)
EXTREMAL_V_FACTOR = (math.sqrt(3.0) + 1.0) / math.sqrt(2.0)

#: Relative tolerance (times moment_scale) classifying a bound as tight.
DEFAULT_TIGHT_TOL = 1e-8

#: Rounding headroom on the m1 <= 0 precondition: zero-mean two-point
#: constructions can carry a one-ulp positive mean after normalization.
M1_PRECONDITION_TOL = 1e-12


def _check_mean_nonpositive(mv: MomentVector) -> None:
    if mv.m1 > M1_PRECONDITION_TOL * max(1.0, math.sqrt(mv.m2)):
        raise ValueError("precondition m1 <= 0 violated (use m3_interval)")


@dataclass(frozen=True)
class BoundResult:
    """A bound on m3 with its slack and, when tight, the attaining witness."""

    bound: float
    slack: float
    tight: bool
    witness: Optional[DiscreteDistribution] = None


@dataclass(frozen=True)
class MomentInterval:
    """Exact range [lo, hi] of m3 values compatible with (m1, m2, m4)."""

    lo: float
    hi: float

    def contains(self, m3: float, widen: float = 0.0) -> bool:
        return self.lo - widen <= m3 <= self.hi + widen


@dataclass(frozen=True)
class Certificate:
    """Null vector of a singular Hankel matrix and the distribution it pins down.

    coeffs is a unit vector (a0, a1, a2) with a0 + a1 X + a2 X^2 = 0 almost
    surely; its real roots are the support points of the unique boundary
    distribution, recovered with weights matching m0 and m1.
    """

    coeffs: tuple[float, float, float]
    roots: tuple[float, ...]
    recovered: DiscreteDistribution


@dataclass(frozen=True)
class ExtremalSpec:
    """Parameters (sigma, u, v) of the distribution attaining the quarter bound."""

    sigma: float
    u: float
    v: float

    @classmethod
    def from_sigma(cls, sigma: float) -> "ExtremalSpec":
        if not (sigma > 0.0 and math.isfinite(sigma)):
            raise ValueError("sigma must be positive")
        return cls(sigma=sigma, u=EXTREMAL_U_FACTOR * sigma, v=EXTREMAL_V_FACTOR * sigma)


def _require_feasible(mv: MomentVector) -> None:
    if not feasibility(mv).psd:
        raise InfeasibleMomentsError("not a moment vector")


def bound_trivial(mv: MomentVector) -> float:
    """The unconditional bound m4^(3/4) (best constant 1 without m1 <= 0)."""
    if mv.m4 < 0.0:
        raise InfeasibleMomentsError("degenerate fourth moment")
    return mv.m4**0.75


def bound_sqrt(
    mv: MomentVector, tol: float = DEFAULT_TIGHT_TOL, check: bool = True
) -> BoundResult:
    """The bound m3 <= sqrt(m4 m2 - m2^3), valid when m1 <= 0.

    Tight exactly for the zero-mean two-point distributions; when tight,
    the witness reconstructs (u, v) from m2 = uv and m3 = uv(v - u).
    ``check=False`` skips the PSD precondition (caller already verified it).
    """
    _check_mean_nonpositive(mv)
    if check:
        _require_feasible(mv)
    scale = mv.scale
    s2 = mv.m4 * mv.m2 - mv.m2**3
    if s2 < -tol * scale:
        raise InfeasibleMomentsError("not a moment vector")
    bound = math.sqrt(max(0.0, s2))
    slack = bound - mv.m3
    tight = abs(slack) <= tol * scale
    witness = _sqrt_witness(mv) if tight else None
    return BoundResult(bound=bound, slack=slack, tight=tight, witness=witness)


def _sqrt_witness(mv: MomentVector) -> DiscreteDistribution:
    # Solve t^2 - (m3/m2) t - m2 = 0 for v > 0, then u = m2 / v.
    if mv.m2 <= 0.0:
        return DiscreteDistribution.point_mass(0.0)
    r = mv.m3 / mv.m2
    v = 0.5 * (r + math.sqrt(r * r + 4.0 * mv.m2))
    u = mv.m2 / v
    return two_point_zero_mean(u, v)


def bound_quarter(
    mv: MomentVector, tol: float = DEFAULT_TIGHT_TOL, check: bool = True
) -> BoundResult:
    """The sharp bound m3 <= (4/27)^(1/4) m4^(3/4), valid when m1 <= 0.

    Obtained from ``bound_sqrt`` by maximizing over m2, with maximizer
    m2 = sqrt(m4/3); tight exactly for ``extremal_from_sigma`` distributions.
    """
    _check_mean_nonpositive(mv)
    if check:
        _require_feasible(mv)
    scale = mv.scale
    bound = QUARTER_CONSTANT * mv.m4**0.75
    slack = bound - mv.m3
    tight = abs(slack) <= tol * scale
    witness = None
    if tight:
        if mv.m2 > 0.0:
            witness = extremal_from_sigma(math.sqrt(mv.m2))
        else:
            witness = DiscreteDistribution.point_mass(0.0)
    return BoundResult(bound=bound, slack=slack, tight=tight, witness=witness)


def m3_interval(
    m1: float, m2: float, m4: float, tol: float = DEFAULT_TIGHT_TOL
) -> MomentInterval:
    """Exact two-sided range of m3 given (m1, m2, m4), any sign of m1.

    The Hankel determinant, as a quadratic in m3, is nonnegative exactly on
    [m1 m2 - sqrt(D), m1 m2 + sqrt(D)] with D = (m2 - m1^2)(m4 - m2^2);
    equivalently Cov(X^2, X)^2 <= Var(X^2) Var(X).
    """
    if not all(math.isfinite(v) for v in (m1, m2, m4)):
        raise ValueError("non-finite moment")
    scale = moment_scale(max(m4, 0.0))
    a = m2 - m1 * m1
    b = m4 - m2 * m2
    if a < -tol * scale or b < -tol * scale:
        raise InfeasibleMomentsError("infeasible (m1, m2, m4) triple")
    d = max(0.0, a) * max(0.0, b)
    if d < 0.0:  # unreachable after clamping, kept for clarity
        d = 0.0
    half = math.sqrt(d)
    center = m1 * m2
    return MomentInterval(lo=center - half, hi=center + half)


def two_point_zero_mean(u: float, v: float) -> DiscreteDistribution:
    """The unique zero-mean distribution on {-u, v}: P(X = v) = u/(u+v).

    Its moments are m2 = uv, m3 = uv(v - u), m4 = uv(u^2 - uv + v^2).
    """
    if not (u > 0.0 and v > 0.0 and math.isfinite(u) and math.isfinite(v)):
        raise ValueError("u, v must be positive")
    s = u + v
    return DiscreteDistribution.from_pairs([(-u, v / s), (v, u / s)])


def extremal_from_sigma(sigma: float) -> DiscreteDistribution:
    """The two-point distribution attaining the quarter bound at scale sigma.

    Moments: m2 = sigma^2, m3 = sqrt(2) sigma^3, m4 = 3 sigma^4, so that
    m3 = (4/27)^(1/4) m4^(3/4) and m2 = sqrt(m4/3) hold with equality.
    """
    spec = ExtremalSpec.from_sigma(sigma)
    return two_point_zero_mean(spec.u, spec.v)


def certificate_from_hankel(
    mv: MomentVector, tol: float = DEFAULT_TIGHT_TOL
) -> Certificate:
    """Extract the boundary distribution from a singular Hankel matrix.

    Requires det H = 0 within tol * scale (and H PSD): then some
    a0 + a1 X + a2 X^2 vanishes almost surely, and the polynomial's real
    roots carry all the mass.  Weights are solved from m0 = 1 and m1.
    """
    rep = feasibility(mv)
    if not rep.psd:
        raise InfeasibleMomentsError("not a moment vector")
    scale = rep.scale
    det = hankel_det_closed_form(mv)
    if abs(det) > tol * scale:
        raise InfeasibleMomentsError(
            "interior point: no finite-support certificate of order <= 2"
        )
    h = hankel(mv).entries
    eigvals, eigvecs = np.linalg.eigh(h)
    null_cut = max(tol * scale, 1e-12 * max(1.0, float(np.abs(h).max())))
    null_cols = [k for k in range(3) if eigvals[k] <= null_cut]
    if not null_cols:
        # PSD with tiny determinant but no eigenvalue under the cut: treat
        # the smallest eigenvector as the null direction.
        null_cols = [0]
    # Prefer a genuine quadratic certificate when the null space allows it.
    best = max(null_cols, key=lambda k: abs(float(eigvecs[2, k])))
    vec = eigvecs[:, best].astype(float)
    for coord in vec:
        if abs(coord) > 1e-12:
            if coord < 0.0:
                vec = -vec
            break
    a0, a1, a2 = (float(c) for c in vec)
    roots = _polynomial_support(a0, a1, a2)
    recovered = _recover_distribution(mv, roots)
    return Certificate(coeffs=(a0, a1, a2), roots=roots, recovered=recovered)


def _polynomial_support(a0: float, a1: float, a2: float) -> tuple[float, ...]:
    coeff_norm = max(abs(a0), abs(a1), abs(a2))
    if abs(a2) > 1e-10 * coeff_norm:
        disc = a1 * a1 - 4.0 * a2 * a0
        disc_scale = max(1.0, a1 * a1 + 4.0 * abs(a2 * a0))
        if disc < -1e-8 * disc_scale:
            raise InfeasibleMomentsError("inconsistent null vector")
        disc = max(0.0, disc)
        sq = math.sqrt(disc)
        r1 = (-a1 - sq) / (2.0 * a2)
        r2 = (-a1 + sq) / (2.0 * a2)
        lo, hi = min(r1, r2), max(r1, r2)
        if hi - lo <= 1e-10 * max(1.0, abs(lo), abs(hi)):
            return ((lo + hi) / 2.0,)
        return (lo, hi)
    if abs(a1) > 1e-10 * coeff_norm:
        return (-a0 / a1,)
    raise InfeasibleMomentsError("inconsistent null vector")


def _recover_distribution(
    mv: MomentVector, roots: tuple[float, ...]
) -> DiscreteDistribution:
    if len(roots) == 1:
        return DiscreteDistribution.point_mass(roots[0])
    x1, x2 = roots
    p1 = (x2 - mv.m1) / (x2 - x1)
    p1 = min(1.0, max(0.0, p1))
    return DiscreteDistribution.from_pairs([(x1, p1), (x2, 1.0 - p1)])
