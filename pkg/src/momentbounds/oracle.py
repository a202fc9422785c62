"""Brute-force verification of the closed-form bounds.

``oracle_max_m3`` maximizes m3 over finitely supported distributions on a
grid subject to mass, mean, and fourth-moment constraints by exhaustive
enumeration of small supports: every vertex of the underlying linear
program is supported on at most as many atoms as there are active
constraints, so supports of size <= 3 suffice.  The enumeration never
consults the closed-form bounds, which makes it an independent check of
the sharp constant (4/27)^(1/4).

``random_falsifier`` hammers the bounds with random discrete distributions
and counts violations (expected: none).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import bound_quarter, bound_sqrt, m3_interval
from .moments import (
    DiscreteDistribution,
    InfeasibleMomentsError,
    feasibility,
    moment_scale,
    moments_from_discrete,
)

__all__ = [
    "OracleConfig",
    "OracleResult",
    "FalsifierReport",
    "oracle_max_m3",
    "oracle_extreme_m3_given",
    "random_falsifier",
]

#: Weights from the small linear solves may round slightly negative;
#: anything above this magnitude is a genuine infeasibility.
WEIGHT_CLAMP = 1e-12

#: Slack allowed on the mean inequality constraint.
M1_SLACK_TOL = 1e-10

#: Slack allowed on the fourth-moment equality (times moment_scale).
M4_EQ_TOL = 1e-10


@dataclass(frozen=True)
class OracleConfig:
    """Grid and constraint parameters for the enumeration."""

    grid_lo: float = -3.0
    grid_hi: float = 3.0
    grid_step: float = 0.01
    m4_target: float = 1.0
    m1_max: float = 0.0
    max_support: int = 3

    def __post_init__(self) -> None:
        if not (self.grid_step > 0.0 and math.isfinite(self.grid_step)):
            raise ValueError("grid_step must be positive")
        if not self.grid_lo < self.grid_hi:
            raise ValueError("grid_lo must be below grid_hi")
        if self.max_support not in (2, 3):
            raise ValueError("max_support must be 2 or 3")
        if not (self.m4_target > 0.0 and math.isfinite(self.m4_target)):
            raise ValueError("m4_target must be positive")
        g = self.grid()
        if not ((g < 0.0).any() and (g > 0.0).any()):
            raise InfeasibleMomentsError(
                "infeasible configuration: grid needs negative and positive points"
            )

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.grid_hi - self.grid_lo) / self.grid_step + 1e-9)) + 1
        return self.grid_lo + self.grid_step * np.arange(n)


@dataclass(frozen=True)
class OracleResult:
    """Maximized m3 with the optimizing grid distribution."""

    max_m3: float
    argmax: DiscreteDistribution
    constraint_residuals: tuple[float, float, float]
    candidates_examined: int


class _Best:
    """Running maximum with a deterministic tie-break.

    Ties on the objective go to the lexicographically smallest sorted
    support, so the result is independent of enumeration partitioning.
    """

    def __init__(self) -> None:
        self.value: Optional[float] = None
        self.support: Optional[tuple[float, ...]] = None
        self.weights: Optional[tuple[float, ...]] = None

    def offer(
        self, value: float, support: tuple[float, ...], weights: tuple[float, ...]
    ) -> None:
        if (
            self.value is None
            or value > self.value
            or (value == self.value and support < self.support)
        ):
            self.value = value
            self.support = support
            self.weights = weights


def _offer_chunk(
    best: _Best,
    m3: np.ndarray,
    mask: np.ndarray,
    supports: tuple[np.ndarray, ...],
    weights: tuple[np.ndarray, ...],
) -> None:
    if not mask.any():
        return
    vals = np.where(mask, m3, -np.inf)
    vmax = float(vals.max())
    for idx in np.flatnonzero(vals == vmax):
        best.offer(
            vmax,
            tuple(float(s[idx]) for s in supports),
            tuple(float(w[idx]) for w in weights),
        )


def oracle_max_m3(cfg: OracleConfig) -> OracleResult:
    """Maximize m3 over grid distributions with sum p = 1, m1 <= m1_max, m4 = m4_target.

    Enumerates supports of size 1 and 2 (mean constraint slack or tight)
    and, when max_support = 3, size-3 supports with the mean constraint
    active; these cover every vertex of the LP.  Deterministic.
    """
    g = cfg.grid()
    q = g**4
    c = g**3
    target = cfg.m4_target
    t = cfg.m1_max
    scale = moment_scale(target)
    m4_tol = M4_EQ_TOL * scale
    best = _Best()
    examined = 0

    # Size 1: the whole mass on one grid point.
    mask1 = (np.abs(q - target) <= m4_tol) & (g <= t + M1_SLACK_TOL)
    examined += g.size
    _offer_chunk(best, c, mask1, (g,), (np.ones_like(g),))

    # Size 2, constraints {mass, m4}; mean checked as an inequality.
    ii, jj = np.triu_indices(g.size, 1)
    xi, xj = g[ii], g[jj]
    qi, qj = q[ii], q[jj]
    den = qi - qj
    with np.errstate(divide="ignore", invalid="ignore"):
        pi = (target - qj) / den
        pj = 1.0 - pi
        m1 = pi * xi + pj * xj
        m3 = pi * c[ii] + pj * c[jj]
        r4 = pi * qi + pj * qj - target
    mask2 = (
        np.isfinite(pi)
        & (pi >= -WEIGHT_CLAMP)
        & (pj >= -WEIGHT_CLAMP)
        & (m1 <= t + M1_SLACK_TOL)
        & (np.abs(r4) <= m4_tol)
    )
    examined += ii.size
    _offer_chunk(best, m3, mask2, (xi, xj), (pi, pj))

    # Size 2, constraints {mass, mean}; m4 must then match by accident.
    with np.errstate(divide="ignore", invalid="ignore"):
        pi = (xj - t) / (xj - xi)
        pj = 1.0 - pi
        m3 = pi * c[ii] + pj * c[jj]
        r4 = pi * qi + pj * qj - target
    mask2b = (
        np.isfinite(pi)
        & (pi >= -WEIGHT_CLAMP)
        & (pj >= -WEIGHT_CLAMP)
        & (np.abs(r4) <= m4_tol)
    )
    examined += ii.size
    _offer_chunk(best, m3, mask2b, (xi, xj), (pi, pj))

    if cfg.max_support >= 3:
        examined += _enumerate_triples_mean_tight(cfg, g, q, c, best)

    if best.value is None:
        raise InfeasibleMomentsError("infeasible configuration")

    argmax = _distribution_from_candidate(best.support, best.weights)
    mv = moments_from_discrete(argmax)
    residuals = (mv.m0 - 1.0, mv.m1 - t, mv.m4 - target)
    return OracleResult(
        max_m3=float(best.value),
        argmax=argmax,
        constraint_residuals=residuals,
        candidates_examined=examined,
    )


def _enumerate_triples_mean_tight(
    cfg: OracleConfig, g: np.ndarray, q: np.ndarray, c: np.ndarray, best: _Best
) -> int:
    """Supports {x1 < x2 < x3} with constraints {mass, mean = m1_max, m4}.

    Solved per triple by Cramer's rule, vectorized over (x2, x3) for each
    x1.  With weights >= 0 the mean constraint needs x1 <= m1_max <= x3,
    which prunes most first atoms.
    """
    target = cfg.m4_target
    t = cfg.m1_max
    m4_tol = M4_EQ_TOL * moment_scale(target)
    n = g.size
    examined = 0
    for i in range(n - 2):
        x1 = g[i]
        if x1 > t + M1_SLACK_TOL:
            break
        jj, kk = np.triu_indices(n - i - 1, 1)
        jj += i + 1
        kk += i + 1
        keep = g[kk] >= t - M1_SLACK_TOL
        jj, kk = jj[keep], kk[keep]
        if jj.size == 0:
            continue
        x2, x3 = g[jj], g[kk]
        q1, q2, q3 = q[i], q[jj], q[kk]
        det = (x2 * q3 - x3 * q2) - (x1 * q3 - x3 * q1) + (x1 * q2 - x2 * q1)
        d1 = (x2 * q3 - x3 * q2) - (t * q3 - x3 * target) + (t * q2 - x2 * target)
        d2 = (t * q3 - x3 * target) - (x1 * q3 - x3 * q1) + (x1 * target - t * q1)
        d3 = (x2 * target - t * q2) - (x1 * target - t * q1) + (x1 * q2 - x2 * q1)
        with np.errstate(divide="ignore", invalid="ignore"):
            p1 = d1 / det
            p2 = d2 / det
            p3 = d3 / det
            m1 = p1 * x1 + p2 * x2 + p3 * x3
            r4 = p1 * q1 + p2 * q2 + p3 * q3 - target
            m3 = p1 * c[i] + p2 * c[jj] + p3 * c[kk]
        mask = (
            np.isfinite(p1)
            & np.isfinite(p2)
            & np.isfinite(p3)
            & (p1 >= -WEIGHT_CLAMP)
            & (p2 >= -WEIGHT_CLAMP)
            & (p3 >= -WEIGHT_CLAMP)
            & (m1 <= t + M1_SLACK_TOL)
            & (np.abs(r4) <= m4_tol)
        )
        examined += jj.size
        _offer_chunk(
            best,
            m3,
            mask,
            (np.full_like(x2, x1), x2, x3),
            (p1, p2, p3),
        )
    return examined


def _distribution_from_candidate(
    support: tuple[float, ...], weights: tuple[float, ...]
) -> DiscreteDistribution:
    pairs = [(x, max(0.0, p)) for x, p in zip(support, weights)]
    return DiscreteDistribution.from_pairs(pairs)


def oracle_extreme_m3_given(
    m1: float, m2: float, m4: float, cfg: OracleConfig
) -> tuple[float, float]:
    """Observed min and max of m3 over grid distributions matching (m1, m2, m4).

    Four constraints with at most three atoms cannot always be met exactly
    on a grid, so supports solving {mass, m1, m2} exactly are admitted when
    the m4 residual is within a grid-resolution tolerance.  The returned
    range brackets ``m3_interval(m1, m2, m4)`` from inside up to that
    resolution.
    """
    m3_interval(m1, m2, m4)  # validates feasibility of the triple
    g = cfg.grid()
    s = g**2
    q = g**4
    c = g**3
    admit4 = max(1e-9, 0.25 * cfg.grid_step) * max(1.0, abs(m4))
    admit_lo = max(1e-9, 0.25 * cfg.grid_step)
    lo_best = np.inf
    hi_best = -np.inf
    found = False

    # Size 1: x must match all of m1, m2, m4.
    mask = (
        (np.abs(g - m1) <= admit_lo)
        & (np.abs(s - m2) <= admit_lo * max(1.0, abs(m2)))
        & (np.abs(q - m4) <= admit4)
    )
    if mask.any():
        found = True
        lo_best = min(lo_best, float(c[mask].min()))
        hi_best = max(hi_best, float(c[mask].max()))

    # Size 2: solve {mass, m1}; admit on m2 and m4 residuals.
    ii, jj = np.triu_indices(g.size, 1)
    xi, xj = g[ii], g[jj]
    with np.errstate(divide="ignore", invalid="ignore"):
        pi = (xj - m1) / (xj - xi)
        pj = 1.0 - pi
        r2 = pi * s[ii] + pj * s[jj] - m2
        r4 = pi * q[ii] + pj * q[jj] - m4
        m3 = pi * c[ii] + pj * c[jj]
    mask = (
        np.isfinite(pi)
        & (pi >= -WEIGHT_CLAMP)
        & (pj >= -WEIGHT_CLAMP)
        & (np.abs(r2) <= admit_lo * max(1.0, abs(m2)))
        & (np.abs(r4) <= admit4)
    )
    if mask.any():
        found = True
        lo_best = min(lo_best, float(m3[mask].min()))
        hi_best = max(hi_best, float(m3[mask].max()))

    # Size 3: solve {mass, m1, m2} exactly (Vandermonde, always regular
    # for distinct points); admit on the m4 residual.
    if cfg.max_support >= 3:
        n = g.size
        for i in range(n - 2):
            x1 = g[i]
            jj, kk = np.triu_indices(n - i - 1, 1)
            jj += i + 1
            kk += i + 1
            x2, x3 = g[jj], g[kk]
            s1, s2v, s3v = s[i], s[jj], s[kk]
            det = (x2 - x1) * (x3 - x1) * (x3 - x2)
            d1 = (x2 * s3v - x3 * s2v) - (m1 * s3v - x3 * m2) + (m1 * s2v - x2 * m2)
            d2 = (m1 * s3v - x3 * m2) - (x1 * s3v - x3 * s1) + (x1 * m2 - m1 * s1)
            d3 = (x2 * m2 - m1 * s2v) - (x1 * m2 - m1 * s1) + (x1 * s2v - x2 * s1)
            with np.errstate(divide="ignore", invalid="ignore"):
                p1 = d1 / det
                p2 = d2 / det
                p3 = d3 / det
                r4 = p1 * q[i] + p2 * q[jj] + p3 * q[kk] - m4
                m3 = p1 * c[i] + p2 * c[jj] + p3 * c[kk]
            mask = (
                np.isfinite(p1)
                & np.isfinite(p2)
                & np.isfinite(p3)
                & (p1 >= -WEIGHT_CLAMP)
                & (p2 >= -WEIGHT_CLAMP)
                & (p3 >= -WEIGHT_CLAMP)
                & (np.abs(r4) <= admit4)
            )
            if mask.any():
                found = True
                lo_best = min(lo_best, float(m3[mask].min()))
                hi_best = max(hi_best, float(m3[mask].max()))

    if not found:
        raise InfeasibleMomentsError("grid cannot represent the moment triple")
    return lo_best, hi_best


@dataclass(frozen=True)
class FalsifierReport:
    """Violation counts from randomized stress-testing of the bounds."""

    trials: int
    seed: int
    atom_budget: int
    eq_sqrt_violations: int
    eq_quarter_violations: int
    interval_violations: int
    psd_violations: int
    worst_scaled_slack: float

    @property
    def total_violations(self) -> int:
        return (
            self.eq_sqrt_violations
            + self.eq_quarter_violations
            + self.interval_violations
            + self.psd_violations
        )


def random_falsifier(
    trials: int, seed: int, atom_budget: int = 8, tol: float = 1e-9
) -> FalsifierReport:
    """Stress-test the bounds on random discrete distributions.

    Each trial draws up to ``atom_budget`` atoms uniform on [-5, 5] with
    Dirichlet(1) weights, shifted left so the mean is (just barely)
    nonpositive; shifting rather than rejection keeps draws close to the
    m1 = 0 boundary where the bounds are sharp.  Fully reproducible from
    ``seed``.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    if atom_budget < 2:
        raise ValueError("atom_budget must be at least 2")
    rng = np.random.default_rng(seed)
    viol_sqrt = viol_quarter = viol_interval = viol_psd = 0
    worst = np.inf
    for _ in range(trials):
        k = int(rng.integers(2, atom_budget + 1))
        xs = rng.uniform(-5.0, 5.0, size=k)
        ws = rng.dirichlet(np.ones(k))
        mean = float(xs @ ws)
        jitter = float(rng.uniform(1e-9, 1e-6))
        xs = xs - max(0.0, mean) - jitter
        dist = DiscreteDistribution.from_pairs(zip(xs, ws))
        mv = moments_from_discrete(dist)
        scale = mv.scale
        cut = tol * scale
        if not feasibility(mv).psd:
            viol_psd += 1
        r1 = bound_sqrt(mv, check=False)
        r2 = bound_quarter(mv, check=False)
        iv = m3_interval(mv.m1, mv.m2, mv.m4)
        margin = min(r1.slack, r2.slack, mv.m3 - iv.lo, iv.hi - mv.m3)
        worst = min(worst, margin / scale)
        if r1.slack < -cut:
            viol_sqrt += 1
        if r2.slack < -cut:
            viol_quarter += 1
        if not iv.contains(mv.m3, widen=cut):
            viol_interval += 1
    return FalsifierReport(
        trials=trials,
        seed=seed,
        atom_budget=atom_budget,
        eq_sqrt_violations=viol_sqrt,
        eq_quarter_violations=viol_quarter,
        interval_violations=viol_interval,
        psd_violations=viol_psd,
        worst_scaled_slack=float(worst),
    )
