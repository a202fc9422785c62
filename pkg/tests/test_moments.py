import math

import numpy as np
import pytest

from momentbounds import (
    DiscreteDistribution,
    InfeasibleMomentsError,
    MomentVector,
    abs_third_moment,
    feasibility,
    hankel,
    hankel_det_closed_form,
    moments_from_discrete,
    moments_from_samples,
    scale_moments,
)


def dist(*pairs):
    return DiscreteDistribution.from_pairs(pairs)


class TestMomentVector:
    def test_m0_forced_to_one(self):
        mv = MomentVector(1.0 + 1e-13, 0.0, 1.0, 0.0, 1.0)
        assert mv.m0 == 1.0

    def test_rejects_bad_m0(self):
        with pytest.raises(InfeasibleMomentsError):
            MomentVector(0.8, 0.0, 1.0, 0.0, 1.0)

    def test_rejects_negative_even_moments(self):
        with pytest.raises(InfeasibleMomentsError):
            MomentVector(1.0, 0.0, -1.0, 0.0, 1.0)
        with pytest.raises(InfeasibleMomentsError):
            MomentVector(1.0, 0.0, 1.0, 0.0, -1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            MomentVector(1.0, math.nan, 1.0, 0.0, 1.0)


class TestDiscreteDistribution:
    def test_sorted_and_normalized(self):
        d = dist((2.0, 0.25), (-1.0, 0.75))
        assert d.atoms == ((-1.0, 0.75), (2.0, 0.25))

    def test_merges_duplicates(self):
        d = dist((1.0, 0.25), (1.0, 0.25), (-1.0, 0.5))
        assert d.atoms == ((-1.0, 0.5), (1.0, 0.5))

    def test_drops_zero_weights(self):
        d = dist((0.0, 1.0), (5.0, 0.0))
        assert d.atoms == ((0.0, 1.0),)

    def test_rejects_bad_weight_sum(self):
        with pytest.raises(ValueError, match="sum to 1"):
            dist((0.0, 0.8))

    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError, match="negative"):
            dist((0.0, 1.2), (1.0, -0.2))

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="empty"):
            DiscreteDistribution.from_pairs([])


class TestMomentsFromDiscrete:
    def test_point_mass_at_zero(self):
        # exercises the 0^0 = 1 convention for m0
        mv = moments_from_discrete(dist((0.0, 1.0)))
        assert mv.as_tuple() == (1.0, 0.0, 0.0, 0.0, 0.0)

    def test_rademacher(self):
        mv = moments_from_discrete(dist((-1.0, 0.5), (1.0, 0.5)))
        assert mv.as_tuple() == (1.0, 0.0, 1.0, 0.0, 1.0)

    def test_two_point_u1_v2(self):
        # zero-mean on {-1, 2}: m2 = uv, m3 = uv(v-u), m4 = uv(u^2 - uv + v^2)
        mv = moments_from_discrete(dist((-1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0)))
        assert mv.m1 == pytest.approx(0.0, abs=1e-15)
        assert mv.m2 == pytest.approx(2.0, rel=1e-15)
        assert mv.m3 == pytest.approx(2.0, rel=1e-15)
        assert mv.m4 == pytest.approx(6.0, rel=1e-15)


class TestMomentsFromSamples:
    def test_zeros(self):
        assert moments_from_samples([0.0, 0.0, 0.0]).as_tuple() == (1.0, 0.0, 0.0, 0.0, 0.0)

    def test_pm_one(self):
        assert moments_from_samples([-1.0, 1.0]).as_tuple() == (1.0, 0.0, 1.0, 0.0, 1.0)

    def test_one_two_three(self):
        mv = moments_from_samples([1.0, 2.0, 3.0])
        assert mv.m1 == pytest.approx(2.0, rel=1e-15)
        assert mv.m2 == pytest.approx(14.0 / 3.0, rel=1e-15)
        assert mv.m3 == pytest.approx(12.0, rel=1e-15)
        assert mv.m4 == pytest.approx(98.0 / 3.0, rel=1e-15)

    def test_matches_empirical_distribution(self):
        samples = [0.3, -1.7, 2.5, 0.9]
        empirical = dist(*((x, 0.25) for x in samples))
        assert moments_from_samples(samples) == moments_from_discrete(empirical)

    def test_errors(self):
        with pytest.raises(ValueError, match="empty sample set"):
            moments_from_samples([])
        with pytest.raises(ValueError, match="non-finite sample"):
            moments_from_samples([1.0, math.inf])


class TestAbsThirdMoment:
    def test_examples(self):
        assert abs_third_moment(dist((-1.0, 0.5), (1.0, 0.5))) == 1.0
        assert abs_third_moment(dist((0.0, 1.0))) == 0.0
        assert abs_third_moment(dist((-2.0, 0.25), (1.0, 0.75))) == pytest.approx(2.75)

    def test_dominates_m3(self):
        d = dist((-2.0, 0.25), (1.0, 0.75))
        mv = moments_from_discrete(d)
        assert abs_third_moment(d) >= abs(mv.m3)


class TestHankel:
    def test_rademacher(self):
        h = hankel(MomentVector(1, 0, 1, 0, 1)).entries
        np.testing.assert_array_equal(h, [[1, 0, 1], [0, 1, 0], [1, 0, 1]])

    def test_point_mass(self):
        h = hankel(MomentVector(1, 0, 0, 0, 0)).entries
        np.testing.assert_array_equal(h, [[1, 0, 0], [0, 0, 0], [0, 0, 0]])

    def test_two_point(self):
        h = hankel(MomentVector(1, 0, 2, 2, 6)).entries
        np.testing.assert_array_equal(h, [[1, 0, 2], [0, 2, 2], [2, 2, 6]])
        np.testing.assert_array_equal(h, h.T)

    def test_entries_read_only(self):
        h = hankel(MomentVector(1, 0, 1, 0, 1))
        with pytest.raises(ValueError):
            h.entries[0, 0] = 5.0


class TestFeasibility:
    def test_rademacher_boundary(self):
        rep = feasibility(MomentVector(1, 0, 1, 0, 1))
        assert rep.psd
        assert rep.det == pytest.approx(0.0, abs=1e-14)

    def test_infeasible_vector(self):
        rep = feasibility(MomentVector(1, 0, 1, 0, 0.5))
        assert not rep.psd
        assert rep.det == pytest.approx(-0.5)

    def test_point_mass(self):
        rep = feasibility(MomentVector(1, 0, 0, 0, 0))
        assert rep.psd
        assert rep.det == 0.0

    def test_det_matches_numeric(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            xs = rng.uniform(-5, 5, size=4)
            ps = rng.dirichlet(np.ones(4))
            mv = moments_from_discrete(dist(*zip(xs, ps)))
            numeric = float(np.linalg.det(hankel(mv).entries))
            closed = hankel_det_closed_form(mv)
            assert abs(numeric - closed) <= 1e-12 * mv.scale

    def test_two_point_rank_deficiency(self):
        # any zero-mean support of two points makes H singular
        for u, v in [(0.3, 0.7), (1.0, 2.0), (5.0, 0.2)]:
            s = u + v
            mv = moments_from_discrete(dist((-u, v / s), (v, u / s)))
            assert abs(hankel_det_closed_form(mv)) <= 1e-12 * mv.scale

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            feasibility(MomentVector(1, 0, 1, 0, 1), tol=0.0)


class TestScaleMoments:
    def test_examples(self):
        assert scale_moments(MomentVector(1, 0, 1, 0, 1), 2.0).as_tuple() == (1, 0, 4, 0, 16)
        mv = MomentVector(1, 0, 1, 0, 1)
        assert scale_moments(mv, 1.0) == mv
        assert scale_moments(MomentVector(1, 0, 2, 2, 6), -1.0).as_tuple() == (1, 0, 2, -2, 6)

    def test_matches_scaled_atoms(self):
        d = dist((-1.0, 2.0 / 3.0), (2.0, 1.0 / 3.0))
        mv = moments_from_discrete(d)
        for lam in (-2.0, -1.0, 0.5, 1.0, 3.0):
            scaled = moments_from_discrete(dist(*((lam * x, p) for x, p in d.atoms)))
            for a, b in zip(scale_moments(mv, lam).as_tuple(), scaled.as_tuple()):
                assert a == pytest.approx(b, rel=1e-12, abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            scale_moments(MomentVector(1, 0, 1, 0, 1), math.inf)
