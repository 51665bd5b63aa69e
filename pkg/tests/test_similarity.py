import numpy as np
import pytest

from conftest import random_word
from lingopt.fuzzy import DomainError, Interval, IT2Word, Trapezoid
from lingopt.similarity import (
    Centroid,
    DegenerateWordError,
    Discretization,
    centroid_brute,
    centroid_ekm,
    jaccard,
    rank_by_centroid,
)


class TestJaccard:
    def test_self_similarity_is_one(self, hma):
        d = hma.discretization()
        for w in hma.words:
            assert jaccard(w, w, d) == pytest.approx(1.0)

    def test_symmetric_on_fixture_pairs(self, hma):
        d = hma.discretization()
        for a in hma.words:
            for b in hma.words:
                assert jaccard(a, b, d) == pytest.approx(jaccard(b, a, d), abs=1e-12)

    def test_average_vs_very_poor(self, hma):
        # the smallest slotwise similarity behind the cross-firing value 0.08
        sim = jaccard(hma.word("A"), hma.word("VP"), hma.discretization())
        assert sim == pytest.approx(0.08, abs=0.02)

    def test_average_vs_poor(self, hma):
        sim = jaccard(hma.word("A"), hma.word("P"), hma.discretization())
        assert sim == pytest.approx(0.38, abs=0.02)

    def test_disjoint_supports_give_zero(self):
        d = Discretization(3001, Interval(0.0, 30.0))
        w = IT2Word("w", Trapezoid(0, 1, 2, 3), Trapezoid(0.5, 1, 2, 2.5, h=0.9))
        base = IT2Word("b", Trapezoid(0, 1, 2, 3), Trapezoid(0.5, 1, 2, 2.5, h=0.9))
        prev = 1.0
        for offset in np.arange(0.0, 25.0, 2.5):
            shifted = IT2Word("s", base.umf.translate(offset), base.lmf.translate(offset))
            sim = jaccard(w, shifted, d)
            assert sim <= prev + 1e-9  # separation never increases similarity
            prev = sim
            if offset >= 3.0:  # supports disjoint from here on
                assert sim == 0.0

    def test_scale_mismatch_rejected(self, hma):
        tight = Discretization(101, Interval(0.0, 5.0))
        with pytest.raises(DomainError, match="scale"):
            jaccard(hma.word("G"), hma.word("G"), tight)


class TestCentroid:
    def test_mean_is_midpoint(self):
        c = Centroid(2.0, 4.0)
        assert c.mean == 3.0

    def test_fixture_good_centroid(self, hma):
        c = centroid_ekm(hma.word("G"), hma.discretization())
        assert c.cl == pytest.approx(7.2, abs=0.05)
        assert c.cr == pytest.approx(7.4, abs=0.05)
        assert c.mean == pytest.approx(7.3, abs=0.05)

    def test_symmetric_word_mean_is_center(self):
        w = IT2Word("sym", Trapezoid(2, 4, 6, 8), Trapezoid(3, 4.5, 5.5, 7, h=0.7))
        c = centroid_ekm(w)
        assert c.mean == pytest.approx(5.0, abs=1e-9)

    def test_type1_degeneracy_matches_direct_formula(self):
        t = Trapezoid(1.0, 2.5, 4.0, 7.0)
        w = IT2Word("t1", t, t)
        d = Discretization(1001, Interval(0.0, 10.0))
        xs = d.grid()
        mu = t.membership_grid(xs)
        expected = float(np.dot(xs, mu) / mu.sum())
        c = centroid_ekm(w, d)
        assert c.cl == pytest.approx(expected, abs=1e-9)
        assert c.cr == pytest.approx(expected, abs=1e-9)

    def test_ekm_matches_brute_on_random_words(self):
        rng = np.random.default_rng(11)
        d = Discretization(201, Interval(0.0, 10.0))
        for _ in range(50):
            w = random_word(rng)
            e = centroid_ekm(w, d)
            b = centroid_brute(w, d)
            assert abs(e.cl - b.cl) <= 1e-9
            assert abs(e.cr - b.cr) <= 1e-9

    def test_grid_refinement_stability(self, hma, ia):
        for cb in (hma, ia):
            for w in cb.words:
                m1 = centroid_ekm(w, Discretization(1001, cb.scale)).mean
                m2 = centroid_ekm(w, Discretization(2001, cb.scale)).mean
                assert abs(m1 - m2) < 0.01

    def test_all_zero_membership_rejected(self):
        w = IT2Word("off", Trapezoid(0, 1, 2, 3), Trapezoid(0.5, 1, 2, 2.5, h=0.9))
        d = Discretization(11, Interval(5.0, 10.0))
        with pytest.raises(DegenerateWordError):
            centroid_ekm(w, d)


class TestRanking:
    def test_solop_means(self):
        items = [
            ("SS1", Centroid(3.33, 3.33), None),
            ("SS2", Centroid(6.2, 6.2), None),
            ("SS3", Centroid(5.91, 5.91), None),
            ("SS4", Centroid(5.45, 5.45), None),
        ]
        assert rank_by_centroid(items) == ["SS2", "SS3", "SS4", "SS1"]

    def test_tiebreak_on_secondary(self):
        items = [
            ("SS1", Centroid(5.02, 5.02), Centroid(2.6, 2.6)),
            ("SS2", Centroid(7.42, 7.42), None),
            ("SS3", Centroid(4.35, 4.35), None),
            ("SS4", Centroid(5.02, 5.02), Centroid(5.02, 5.02)),
        ]
        assert rank_by_centroid(items) == ["SS2", "SS4", "SS1", "SS3"]

    def test_single_item(self):
        assert rank_by_centroid([("only", Centroid(1, 1), None)]) == ["only"]

    def test_stable_when_fully_tied(self):
        c = Centroid(4.0, 4.0)
        items = [("a", c, None), ("b", c, None), ("c", c, None)]
        assert rank_by_centroid(items) == ["a", "b", "c"]

    def test_min_direction(self):
        items = [("lo", Centroid(1, 1), None), ("hi", Centroid(9, 9), None)]
        assert rank_by_centroid(items, direction="min") == ["lo", "hi"]

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            rank_by_centroid([])
