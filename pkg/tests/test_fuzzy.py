import numpy as np
import pytest

from lingopt.fuzzy import (
    DomainError,
    FouShape,
    Interval,
    IT2Word,
    Trapezoid,
    alpha_cut,
    classify_fou,
    membership_envelope,
)

SCALE = Interval(0.0, 10.0)


class TestInterval:
    def test_ordering_enforced(self):
        with pytest.raises(DomainError):
            Interval(2.0, 1.0)

    def test_degenerate_allowed(self):
        assert Interval(5.0, 5.0).width == 0.0


class TestTrapezoid:
    def test_vertex_ordering_enforced(self):
        with pytest.raises(DomainError):
            Trapezoid(0, 3, 2, 4)

    def test_height_range(self):
        with pytest.raises(DomainError):
            Trapezoid(0, 1, 2, 3, h=0.0)
        with pytest.raises(DomainError):
            Trapezoid(0, 1, 2, 3, h=1.5)

    def test_membership_piecewise(self):
        t = Trapezoid(1, 3, 5, 9, h=0.8)
        assert t.membership(0.5) == 0.0
        assert t.membership(2.0) == pytest.approx(0.4)
        assert t.membership(4.0) == pytest.approx(0.8)
        assert t.membership(7.0) == pytest.approx(0.4)
        assert t.membership(9.5) == 0.0

    def test_vertical_edge_membership(self):
        # a == b: plateau starts at the left vertex itself
        t = Trapezoid(0, 0, 2.04, 3.84)
        assert t.membership(0.0) == 1.0
        xs = np.array([0.0, 1.0, 3.0, 5.0])
        np.testing.assert_allclose(t.membership_grid(xs), [1.0, 1.0, (3.84 - 3) / 1.8, 0.0])

    def test_grid_matches_scalar(self):
        t = Trapezoid(1.2, 2.5, 6.0, 8.8, h=0.7)
        xs = np.linspace(0, 10, 101)
        np.testing.assert_allclose(t.membership_grid(xs), [t.membership(x) for x in xs])


class TestAlphaCut:
    def test_support_at_zero(self):
        # VP upper trapezoid: support is the full base
        cut = alpha_cut(Trapezoid(0, 0, 2.04, 3.84), 0.0)
        assert (cut.lo, cut.hi) == (0.0, 3.84)

    def test_core_at_height(self):
        cut = alpha_cut(Trapezoid(0, 0, 2.04, 3.84), 1.0)
        assert (cut.lo, cut.hi) == (0.0, 2.04)

    def test_half_height_interpolation(self):
        # hand interpolation at alpha = h/2: lo = 2 + .5*(4.99-2), hi = 7.91 - .5*(7.91-4.99)
        cut = alpha_cut(Trapezoid(2, 4.99, 4.99, 7.91, h=0.88), 0.44)
        assert cut.lo == pytest.approx(3.495)
        assert cut.hi == pytest.approx(6.45)

    def test_alpha_out_of_range_names_value(self):
        with pytest.raises(DomainError, match="0.9"):
            alpha_cut(Trapezoid(0, 1, 2, 3, h=0.8), 0.9)
        with pytest.raises(DomainError, match="-0.1"):
            alpha_cut(Trapezoid(0, 1, 2, 3), -0.1)


class TestClassifyFou:
    def test_fixture_shapes(self, hma):
        assert classify_fou(hma.word("VP"), SCALE) is FouShape.LEFT_SHOULDER
        assert classify_fou(hma.word("P"), SCALE) is FouShape.LEFT_SHOULDER
        assert classify_fou(hma.word("A"), SCALE) is FouShape.INTERIOR
        assert classify_fou(hma.word("G"), SCALE) is FouShape.RIGHT_SHOULDER
        assert classify_fou(hma.word("VG"), SCALE) is FouShape.RIGHT_SHOULDER

    def test_low_lmf_height_is_interior(self):
        # flat against the left end but not full height: not a shoulder
        w = IT2Word("x", Trapezoid(0, 0, 2, 3), Trapezoid(0, 0, 1.5, 2, h=0.8))
        assert classify_fou(w, SCALE) is FouShape.INTERIOR


class TestMembershipEnvelope:
    def test_outside_support_is_zero(self, hma):
        env = membership_envelope(hma.word("VP"), 9.5)
        assert (env.lo, env.hi) == (0.0, 0.0)

    def test_plateau_lookup(self, hma):
        env = membership_envelope(hma.word("A"), 5.0)
        assert (env.lo, env.hi) == (1.0, 1.0)

    def test_lmf_plateau_height(self, ia):
        env = membership_envelope(ia.word("A"), 4.99)
        assert env.lo == pytest.approx(0.88)
        assert env.hi == 1.0


class TestWordValidation:
    def test_lmf_exceeding_umf_rejected(self):
        with pytest.raises(DomainError, match="exceeds"):
            IT2Word("bad", Trapezoid(2, 3, 4, 5), Trapezoid(1, 3, 4, 5)).validate()

    def test_umf_height_must_be_one(self):
        w = IT2Word("bad", Trapezoid(1, 3, 4, 5, h=0.9), Trapezoid(2, 3, 4, 4.5, h=0.9))
        with pytest.raises(DomainError, match="umf height"):
            w.validate()
