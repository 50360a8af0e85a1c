import pytest
from hypothesis import given, strategies as st

from fiberprod import fiber, series as se
from fiberprod.errors import (
    InvalidBetti,
    InvalidDenominator,
    OrderMismatch,
    TrivialFiberProduct,
    ZeroModule,
)
from fiberprod.fiber import BettiSequence, PoincareInputs
from fiberprod.series import TruncatedSeries


def S(*coeffs):
    return TruncatedSeries(tuple(coeffs))


class TestSyzygyShift:
    def test_definitional(self):
        mu, omega = fiber.syzygy_shift(S(1, 2, 2, 2))
        assert mu == 1 and omega == S(2, 2, 2)

    def test_free_module(self):
        mu, omega = fiber.syzygy_shift(S(3, 0, 0))
        assert mu == 3 and omega == S(0, 0)

    def test_zero_module(self):
        with pytest.raises(ZeroModule):
            fiber.syzygy_shift(S(0, 1))


class TestLargeCompose:
    def test_product(self):
        assert fiber.large_compose(S(1, 1), S(1, 1)) == S(1, 2)

    def test_identity_map(self):
        p = S(1, 4, 9)
        assert fiber.large_compose(p, S(1, 0, 0)) == p

    def test_matches_convolution(self):
        assert fiber.large_compose(S(1, 2, 2), S(1, 1, 1)) == se.mul(
            S(1, 2, 2), S(1, 1, 1)
        )


def denominator_by_hand(p, q, order):
    # independent convolution loop
    out = []
    for i in range(order + 1):
        conv = sum(p[j] * q[i - j] for j in range(i + 1))
        out.append(p[i] + q[i] - conv)
    return tuple(out)


class TestFiberDenominator:
    def test_hand_convolution(self):
        d = fiber.fiber_denominator(S(1, 1, 0), S(1, 1, 0))
        assert d.coeffs == denominator_by_hand((1, 1, 0), (1, 1, 0), 2) == (1, 0, -1)

    def test_independent_of_higher_coefficient(self):
        for r2 in (0, 1, 5):
            d = fiber.fiber_denominator(S(1, 2, r2), S(1, 1, 1))
            assert d.coeffs[:3] == (1, 0, -2)

    def test_nontriviality(self):
        with pytest.raises(TrivialFiberProduct):
            fiber.fiber_denominator(S(1, 0, 0), S(1, 1))


class TestFiberSeries:
    def test_residue_field_over_two_lines(self):
        p = S(1, 1, 0, 0, 0, 0)
        result = fiber.fiber_series(PoincareInputs(p, p, p, is_large=True), 5)
        assert result.series == S(1, 2, 2, 2, 2, 2)
        assert result.exact and result.label == "exact"

    def test_free_module(self):
        free = S(1, 0, 0, 0)
        p = S(1, 1, 0, 0)
        result = fiber.fiber_series(PoincareInputs(free, p, p), 3)
        assert result.series == S(1, 1, 1, 1)
        assert not result.exact and result.label == "claimed-bound"

    def test_trivial_fiber_product(self):
        with pytest.raises(TrivialFiberProduct):
            PoincareInputs(S(1, 1), S(1, 1), S(1, 0))

    def test_order_beyond_inputs_is_an_error(self):
        p = S(1, 1, 0)
        with pytest.raises(OrderMismatch):
            fiber.fiber_series(PoincareInputs(p, p, p), 5)


class TestAmalgamatedSeries:
    def test_line_duplication(self):
        p = S(1, 1, 0, 0, 0)
        assert fiber.amalgamated_series(p, p, 4) == S(1, 2, 2, 2, 2)

    def test_free_module(self):
        assert fiber.amalgamated_series(
            S(1, 0, 0, 0), S(1, 1, 0, 0), 3
        ) == S(1, 1, 1, 1)

    def test_free_quotient_rejected(self):
        with pytest.raises(TrivialFiberProduct):
            fiber.amalgamated_series(S(1, 1), S(1, 0), 1)


class TestBettiB:
    def test_hand_values(self):
        assert fiber.betti_b(BettiSequence((1, 2, 0)), BettiSequence((1, 1, 1)), 2) == S(1, 0, -2)
        assert fiber.betti_b(BettiSequence((1, 1, 0)), BettiSequence((1, 1, 0)), 2) == S(1, 0, -1)

    def test_invalid_beta0(self):
        with pytest.raises(InvalidBetti):
            fiber.betti_b(BettiSequence((2, 1)), BettiSequence((1, 1)), 1)


class TestBettiBigB:
    def test_recurrence_by_hand(self):
        assert fiber.betti_B(S(1, 0, -2, 0, 0)) == S(1, 0, 2, 0, 4)
        assert fiber.betti_B(S(1, 0, 0, 0)) == S(1, 0, 0, 0)
        assert fiber.betti_B(S(1, 0, -1, 0, 0)) == S(1, 0, 1, 0, 1)

    def test_matches_series_inversion(self):
        b = S(1, 0, -2, -1, 0, -3)
        assert fiber.betti_B(b) == se.invert(b)

    def test_positive_tail_rejected(self):
        with pytest.raises(InvalidDenominator):
            fiber.betti_B(S(1, 1))


class TestBettiBound:
    def test_closed_forms_worked_example(self):
        bound = fiber.betti_bound(
            BettiSequence((1, 2, 2)),
            BettiSequence((1, 2, 0)),
            BettiSequence((1, 1, 1)),
            2,
        )
        assert bound[0] == 1
        assert bound[1] == 1 * 1 + 2 == 3
        assert bound[2] == 1 * 2 * 1 + 1 * 1 + 2 * 1 + 2 == 7

    def test_index_zero(self):
        bound = fiber.betti_bound(
            BettiSequence((1, 0, 0)),
            BettiSequence((1, 1, 0)),
            BettiSequence((1, 1, 0)),
            0,
        )
        assert bound[0] == 1


class TestEdimBound:
    def test_large_exact(self):
        r = fiber.edim_bound(1, 1, True)
        assert r.value == 2 and r.exact

    def test_plain_bound(self):
        r = fiber.edim_bound(2, 1, False)
        assert r.value == 3 and not r.exact

    def test_field_rejected(self):
        with pytest.raises(TrivialFiberProduct):
            fiber.edim_bound(0, 1, False)


# --- randomized properties --------------------------------------------------

betti_tail = st.lists(st.integers(0, 5), min_size=5, max_size=5)
quotient_betti = st.lists(st.integers(0, 5), min_size=4, max_size=4).map(
    lambda tail: BettiSequence(tuple([1, 1 + tail[0]] + tail[1:]))
)
module_betti = betti_tail.map(lambda t: BettiSequence(tuple([1 + t[0]] + t[1:])))


def series_of(b):
    return b.as_series()


@given(quotient_betti, quotient_betti)
def test_recurrence_equals_inversion(x, y):
    b = fiber.betti_b(x, y, min(len(x), len(y)) - 1)
    assert fiber.betti_B(b) == se.invert(b)


@given(quotient_betti, quotient_betti)
def test_denominator_sign_pattern(x, y):
    b = fiber.betti_b(x, y, min(len(x), len(y)) - 1)
    assert b[0] == 1 and b[1] == 0
    assert all(b[i] <= 0 for i in range(2, b.order + 1))


@given(module_betti, quotient_betti, quotient_betti)
def test_fiber_series_matches_closed_forms(m, x, y):
    order = min(len(m), len(x), len(y)) - 1
    inputs = PoincareInputs(series_of(m), series_of(x), series_of(y))
    out = fiber.fiber_series(inputs, order).series
    assert out.is_nonnegative()
    bound = fiber.betti_bound(m, x, y, min(order, 2))
    assert out[0] == bound[0] == m[0]
    assert out[1] == bound[1] == m[0] * y[1] + m[1]
    if order >= 2:
        assert out[2] == bound[2] == (
            m[0] * x[1] * y[1] + m[0] * y[2] + m[1] * y[1] + m[2]
        )


@given(module_betti, quotient_betti, quotient_betti)
def test_denominator_symmetric_under_swap(m, x, y):
    order = min(len(x), len(y)) - 1
    assert fiber.fiber_denominator(series_of(x), series_of(y)) == fiber.fiber_denominator(
        series_of(y), series_of(x)
    )


@given(quotient_betti)
def test_self_product_reduces_to_duplication(p):
    # gluing R with itself over R/I: M = R/I, both quotient series equal
    ps = series_of(p)
    order = ps.order
    via_fiber = fiber.fiber_series(PoincareInputs(ps, ps, ps, is_large=True), order)
    via_dup = fiber.amalgamated_series(ps, ps, order)
    assert via_fiber.series == via_dup
    assert via_dup.is_nonnegative()
