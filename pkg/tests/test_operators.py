import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nablafrac.backend import rational
from nablafrac.grid import DomainError, GridFn
from nablafrac.numerics import FracOrder, weights
from nablafrac.operators import (caputo_left, caputo_right,
                                 delta_left_riemann, delta_left_sum,
                                 delta_right_riemann, delta_right_sum,
                                 nabla_left_riemann, nabla_left_sum,
                                 nabla_left_sum_fn, nabla_right_riemann,
                                 nabla_right_sum, nabla_right_sum_fn,
                                 operator_matrix)


def rat(text):
    return rational(text)


def random_fn(seed, lo, hi):
    rng = random.Random(seed)
    return GridFn(lo, tuple(rational(rng.randint(-9, 9))
                            for _ in range(int(hi - lo) + 1)))


rational_alpha = st.builds(rational, st.integers(1, 7), st.integers(2, 8))


class TestLeftSum:
    def test_half_order_of_one(self):
        ones = GridFn(0, (1,) * 6)
        s = nabla_left_sum_fn(ones, rat("1/2"), 0)
        assert s(0) == 0
        assert s(1) == 1
        assert s(2) == rat("3/2")
        assert s(3) == rat("15/8")

    def test_alpha_one_running_sum(self):
        f = GridFn(0, (0, 2, 3, 4))
        s = nabla_left_sum_fn(f, 1, 0)
        assert s.values == (0, 2, 5, 9)

    def test_scalar_matches_fn(self):
        f = random_fn(1, 0, 6)
        s = nabla_left_sum_fn(f, rat("2/3"), 0)
        for t in range(0, 7):
            assert nabla_left_sum(f, rat("2/3"), 0, t) == s(t)

    def test_before_anchor_errors(self):
        f = GridFn(0, (1, 2, 3))
        with pytest.raises(DomainError):
            nabla_left_sum(f, rat("1/2"), 1, 0)

    def test_domain_insufficient(self):
        f = GridFn(3, (1, 2))
        with pytest.raises(DomainError):
            nabla_left_sum_fn(f, rat("1/2"), 0)


class TestRightSum:
    def test_mirror_of_left(self):
        # reflection about the midpoint swaps left and right sums
        a, b = 0, 7
        f = random_fn(2, a + 1, b - 1)
        mirror = GridFn(a + 1, tuple(reversed(f.values)))
        left = nabla_left_sum_fn(mirror, rat("3/5"), a)
        right = nabla_right_sum_fn(f, rat("3/5"), b)
        for t in range(a + 1, b):
            assert right(t) == left(a + b - t)

    def test_zero_at_anchor(self):
        f = random_fn(3, 1, 6)
        assert nabla_right_sum_fn(f, rat("1/2"), 7)(7) == 0
        assert nabla_right_sum(f, rat("1/2"), 7, 7) == 0

    def test_truncate(self):
        f = random_fn(4, 1, 4)
        with pytest.raises(DomainError):
            nabla_right_sum_fn(f, rat("1/2"), 7)
        s = nabla_right_sum_fn(f, rat("1/2"), 7, truncate=True)
        w = weights(rat("1/2"), 3)
        want = sum(w[k - 1] * f(k) for k in range(1, 5))
        assert s(1) == want


class TestRiemann:
    def test_half_order_of_constant_one(self):
        # order 1/2 of the constant 1 on a 3-point interior
        ones = GridFn(1, (1, 1, 1))
        left = nabla_left_riemann(ones, rat("1/2"), 0)
        right = nabla_right_riemann(ones, rat("1/2"), 4)
        assert left(2) == rat("1/2")
        assert right(2) == rat("1/2")

    def test_alpha_one_reduces_to_nabla(self):
        # the operator reads f from a+1 only, so at t = a+1 the backward
        # difference sees the empty-sum zero in place of f(a)
        f = random_fn(5, 0, 6)
        r = nabla_left_riemann(f, 1, 0)
        assert r(1) == f(1)
        for t in range(2, 7):
            assert r(t) == f(t) - f(t - 1)

    def test_alpha_one_right_reduces_to_minus_delta(self):
        f = random_fn(6, 1, 7)
        r = nabla_right_riemann(f, 1, 7)
        assert r(6) == f(6)
        for t in range(1, 6):
            assert r(t) == f(t) - f(t + 1)

    @given(alpha=rational_alpha, beta=rational_alpha, seed=st.integers(0, 99))
    @settings(max_examples=40, deadline=None)
    def test_semigroup_of_sums(self, alpha, beta, seed):
        # nabla_a^{-alpha} nabla_a^{-beta} = nabla_a^{-(alpha+beta)}
        f = random_fn(seed, 1, 8)
        inner = nabla_left_sum_fn(f, beta, 0)
        lhs = nabla_left_sum_fn(inner.restrict(1, 8), alpha, 0)
        rhs = nabla_left_sum_fn(f, alpha + beta, 0)
        for t in range(0, 9):
            assert lhs(t) == rhs(t)

    def test_riemann_inverts_sum(self):
        # nabla_a^{alpha} nabla_a^{-alpha} f = f (semigroup + exact nabla)
        f = random_fn(7, 1, 8)
        s = nabla_left_sum_fn(f, rat("2/5"), 0)
        r = nabla_left_riemann(s, rat("2/5"), 0)
        for t in range(1, 9):
            assert r(t) == f(t)


class TestCaputo:
    def test_constant_annihilated(self):
        c = GridFn(0, (rat("7/3"),) * 6)
        out = caputo_left(c, rat("1/2"), 0)
        assert all(v == 0 for v in out.values)
        out = caputo_right(c, rat("1/2"), 5)
        assert all(v == 0 for v in out.values)

    def test_ramp_value(self):
        # Caputo order 1/2 from 0 of f(t) = t at t = 2 is 3/2
        ramp = GridFn.from_callable(0, 4, lambda t: rational(t))
        out = caputo_left(ramp, rat("1/2"), 0)
        assert out(2) == rat("3/2")

    def test_domain_needs_back_points(self):
        f = GridFn(1, (1, 2, 3))
        with pytest.raises(DomainError):
            caputo_left(f, rat("1/2"), 0)

    def test_integer_order_rejected(self):
        f = GridFn(0, (1, 2, 3))
        with pytest.raises(DomainError):
            caputo_left(f, 1, 0)

    def test_higher_order_domain(self):
        f = random_fn(8, 0, 7)
        out = caputo_left(f, rat("5/4"), 0)   # n = 2, domain starts at a+2
        assert out.lo == 2
        out = caputo_right(f, rat("5/4"), 7)  # ends at b-2
        assert out.hi == 5


class TestDeltaDuals:
    @pytest.mark.parametrize("alpha_text", ["1/3", "1/2", "3/4", "5/4"])
    def test_left_sum_dual(self, alpha_text):
        av = rat(alpha_text)
        f = random_fn(9, 1, 7)
        d = delta_left_sum(f, av, 0)
        n = nabla_left_sum_fn(f, av, 0)
        for s in range(1, 8):
            assert d(s + av) == n(s)

    @pytest.mark.parametrize("alpha_text", ["1/3", "1/2", "3/4", "5/4"])
    def test_right_sum_dual(self, alpha_text):
        av = rat(alpha_text)
        g = random_fn(10, 1, 7)
        d = delta_right_sum(g, av, 8)
        n = nabla_right_sum_fn(g, av, 8)
        for s in range(1, 8):
            assert d(s - av) == n(s)

    @pytest.mark.parametrize("alpha_text", ["1/3", "1/2", "3/4"])
    def test_left_riemann_dual(self, alpha_text):
        alpha = FracOrder(rat(alpha_text))
        g = random_fn(11, 1, 7)
        d = delta_left_riemann(g, alpha, 0)
        n = nabla_left_riemann(g, alpha, 0)
        for s in range(1, 8):
            assert d(s - alpha.alpha) == n(s)

    @pytest.mark.parametrize("alpha_text", ["1/3", "1/2", "3/4"])
    def test_right_riemann_dual(self, alpha_text):
        alpha = FracOrder(rat(alpha_text))
        f = random_fn(12, 1, 7)
        d = delta_right_riemann(f, alpha, 8)
        n = nabla_right_riemann(f, alpha, 8)
        for s in range(1, 8):
            assert d(s + alpha.alpha) == n(s)


class TestOperatorMatrix:
    def test_reproduces_linear_operator(self):
        f = random_fn(13, 1, 6)
        op = lambda e: nabla_left_sum_fn(e, rat("1/2"), 0)
        out_lo, rows = operator_matrix(op, 1, 6, rational(1), rational(0))
        direct = op(f)
        assert out_lo == 0
        for i, row in enumerate(rows):
            want = direct(out_lo + i)
            got = sum(c * v for c, v in zip(row, f.values))
            assert got == want
