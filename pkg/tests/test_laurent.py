from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coidealbasis.laurent import (
    DivisibilityError,
    LaurentPoly,
    ONE,
    Q,
    QINV,
    RationalFn,
    ZERO,
    poly_gcd,
    q_binomial,
    quantum_factorial,
    quantum_int,
    quantum_numbers,
    telescoping_identity_one,
    telescoping_identity_two,
    two_cosh,
)


def lp(pairs):
    return LaurentPoly(dict(pairs))


polys = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9),
    max_size=5,
).map(LaurentPoly)


class TestRing:
    @given(polys, polys, polys)
    @settings(max_examples=150, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys, polys)
    @settings(max_examples=150, deadline=None)
    def test_bar_is_ring_involution(self, a, b):
        assert a.bar().bar() == a
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a + b).bar() == a.bar() + b.bar()

    def test_str_and_json_round_trip(self):
        p = lp({2: 1, 0: -3, -1: 2})
        assert str(p) == "q^2 - 3 + 2*q^-1"
        assert LaurentPoly.from_json(p.to_json()) == p

    def test_bar_example(self):
        assert (Q ** 2 - 3 * QINV).bar() == QINV ** 2 - 3 * Q


class TestQuantumNumbers:
    def test_quantum_int_three(self):
        assert quantum_int(3) == lp({2: 1, 0: 1, -2: 1})

    def test_quantum_int_zero_and_negative(self):
        assert quantum_int(0) == ZERO
        assert quantum_int(-4) == -quantum_int(4)

    def test_factorial_three(self):
        assert quantum_factorial(3) == quantum_int(2) * quantum_int(3)
        assert quantum_numbers(3, "factorial") == quantum_factorial(3)

    def test_factorial_negative_rejected(self):
        with pytest.raises(ValueError):
            quantum_factorial(-1)

    def test_quantum_int_bar_symmetric_positive(self):
        for n in range(0, 9):
            p = quantum_int(n)
            assert p.is_bar_symmetric()
            assert all(c > 0 for c in p.coeffs.values())

    def test_binomial_example(self):
        assert q_binomial(4, 2) == lp({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})

    def test_binomial_edges(self):
        for n in range(0, 7):
            assert q_binomial(n, 0) == ONE
        assert q_binomial(5, 7) == ZERO
        assert q_binomial(5, -1) == ZERO

    def test_binomial_against_recursion(self):
        # [n, m] = q^m [n-1, m] + q^(m-n) [n-1, m-1]
        for n in range(1, 11):
            for m in range(0, n + 1):
                rec = q_binomial(n - 1, m).shift(m) + q_binomial(n - 1, m - 1).shift(m - n)
                assert q_binomial(n, m) == rec


class TestDivision:
    def test_exact_quotient_verified_by_multiplication(self):
        q63 = quantum_int(6).exact_div(quantum_int(3))
        assert q63 * quantum_int(3) == quantum_int(6)
        assert q63 == lp({3: 1, -3: 1})

    def test_divide_by_one(self):
        p = lp({3: 2, -1: 5})
        assert p.exact_div(ONE) == p

    def test_inexact_division_raises(self):
        with pytest.raises(DivisibilityError):
            quantum_int(3).exact_div(quantum_int(2))

    @given(polys, polys)
    @settings(max_examples=100, deadline=None)
    def test_product_division_round_trip(self, a, b):
        if b.is_zero():
            return
        assert (a * b).exact_div(b) == a


class TestEvaluate:
    def test_quantum_int_at_one(self):
        for n in range(-5, 8):
            assert quantum_int(n).evaluate(1) == n

    def test_rational_point(self):
        assert (Q + QINV).evaluate(2) == Fraction(5, 2)

    def test_factorial_at_one(self):
        assert quantum_factorial(3).evaluate(1) == 6

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Q.evaluate(0)


class TestRationalFn:
    def test_cross_multiplication_equality(self):
        a = RationalFn(quantum_int(6), quantum_int(3))
        b = RationalFn(quantum_int(6) * quantum_int(2), quantum_int(3) * quantum_int(2))
        assert a == b

    def test_reduction(self):
        a = RationalFn(quantum_int(4) * quantum_int(3), quantum_int(2) * quantum_int(3))
        assert a.reduced() == RationalFn(quantum_int(4), quantum_int(2))
        assert a.reduced().as_poly() == quantum_int(4).exact_div(quantum_int(2))

    def test_field_ops(self):
        a = RationalFn(ONE, quantum_int(2))
        b = RationalFn(quantum_int(3), ONE)
        assert (a * b) / b == a
        assert a + b - b == a

    def test_gcd(self):
        g = poly_gcd(quantum_int(6), quantum_int(4))
        # both are divisible by [2]
        assert quantum_int(6).exact_div(g) is not None
        assert quantum_int(4).exact_div(g) is not None


class TestTelescoping:
    def test_first_identity_small(self):
        for K in range(1, 4):
            from itertools import product

            for ns in product(range(0, 3), repeat=K):
                for ms in product(range(1, 3), repeat=K):
                    assert telescoping_identity_one(ns, ms)

    def test_second_identity_small(self):
        from itertools import product

        for K in range(1, 3):
            for x in range(0, 3):
                for z in range(0, 3):
                    for ms in product(range(1, 3), repeat=K):
                        assert telescoping_identity_two(x, z, ms)

    def test_two_cosh(self):
        assert two_cosh(0) == LaurentPoly.from_int(2)
        assert two_cosh(3) == lp({3: 1, -3: 1})
