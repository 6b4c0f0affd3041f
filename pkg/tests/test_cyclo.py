"""Exact cyclotomic arithmetic: canonical form, Galois action, embeddings."""

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from hecke_lab.cyclo import (
    AmbientOverflow,
    CycNum,
    DivisionByZero,
    GaloisElement,
    NotASubgroup,
    cyc_arith,
    cyclotomic_poly,
    embed_complex,
    fixing_subgroup,
    galois_apply,
    is_in_subfield,
    rel_trace,
    root_of_unity,
    root_of_unity_log,
    set_degree_cap,
)


def z(M, k=1):
    return root_of_unity(M, k)


class TestCyclotomicPoly:
    def test_small(self):
        assert cyclotomic_poly(1) == (-1, 1)
        assert cyclotomic_poly(2) == (1, 1)
        assert cyclotomic_poly(3) == (1, 1, 1)
        assert cyclotomic_poly(4) == (1, 0, 1)
        assert cyclotomic_poly(6) == (1, -1, 1)
        assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)

    def test_product_over_divisors_is_x_to_M_minus_1(self):
        for M in (6, 12, 30, 36, 105):
            acc = [1]
            from hecke_lab.arith import divisors

            for d in divisors(M):
                phi_d = cyclotomic_poly(d)
                new = [0] * (len(acc) + len(phi_d) - 1)
                for i, a in enumerate(acc):
                    for j, b in enumerate(phi_d):
                        new[i + j] += a * b
                acc = new
            expect = [0] * (M + 1)
            expect[0], expect[M] = -1, 1
            assert acc == expect


class TestArithmetic:
    def test_sum_of_primitive_cube_roots(self):
        assert z(3, 1) + z(3, 2) == CycNum.rational(-1)

    def test_product_example(self):
        # (1 + z3)(1 + z3^2) = 1, by expanding with z^2 + z = -1
        lhs = (CycNum.one() + z(3, 1)) * (CycNum.one() + z(3, 2))
        assert lhs == CycNum.one()

    def test_division_example(self):
        inv = cyc_arith(CycNum.one(), CycNum.one() + z(3, 1), "div")
        assert inv == CycNum.one() + z(3, 2)
        assert inv * (CycNum.one() + z(3, 1)) == CycNum.one()

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            cyc_arith(CycNum.one(), CycNum.zero(3), "div")

    def test_root_of_unity_orders(self):
        i = z(4, 1)
        assert i * i == CycNum.rational(-1)
        assert z(6, 3) == CycNum.rational(-1)
        assert z(9, 2) ** 9 == CycNum.one()
        assert z(9, 2) ** 3 != CycNum.one()

    def test_root_of_unity_additivity(self):
        for M in (5, 8, 12):
            for a in range(M):
                for b in range(M):
                    assert z(M, a) * z(M, b) == z(M, a + b)

    def test_mixed_ambient_equality(self):
        assert z(6, 2) == z(3, 1)
        assert CycNum.rational(1, M=5) == CycNum.one()
        assert z(4, 2) == CycNum.rational(-1)

    def test_lift_is_faithful(self):
        x = z(8, 1) + 2 * z(8, 3)
        y = x.lift(24)
        assert y == x
        assert (y * y) == (x * x)

    def test_rational_arithmetic_stays_exact(self):
        a = CycNum.rational(Fraction(3, 7))
        b = CycNum.rational(Fraction(-2, 5))
        assert (a + b).as_fraction() == Fraction(1, 35)
        assert (a * b).as_fraction() == Fraction(-6, 35)

    def test_degree_cap(self):
        old = set_degree_cap(4)
        try:
            with pytest.raises(AmbientOverflow):
                root_of_unity(101, 1)
        finally:
            set_degree_cap(old)


class TestGalois:
    def test_basic_action(self):
        assert galois_apply(GaloisElement(3, 2), z(3)) == z(3, 2)
        x = z(8, 1) + z(8, 3)
        assert galois_apply(GaloisElement(8, 1), x) == x

    def test_exponent_action_on_sum(self):
        x = z(5, 1) + z(5, 4)
        assert galois_apply(GaloisElement(5, 2), x) == z(5, 2) + z(5, 3)

    def test_fixes_rationals(self):
        q = CycNum.rational(Fraction(7, 3), M=12)
        for a in (5, 7, 11):
            assert galois_apply(GaloisElement(12, a), q) == q

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(
        M=st.sampled_from([3, 4, 5, 8, 9, 12, 15, 16, 21, 36, 60, 360]),
        coeffs1=st.lists(st.integers(-9, 9), min_size=1, max_size=6),
        coeffs2=st.lists(st.integers(-9, 9), min_size=1, max_size=6),
        a_idx=st.integers(0, 1000),
    )
    def test_galois_is_ring_automorphism(self, M, coeffs1, coeffs2, a_idx):
        from math import gcd

        units = [a for a in range(1, M) if gcd(a, M) == 1] or [1]
        sigma = GaloisElement(M, units[a_idx % len(units)])
        x = CycNum.from_vector(M, coeffs1 + [0] * M)
        y = CycNum.from_vector(M, coeffs2 + [0] * M)
        assert galois_apply(sigma, x * y) == galois_apply(sigma, x) * galois_apply(sigma, y)
        assert galois_apply(sigma, x + y) == galois_apply(sigma, x) + galois_apply(sigma, y)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(
        M=st.sampled_from([5, 7, 9, 12, 16, 24]),
        exps=st.lists(st.integers(0, 100), min_size=2, max_size=6),
    )
    def test_canonical_form_association_independence(self, M, exps):
        # same product assembled in two association orders
        left = CycNum.one(M)
        for e in exps:
            left = left * (CycNum.one() + z(M, e))
        right = CycNum.one(M)
        for e in reversed(exps):
            right = (CycNum.one() + z(M, e)) * right
        assert left.nums == right.nums and left.den == right.den


class TestTraceAndFixing:
    def test_full_trace_of_primitive_root(self):
        H = [1, 2, 3, 4]
        assert rel_trace(z(5), H, 5) == CycNum.rational(-1)

    def test_trace_of_rational_scales(self):
        q = CycNum.rational(Fraction(2, 3), M=5)
        assert rel_trace(q, [1, 2, 3, 4], 5) == CycNum.rational(Fraction(8, 3))

    def test_two_term_orbit(self):
        assert rel_trace(z(8), [1, 3], 8) == z(8, 1) + z(8, 3)

    def test_not_a_subgroup(self):
        with pytest.raises(NotASubgroup):
            rel_trace(z(8), [1, 2], 8)
        with pytest.raises(NotASubgroup):
            rel_trace(z(8), [3, 5], 8)

    def test_trace_lands_in_fixed_field(self):
        x = z(8) + 3 * z(8, 2)
        t = rel_trace(x, [1, 5], 8)
        for a in (1, 5):
            assert galois_apply(GaloisElement(8, a), t) == t

    def test_fixing_subgroup_examples(self):
        assert fixing_subgroup([CycNum.one()], 12) == [1, 5, 7, 11]
        assert fixing_subgroup([z(8)], 8) == [1]
        assert fixing_subgroup([z(8, 1) + z(8, 7)], 8) == [1, 7]

    def test_cyclotomic_intersection(self):
        # Q(zeta_A) meet Q(zeta_B) = Q(zeta_gcd): the subgroup generated by
        # both fixing subgroups is exactly the one fixing zeta_gcd.
        for A, B in [(8, 12), (9, 15), (16, 24), (5, 7), (9, 4)]:
            from math import gcd, lcm

            M = lcm(A, B)
            fa = fixing_subgroup([z(A)], M)
            fb = fixing_subgroup([z(B)], M)
            join = sorted({(a * b) % M for a in fa for b in fb})
            g = gcd(A, B)
            expect = fixing_subgroup([z(g)], M)
            assert join == expect

    def test_is_in_subfield(self):
        assert is_in_subfield(z(12, 4), 3, 12)  # z12^4 = z3
        assert not is_in_subfield(z(12, 1), 3, 12)
        assert is_in_subfield(CycNum.rational(5, M=12), 1, 12)


class TestEmbedding:
    def test_i(self):
        v = embed_complex(z(4), 15)
        assert abs(v - mp.mpc(0, 1)) < mp.mpf(10) ** -15

    def test_cube_root(self):
        v = embed_complex(z(3), 20)
        with mp.workdps(40):
            expect = mp.mpc(mp.mpf(-1) / 2, mp.sqrt(3) / 2)
            assert abs(v - expect) < mp.mpf(10) ** -20

    def test_minus_one_exact(self):
        assert embed_complex(CycNum.rational(-1), 10) == mp.mpc(-1)

    def test_trace_embedding_consistency(self):
        x = z(16, 3) + 2 * z(16, 5)
        H = [1, 7]
        t = rel_trace(x, H, 16)
        prec = 20
        with mp.workdps(40):
            lhs = embed_complex(t, prec)
            rhs = sum(embed_complex(galois_apply(GaloisElement(16, a), x), prec) for a in H)
            assert abs(lhs - rhs) < mp.mpf(10) ** (-prec + 2)


class TestSerialization:
    def test_round_trip(self):
        x = z(12, 5) * Fraction(22, 7) + z(12, 1) - CycNum.rational(Fraction(1, 3))
        obj = x.to_json()
        assert CycNum.from_json(obj) == x

    def test_log_recovery(self):
        assert root_of_unity_log(z(9, 4), 9) == 4
        assert root_of_unity_log(CycNum.rational(-1), 6) == 3
        assert root_of_unity_log(z(9, 1) + 1, 9) is None
