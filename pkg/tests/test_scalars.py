"""Scalar rings: arbitrary-precision complex, exact rational functions, and
truncated power series."""

from fractions import Fraction

import pytest

from ellipq.errors import EllipqError, RingMismatchError
from ellipq.hpcomplex import HPComplex, hpc, modulus, unit_root
from ellipq.laurent import LaurentPoly
from ellipq.ratfun import RationalFn
from ellipq.series import (
    LaurentRing,
    PSeries,
    RationalRing,
    series_exp,
    series_inv,
    series_mul,
)
from conftest import rand_hpc


class TestHPComplex:
    def test_precision_floor(self):
        with pytest.raises(ValueError):
            HPComplex(1, precision_bits=32)

    def test_max_precision_propagates(self):
        a = hpc(1.5, prec=128)
        b = hpc(2.5, prec=192)
        assert (a * b).precision_bits == 192
        assert (a + b).precision_bits == 192

    def test_exact_fraction_input(self):
        z = HPComplex(Fraction(1, 3), precision_bits=128)
        # 1/3 rounded at 128 bits: relative error below 2^-127
        assert abs(float(z * 3 - 1)) < 2.0 ** -120

    def test_double_precision_agreement(self, rng):
        # arithmetic at precision 2B agrees with precision B to B-4 bits
        B = 96
        for _ in range(50):
            a_lo, b_lo = rand_hpc(rng, prec=B), rand_hpc(rng, prec=B)
            a_hi, b_hi = a_lo.with_precision(2 * B), b_lo.with_precision(2 * B)
            lo = (a_lo * b_lo + a_lo) / (b_lo + 2)
            hi = (a_hi * b_hi + a_hi) / (b_hi + 2)
            err = modulus(lo - hi.with_precision(B)) / max(modulus(hi), 1e-30)
            assert err < 2.0 ** -(B - 4)

    def test_unit_root(self):
        z = unit_root(1, 8, 128)
        assert modulus(z ** 8 - 1) < 1e-30
        assert abs(complex(z) - complex(2 ** -0.5, 2 ** -0.5)) < 1e-12

    def test_roots_and_exp(self):
        z = hpc(2.0, 1.0, prec=160)
        assert modulus(z.root(3) ** 3 - z) < 1e-40
        assert modulus(z.exp().log() - z) < 1e-40

    def test_ordering_only_for_reals(self):
        with pytest.raises(TypeError):
            _ = hpc(1, 1) < hpc(2, 0)
        assert hpc(1) < hpc(2)


class TestRationalFn:
    def test_equality_is_canonical(self, rng):
        q, t = RationalFn("q"), RationalFn("t")
        one = RationalFn(1)
        a = (one - t) * (one + q) / (one - t * q)
        b = (one + q - t - t * q) / (one - t * q)
        assert a == b
        # a/b == c/d iff ad - bc == 0
        assert (a - b).is_zero

    def test_ring_axioms_randomized(self, rng):
        q, t = RationalFn("q"), RationalFn("t")
        pool = [q, t, q * t - 1, (1 - t) / (1 - q), q ** 3 / (t - 2)]
        for _ in range(40):
            a, b, c = (rng.choice(pool) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a + (b + c) == (a + b) + c

    def test_parameter_promotion(self):
        q = RationalFn("q", ("q",))
        c = RationalFn("c", ("c",))
        s = q + c
        assert set(s.params) >= {"q", "c"}
        assert s - c == RationalFn("q", s.params)

    def test_numeric_substitution(self):
        q, t = RationalFn("q"), RationalFn("t")
        r = (1 - t) / (1 - q)
        val = r.subs_numeric({"q": hpc(0.5), "t": hpc(0.25)}, 128)
        assert abs(float(val) - 1.5) < 1e-30

    def test_zero_denominator_rejected(self):
        q = RationalFn("q")
        with pytest.raises(ZeroDivisionError):
            q / (q - q)


class TestPSeries:
    def setup_method(self):
        self.ring = RationalRing(("q", "t"))

    def test_trivial_products(self):
        one_plus = PSeries([1, 1, 0], self.ring)
        one_minus = PSeries([1, -1, 0], self.ring)
        prod = series_mul(one_plus, one_minus)
        assert prod == PSeries([1, 0, -1], self.ring)
        one = PSeries.constant(1, self.ring, 2)
        assert series_mul(one_plus, one) == one_plus

    def test_convolution_against_bruteforce(self, rng):
        # random degree-2 Laurent coefficients, schoolbook convolution oracle
        ring = LaurentRing(2)
        K = 3

        def rand_poly():
            out = LaurentPoly(2)
            for _ in range(3):
                mono = (rng.randint(-2, 2), rng.randint(-2, 2))
                out = out + LaurentPoly(2, {mono: RationalFn(rng.randint(-3, 3))})
            return out

        a = PSeries([rand_poly() for _ in range(K + 1)], ring)
        b = PSeries([rand_poly() for _ in range(K + 1)], ring)
        prod = series_mul(a, b)
        for m in range(K + 1):
            expect = LaurentPoly(2)
            for i in range(m + 1):
                expect = expect + a.coeffs[i] * b.coeffs[m - i]
            assert prod.coeffs[m] == expect

    def test_result_order_is_min(self):
        a = PSeries([1, 2, 3], self.ring)
        b = PSeries([1, 1], self.ring)
        assert series_mul(a, b).order == 1

    def test_ring_mismatch(self):
        a = PSeries([1, 2], self.ring)
        b = PSeries([LaurentPoly.constant(2, RationalFn(1))], LaurentRing(2))
        with pytest.raises(RingMismatchError):
            series_mul(a, b)

    def test_geometric_inverse(self):
        a = PSeries([1, -1, 0, 0], self.ring)
        assert series_inv(a) == PSeries([1, 1, 1, 1], self.ring)
        one = PSeries.constant(1, self.ring, 3)
        assert series_inv(one) == one

    def test_inverse_roundtrip_random(self, rng):
        q = RationalFn("q")
        for _ in range(10):
            coeffs = [RationalFn(1)] + [RationalFn(rng.randint(-4, 4)) * q
                                        for _ in range(4)]
            a = PSeries(coeffs, self.ring)
            prod = series_mul(a, series_inv(a))
            assert prod == PSeries.constant(1, self.ring, 4)

    def test_non_invertible_constant_term(self):
        a = PSeries([0, 1, 2], self.ring)
        with pytest.raises(EllipqError):
            series_inv(a)

    def test_exp_of_nilpotent(self):
        a = PSeries([0, 1, 0, 0], self.ring)
        e = series_exp(a)
        assert e.coeffs[2] == RationalFn(Fraction(1, 2))
        assert e.coeffs[3] == RationalFn(Fraction(1, 6))
