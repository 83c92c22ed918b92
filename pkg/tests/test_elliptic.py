"""Numeric elliptic building blocks and their formal p-expansions."""

import math

import pytest

from ellipq.elliptic import (
    EllipticParams,
    elliptic_factorial,
    gamma_pq,
    gamma_residue,
    qpochhammer_inf,
    theta,
)
from ellipq.elliptic_series import gamma_p_expansion, theta_triple_series
from ellipq.errors import ParameterDomainError, PoleProximityError
from ellipq.hpcomplex import HPComplex, hpc, modulus
from ellipq.laurent import LaurentPoly
from ellipq.ratfun import RationalFn
from conftest import rand_hpc

PREC = 256
TOL = 2.0 ** -(PREC + 24)


def params_for(p, q):
    return EllipticParams(p, q, TOL)


class TestQPochhammer:
    def test_zero_argument(self):
        assert qpochhammer_inf(hpc(0), hpc(0.5), TOL) == hpc(1)

    def test_half_against_direct_truncation(self):
        # oracle: direct partial product at doubled working precision
        q = hpc(0.5, prec=2 * PREC)
        direct = HPComplex(1, precision_bits=2 * PREC)
        x = q
        for _ in range(2200):
            direct = direct * (1 - x)
            x = x * q
        val = qpochhammer_inf(hpc(0.5, prec=PREC), hpc(0.5, prec=PREC), TOL)
        assert modulus(val - direct.with_precision(PREC)) < 1e-70

    def test_index_shift(self, rng):
        for _ in range(20):
            x = rand_hpc(rng, 0.05, 3.0, PREC)
            q = rand_hpc(rng, 0.05, 0.6, PREC)
            lhs = qpochhammer_inf(x, q, TOL)
            rhs = (1 - x) * qpochhammer_inf(x * q, q, TOL)
            assert modulus(lhs - rhs) / max(modulus(lhs), 1e-30) < 2.0 ** -(PREC - 8)

    def test_domain(self):
        with pytest.raises(ParameterDomainError):
            qpochhammer_inf(hpc(0.5), hpc(1.5), TOL)


class TestTheta:
    def test_p_zero_collapses(self):
        x = hpc(0.3, 0.4)
        assert theta(x, hpc(0), TOL) == 1 - x

    def test_inversion_symmetry(self, rng):
        for _ in range(20):
            x = rand_hpc(rng, 0.2, 2.0, PREC)
            p = rand_hpc(rng, 0.02, 0.5, PREC)
            lhs = theta(p / x, p, TOL)
            rhs = theta(x, p, TOL)
            assert modulus(lhs - rhs) / modulus(rhs) < 2.0 ** -(PREC - 8)

    def test_quasi_periodicity(self, rng):
        for _ in range(20):
            x = rand_hpc(rng, 0.2, 2.0, PREC)
            p = rand_hpc(rng, 0.02, 0.5, PREC)
            lhs = theta(p * x, p, TOL)
            rhs = -theta(x, p, TOL) / x
            assert modulus(lhs - rhs) / modulus(rhs) < 2.0 ** -(PREC - 8)

    def test_index_shift_inverse(self, rng):
        # theta(1/x) = -theta(x)/x
        for _ in range(10):
            x = rand_hpc(rng, 0.3, 1.5, PREC)
            p = rand_hpc(rng, 0.05, 0.4, PREC)
            lhs = theta(1 / x, p, TOL)
            rhs = -theta(x, p, TOL) / x
            assert modulus(lhs - rhs) / modulus(rhs) < 2.0 ** -(PREC - 8)

    def test_zero_domain(self):
        with pytest.raises(ParameterDomainError):
            theta(hpc(0), hpc(0.3), TOL)


class TestGamma:
    def test_shift_and_reflection(self, rng):
        for _ in range(30):
            p = rand_hpc(rng, 0.03, 0.3, PREC)
            q = rand_hpc(rng, 0.03, 0.3, PREC)
            x = rand_hpc(rng, 0.2, 2.0, PREC)
            par = params_for(p, q)
            g = gamma_pq(x, par)
            shift = gamma_pq(q * x, par)
            assert modulus(shift - theta(x, p, TOL) * g) / modulus(shift) \
                < 2.0 ** -(PREC - 16)
            refl = gamma_pq(p * q / x, par)
            assert modulus(refl * g - 1) < 2.0 ** -(PREC - 16)

    def test_p_zero_reduces_to_pochhammer(self):
        q = hpc(0.3, 0.1)
        x = hpc(0.4, -0.2)
        par = params_for(hpc(0), q)
        lhs = gamma_pq(x, par)
        rhs = 1 / qpochhammer_inf(x, q, TOL)
        assert modulus(lhs - rhs) / modulus(rhs) < 2.0 ** -(PREC - 8)

    def test_pole_proximity_error_carries_index(self):
        p, q = hpc(0.1), hpc(0.2)
        par = params_for(p, q)
        x = (p ** -1) * (q ** -2) * (1 + hpc(1e-80))
        with pytest.raises(PoleProximityError) as err:
            gamma_pq(x, par)
        assert err.value.lattice_index == (1, 2)

    def test_truncation_certificate(self, rng):
        # doubling the internal tolerance target changes nothing beyond it
        p = rand_hpc(rng, 0.1, 0.3, PREC)
        q = rand_hpc(rng, 0.1, 0.3, PREC)
        x = rand_hpc(rng, 0.5, 1.5, PREC)
        loose = gamma_pq(x, EllipticParams(p, q, 1e-40))
        tight = gamma_pq(x, EllipticParams(p, q, 1e-70))
        assert modulus(loose - tight) / modulus(tight) < 1e-39


class TestEllipticFactorial:
    def setup_method(self):
        self.p = hpc(0.12, 0.05)
        self.q = hpc(0.2, -0.07)
        self.par = params_for(self.p, self.q)

    def test_empty_product(self):
        assert elliptic_factorial(hpc(0.5, 0.2), 0, self.par) == hpc(1)

    def test_single_factor(self):
        x = hpc(0.5, 0.2)
        one = elliptic_factorial(x, 1, self.par)
        assert modulus(one - theta(x, self.p, TOL)) < 2.0 ** -(PREC - 12)

    def test_telescoping(self, rng):
        for n in (1, 2, 4):
            x = rand_hpc(rng, 0.4, 1.4, PREC)
            lhs = elliptic_factorial(x, -n, self.par)
            rhs = elliptic_factorial(x * self.q ** -n, n, self.par)
            assert modulus(lhs * rhs - 1) < 2.0 ** -(PREC - 16)

    def test_gamma_quotient_consistency(self, rng):
        # (x;q,p)_n = Gamma(x q^n) / Gamma(x): an independent code path
        x = rand_hpc(rng, 0.5, 1.2, PREC)
        n = 3
        lhs = elliptic_factorial(x, n, self.par)
        rhs = gamma_pq(x * self.q ** n, self.par) / gamma_pq(x, self.par)
        assert modulus(lhs - rhs) / modulus(rhs) < 2.0 ** -(PREC - 20)


class TestGammaResidue:
    def test_against_finite_difference(self):
        p, q = hpc(0.13, 0.05), hpc(0.21, -0.08)
        par = params_for(p, q)
        for (a, b) in ((0, 0), (1, 0), (1, 2)):
            z0 = (p ** -a) * (q ** -b)
            z = z0 * (1 + hpc(1e-30))
            approx = gamma_pq(z, par) * (z - z0)
            exact = gamma_residue(a, b, par)
            assert modulus(approx - exact) / modulus(exact) < 1e-25


class TestGammaPExpansion:
    def test_constant_coefficient(self):
        s = gamma_p_expansion(2)
        assert s.coeffs[0] == LaurentPoly.constant(1, RationalFn(1, ("q",)))

    def test_phi1_has_both_powers(self):
        s = gamma_p_expansion(1)
        exps = {m[0] for m in s.coeffs[1].terms}
        assert 1 in exps and -1 in exps

    def test_numeric_consistency(self):
        # substitute numbers into S/(x;q)_inf and compare with gamma itself
        K = 4
        s = gamma_p_expansion(K)
        prec = 320
        p = hpc(1e-3, prec=prec)
        q = hpc(0.23, 0.11, prec=prec)
        x = hpc(0.7, -0.4, prec=prec)
        acc = HPComplex(0, precision_bits=prec)
        for k in range(K + 1):
            coeff = s.coeffs[k].evaluate(
                (x,), coeff_eval=lambda r: r.subs_numeric({"q": q}, prec))
            acc = acc + coeff * p ** k
        approx = acc / qpochhammer_inf(x, q, TOL, prec)
        exact = gamma_pq(x, EllipticParams(p, q, TOL))
        assert modulus(approx - exact) / modulus(exact) < float(modulus(p)) ** (K + 1) * 10

    def test_stability_across_orders(self):
        s4 = gamma_p_expansion(4)
        s5 = gamma_p_expansion(5)
        for k in range(5):
            assert s4.coeffs[k] == s5.coeffs[k]


class TestThetaTripleSeries:
    def test_matches_numeric_theta(self):
        # (p;p)_inf * theta_p(u) against the triple-product truncation
        K = 6
        mono = LaurentPoly(1, {(1,): RationalFn(1, ("q",))})
        ser = theta_triple_series(mono, K)
        prec = 256
        p = hpc(0.05, prec=prec)
        u = hpc(0.6, 0.3, prec=prec)
        acc = HPComplex(0, precision_bits=prec)
        for k in range(K + 1):
            c = ser.coeffs[k].evaluate((u,), coeff_eval=lambda r: HPComplex(
                1, precision_bits=prec) if r == RationalFn(1, ("q",)) else
                r.subs_numeric({"q": hpc(0.5)}, prec))
            acc = acc + c * p ** k
        direct = theta(u, p, TOL) * qpochhammer_inf(p, p, TOL)
        assert modulus(acc - direct) / modulus(direct) < float(modulus(p)) ** (K + 1) * 50
