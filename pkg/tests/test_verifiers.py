"""Smoke and contract tests of the seeded verifiers (small settings; the
acceptance module runs them at their contracted scales)."""

import pytest

from ellipq.errors import BalancingError, EllipqError
from ellipq.hpcomplex import hpc, modulus
from ellipq.laurent import monomial_sym_poly
from ellipq.partitions import SignedPartition
from ellipq.quadrature import DixonSpec, dixon_integral
from ellipq.elliptic import EllipticParams
from ellipq.verify import (
    ParamSampler,
    VerificationReport,
    residuals,
    residue_noumi_sano,
    verify_gamma_identities,
    verify_qd_commutation,
    verify_rains,
    verify_theta_identity,
)


class TestReport:
    def test_residual_floor(self):
        a, r = residuals(hpc(0), hpc(0))
        assert a == 0.0 and r == 0.0
        a, r = residuals(hpc(1e-40), hpc(0))
        assert r == pytest.approx(1e-40 / 1e-30)

    def test_json_roundtrip(self):
        rep = VerificationReport(
            identity="x", parameters={"n": "2"}, quadrature_orders=[32],
            lhs="1", rhs="1", abs_residual=0.0, rel_residual=0.0,
            threshold=1e-10, passed=True, precision_bits=128, seed=3)
        d = rep.to_json_dict()
        assert d["identity"] == "x" and d["passed"] is True
        import json

        json.dumps(d)  # serializable

    def test_sampler_reproducible(self):
        a = ParamSampler(42, 128).complex_in(0.1, 0.5)
        b = ParamSampler(42, 128).complex_in(0.1, 0.5)
        assert a == b


class TestGammaIdentities:
    def test_small_batch(self):
        rep = verify_gamma_identities(seed=5, points=10, prec=192)
        assert rep.passed
        assert rep.rel_residual < 2.0 ** -(192 - 20)


class TestThetaIdentity:
    def test_trivial_k0(self):
        rep = verify_theta_identity(3, 0, seed=1, prec=160)
        assert rep.passed and rep.abs_residual == 0.0

    def test_k_equals_n(self):
        rep = verify_theta_identity(2, 2, seed=2, prec=160)
        assert rep.passed

    def test_generic(self):
        rep = verify_theta_identity(3, 1, seed=3, prec=192)
        assert rep.passed


class TestRains:
    def test_zero_dimensional_pair(self):
        rep = verify_rains(1, 1, seed=7, prec=128)
        assert rep.passed

    def test_broken_balancing_rejected(self):
        p, q = hpc(0.1, prec=128), hpc(0.12, prec=128)
        params = EllipticParams(p, q, 1e-40)
        spec = DixonSpec(kind="I", n=1, m=1,
                         a=(hpc(0.5), hpc(0.6)), b=(hpc(0.5), hpc(0.6)))
        with pytest.raises(BalancingError):
            dixon_integral(spec, params)


class TestQdCommutation:
    def test_k_zero_trivial(self):
        # k = 0 makes both sides the same integral by definition
        rep = verify_qd_commutation(2, 0, seed=4, prec=128)
        assert rep.passed and rep.rel_residual < 1e-20


class TestResidue:
    def test_one_variable_closed_form(self):
        rep = residue_noumi_sano(1, 1, None, seed=5)
        assert rep.passed and rep.rel_residual < 1e-10

    def test_one_variable_k0_degenerates_consistently(self):
        rep = residue_noumi_sano(1, 0, None, seed=6)
        assert rep.passed

    def test_unsupported_dimension(self):
        with pytest.raises(EllipqError):
            residue_noumi_sano(3, 1, None, seed=1)


class TestTrivialDimensions:
    def test_grry_one_variable(self):
        from ellipq.verify import verify_grry

        rep = verify_grry(1, seed=3)
        assert rep.passed and rep.rel_residual < 1e-25

    def test_qhqp_one_variable(self):
        from ellipq.verify import verify_qhqp

        rep = verify_qhqp(1, seed=3)
        assert rep.passed and rep.rel_residual < 1e-25


class TestComposedKernelConsistency:
    def test_normalized_family_form_matches_direct_quadrature(self):
        # the composed kernel of the direct and gauge-transformed operators:
        # direct z-quadrature of the four-factor integrand against the
        # kappa-normalized integral-family form (independent assembly paths)
        from ellipq.elliptic import EllipticParams, gamma_pq
        from ellipq.quadrature import (
            DixonSpec,
            TorusDomain,
            _kappa,
            _vartheta_inverse_gammas,
            dixon_integral,
            torus_integrate,
        )
        from ellipq.verify import ParamSampler, residuals

        prec = 128
        sampler = ParamSampler(9, prec)
        p = sampler.complex_in(0.03, 0.05)
        q = sampler.complex_in(0.03, 0.05)
        t = sampler.complex_in(0.20, 0.26)
        c = sampler.complex_in(0.34, 0.42)
        d = sampler.complex_in(0.60, 0.70)
        x = sampler.balanced_pair(2, 0.98, 1.02)
        y = sampler.balanced_pair(2, 0.98, 1.02)
        params = EllipticParams(p, q, 2.0 ** -(prec + 16))
        r = hpc(1, prec=prec)

        def integrand(z):
            acc = _vartheta_inverse_gammas(z, params, prec)
            for i in range(2):
                for j in range(2):
                    acc = acc * gamma_pq(d * z[i] / x[j], params)
                    acc = acc * gamma_pq(p * q * z[i] / (c * t * y[j]), params)
                    acc = acc * gamma_pq(t * x[j] / (d * z[i]), params)
                    acc = acc * gamma_pq(c * y[j] / z[i], params)
            return acc

        dom = TorusDomain(2, r, points_per_dim=32)
        direct = torus_integrate(integrand, dom, 1e-12, prec)
        a1 = tuple(d * r / xj for xj in x) + tuple(p * q * r / (c * t * yj) for yj in y)
        b1 = tuple(t * xj / (d * r) for xj in x) + tuple(c * yj / r for yj in y)
        spec = DixonSpec(kind="I", n=2, m=2, a=a1, b=b1)
        family = dixon_integral(spec, params, N=32, quad_tol=1e-12) \
            / _kappa(2, params, prec)
        _, rel = residuals(direct, family)
        assert rel < 1e-10


class TestQdTotalShift:
    def test_k_equals_n_commutes(self):
        rep = verify_qd_commutation(2, 2, seed=8)
        assert rep.passed


class TestNestedComposition:
    def test_kcd_matches_nested_operator_application(self):
        # the composed kernel against actually composing the two integral
        # operators on a test polynomial (double quadrature, independent path)
        from ellipq.elliptic import EllipticParams
        from ellipq.laurent import monomial_sym_poly
        from ellipq.partitions import SignedPartition
        from ellipq.quadrature import (
            TorusDomain,
            _selberg_factor,
            kernel_Kcd,
            q_apply_numeric,
            torus_integrate,
        )
        from ellipq.verify import ParamSampler, _laurent_eval, residuals

        prec = 96
        sampler = ParamSampler(17, prec)
        p = sampler.complex_in(0.03, 0.05)
        q = sampler.complex_in(0.03, 0.05)
        t = sampler.complex_in(0.12, 0.18)
        c = sampler.complex_in(0.30, 0.38)
        d = sampler.complex_in(0.30, 0.38)
        y = sampler.balanced_pair(2)
        params = EllipticParams(p, q, 2.0 ** -(prec + 16))
        f = monomial_sym_poly(SignedPartition((1, 0)), 2, one=1)
        f_ev = _laurent_eval(f, prec)

        def qd_f(x):
            return q_apply_numeric("Q", d, f_ev, x, t, params, N=24, quad_tol=1e-8)

        nested = q_apply_numeric("Q", c, qd_f, y, t, params, N=24, quad_tol=1e-8)

        def outer(x):
            return f_ev(x) * kernel_Kcd(x, y, c, d, t, params, N=24, quad_tol=1e-8) \
                * _selberg_factor(x, t, params, prec)

        r = (y[0] * y[1]).root(2)
        dom = TorusDomain(2, r, points_per_dim=24)
        direct = torus_integrate(outer, dom, 1e-7, prec, cap=96)
        _, rel = residuals(nested, direct)
        assert rel < 1e-5
