"""Torus quadrature, integral operators, kernels, and the two integral
families."""

import pytest

from ellipq.elliptic import EllipticParams, gamma_pq
from ellipq.errors import (
    BalancingError,
    ContourError,
    ConvergenceError,
    RegionError,
)
from ellipq.hpcomplex import HPComplex, hpc, modulus
from ellipq.quadrature import (
    DixonSpec,
    TorusDomain,
    continued_q_apply,
    dixon_integral,
    kernel_Kcd,
    q_apply_numeric,
    torus_integrate,
    torus_integrate_full,
)

PREC = 128
TOL = 1e-30


def one():
    return HPComplex(1, precision_bits=PREC)


class TestTorusIntegrate:
    def test_constant(self):
        dom = TorusDomain(2, one(), points_per_dim=8)
        val = torus_integrate(lambda x: one(), dom, TOL, PREC)
        assert modulus(val - 1) < 1e-30

    def test_nonzero_fourier_mode_vanishes(self):
        dom = TorusDomain(2, hpc(1.3, prec=PREC), points_per_dim=8)
        val = torus_integrate(lambda x: x[0] / x[1], dom, TOL, PREC)
        assert modulus(val) < 1e-25

    def test_product_constraint_exact(self):
        r = hpc(0.8, 0.3, prec=PREC)
        dom = TorusDomain(3, r, points_per_dim=4)
        for pt in dom.grid(4, PREC):
            prod = pt[0] * pt[1] * pt[2]
            assert modulus(prod - r ** 3) < 1e-34

    def test_laurent_monomial_constant_term(self, rng):
        # Fourier orthogonality: only zero winding per free angle survives
        dom = TorusDomain(2, hpc(1.1, prec=PREC), points_per_dim=16)

        def f(x):
            return 3 + x[0] ** 2 / x[1] ** 2 + x[1] / x[0]

        val = torus_integrate(f, dom, TOL, PREC)
        assert modulus(val - 3) < 1e-24

    def test_geometric_convergence(self):
        # analytic integrand: residual decays at least geometrically in N
        r = one()
        dom = TorusDomain(2, r, points_per_dim=4)
        a = hpc(0.4, prec=PREC)

        def f(x):
            return 1 / (1 - a * x[0] / x[1])

        vals = {}
        for N in (4, 8, 16, 32):
            total = HPComplex(0, precision_bits=PREC)
            for pt in dom.grid(N, PREC):
                total = total + f(pt)
            vals[N] = total / N
        errs = [float(modulus(vals[N] - 1)) for N in (4, 8, 16)]
        assert errs[1] < errs[0] * 0.2
        assert errs[2] < errs[1] * 0.2

    def test_convergence_failure_reports_values(self):
        dom = TorusDomain(2, one(), points_per_dim=4)
        a = hpc(0.999, prec=PREC)

        def f(x):
            return 1 / (1 - a * x[0] / x[1])

        with pytest.raises(ConvergenceError) as err:
            torus_integrate(f, dom, 1e-40, PREC, cap=16)
        assert err.value.value is not None and err.value.previous is not None


class TestQApply:
    def setup_method(self):
        self.p = hpc(0.05, 0.02, prec=PREC)
        self.q = hpc(0.08, -0.03, prec=PREC)
        self.t = hpc(0.2, 0.05, prec=PREC)
        self.params = EllipticParams(self.p, self.q, 2.0 ** -(PREC + 16))

    def test_one_variable_closed_form(self):
        c = hpc(0.3, 0.1, prec=PREC)
        y = (hpc(1.2, -0.3, prec=PREC),)
        val = q_apply_numeric("Q", c, lambda x: x[0] ** 2, y, self.t, self.params)
        expect = y[0] ** 2 * gamma_pq(c, self.params) / gamma_pq(c * self.t, self.params)
        assert modulus(val - expect) / modulus(expect) < 1e-30

    def test_region_error_names_inequality(self):
        c = hpc(1.5, prec=PREC)  # violates |c y_j / r| < 1
        y = (hpc(1.0, prec=PREC), hpc(1.0, prec=PREC))
        with pytest.raises(RegionError) as err:
            q_apply_numeric("Q", c, lambda x: one(), y, self.t, self.params)
        assert "|c y_1/r| < 1" in str(err.value.inequality)

    def test_gauged_variant_one_variable(self):
        c = hpc(0.5, 0.1, prec=PREC)
        y = (hpc(0.9, 0.2, prec=PREC),)
        val = q_apply_numeric("Qt", c, lambda x: one(), y, self.t, self.params)
        expect = gamma_pq(c, self.params) * gamma_pq(self.t / c, self.params)
        assert modulus(val - expect) / modulus(expect) < 1e-30


class TestKernelKcd:
    def setup_method(self):
        self.p = hpc(0.05, 0.01, prec=PREC)
        self.q = hpc(0.06, -0.02, prec=PREC)
        self.t = hpc(0.18, 0.03, prec=PREC)
        self.params = EllipticParams(self.p, self.q, 2.0 ** -(PREC + 16))

    def test_one_variable_symmetric(self):
        c, d = hpc(0.4, 0.1, prec=PREC), hpc(0.3, -0.2, prec=PREC)
        x = y = (hpc(1.1, 0.1, prec=PREC),)
        lhs = kernel_Kcd(x, y, c, d, self.t, self.params)
        rhs = kernel_Kcd(x, y, d, c, self.t, self.params)
        assert modulus(lhs - rhs) / modulus(lhs) < 1e-30
        expect = gamma_pq(c, self.params) * gamma_pq(d, self.params) \
            / (gamma_pq(c * self.t, self.params) * gamma_pq(d * self.t, self.params))
        assert modulus(lhs - expect) / modulus(expect) < 1e-30

    def test_balancing_enforced(self):
        c, d = hpc(0.35, prec=PREC), hpc(0.3, prec=PREC)
        x = (hpc(1.0, prec=PREC), hpc(1.0, prec=PREC))
        y = (hpc(1.1, prec=PREC), hpc(1.0, prec=PREC))
        with pytest.raises(BalancingError):
            kernel_Kcd(x, y, c, d, self.t, self.params)


class TestDixon:
    def setup_method(self):
        self.p = hpc(0.06, 0.02, prec=PREC)
        self.q = hpc(0.07, -0.03, prec=PREC)
        self.params = EllipticParams(self.p, self.q, 2.0 ** -(PREC + 16))

    def test_i_family_one_variable_product(self):
        pq = self.p * self.q
        a = (hpc(0.5, 0.1, prec=PREC), hpc(0.4, -0.2, prec=PREC))
        b0 = hpc(0.45, 0.05, prec=PREC)
        b1 = pq / (a[0] * a[1] * b0)
        spec = DixonSpec(kind="I", n=1, m=1, a=a, b=(b0, b1))
        val = dixon_integral(spec, self.params)
        expect = one()
        for v in a + (b0, b1):
            expect = expect * gamma_pq(v, self.params)
        assert modulus(val - expect) / modulus(expect) < 1e-28

    def test_j_family_one_variable_product(self):
        y0 = hpc(1.2, 0.2, prec=PREC)
        y = (y0, 1 / y0)
        a, b = hpc(0.5, 0.1, prec=PREC), hpc(0.35, -0.1, prec=PREC)
        spec = DixonSpec(kind="J", n=1, y=y, a=(a,), b=(b,))
        val = dixon_integral(spec, self.params)
        expect = one()
        for yj in y:
            expect = expect * gamma_pq(a * yj, self.params) \
                * gamma_pq(b / yj, self.params)
        assert modulus(val - expect) / modulus(expect) < 1e-28

    def test_balancing_violation_rejected(self):
        a = (hpc(0.5, prec=PREC), hpc(0.4, prec=PREC))
        b = (hpc(0.45, prec=PREC), hpc(0.5, prec=PREC))
        spec = DixonSpec(kind="I", n=1, m=1, a=a, b=b)
        with pytest.raises(BalancingError):
            dixon_integral(spec, self.params)

    def test_region_violation_rejected(self):
        pq = self.p * self.q
        a = (hpc(1.2, prec=PREC), hpc(0.4, prec=PREC))
        b0 = hpc(0.45, prec=PREC)
        b1 = pq / (a[0] * a[1] * b0)
        spec = DixonSpec(kind="I", n=1, m=1, a=a, b=(b0, b1))
        with pytest.raises(RegionError):
            dixon_integral(spec, self.params)


class TestContinuedQApply:
    def test_matches_direct_in_common_region(self):
        # where the plain torus integral is valid, the continued evaluation
        # must agree with it (no corrections fire)
        prec = 140
        p = hpc(0.04, 0.01, prec=prec)
        q = hpc(0.12, -0.02, prec=prec)
        t = hpc(0.05, 0.01, prec=prec)
        c = hpc(0.4, 0.1, prec=prec)
        y0 = hpc(1.05, 0.1, prec=prec)
        y = (y0, 1 / y0)
        params = EllipticParams(p, q, 2.0 ** -(prec + 16))

        def f_ev(x):
            return x[0] + x[1]

        direct = q_apply_numeric("Q", c, f_ev, y, t, params, N=48, quad_tol=1e-13)
        cont = continued_q_apply(c, f_ev, y, t, params, N=48, quad_tol=1e-13)
        assert modulus(direct - cont) / modulus(direct) < 1e-11

    def test_contour_clearance_error(self):
        # a spectral parameter that parks a pole on the base circle
        prec = 140
        p = hpc(0.04, prec=prec)
        q = hpc(0.12, prec=prec)
        t = hpc(0.05, prec=prec)
        y = (hpc(1.0, prec=prec), hpc(1.0, prec=prec))
        c = hpc(1.0, prec=prec)  # c y_j exactly on |x| = 1
        params = EllipticParams(p, q, 2.0 ** -(prec + 16))
        with pytest.raises((ContourError, RegionError)):
            continued_q_apply(c, lambda x: x[0] * 0 + 1, y, t, params)


class TestQKernel:
    def setup_method(self):
        prec = 140
        self.prec = prec
        self.p = hpc(0.06, 0.02, prec=prec)
        self.q = hpc(0.09, -0.03, prec=prec)
        self.t = hpc(0.3, 0.08, prec=prec)
        self.c = hpc(0.5, 0.1, prec=prec)
        self.params = EllipticParams(self.p, self.q, 2.0 ** -(prec + 16))
        self.x = (hpc(1.05, 0.2, prec=prec), hpc(0.8, -0.3, prec=prec))
        self.y = (hpc(0.95, -0.15, prec=prec), hpc(1.1, 0.25, prec=prec))

    def test_two_family_kernel_symmetric_in_x_y(self):
        from ellipq.quadrature import QKernel

        ker = QKernel("Kc", 2, self.c, self.t, self.params)
        assert modulus(ker(self.x, self.y) - ker(self.y, self.x)) < 1e-30

    def test_gauge_transform_relation(self):
        # Kct = Kc|_{t -> pq/t} / (W(x) W(y))
        from ellipq.operators import GaugeWeight
        from ellipq.quadrature import QKernel

        ker = QKernel("Kct", 2, self.c, self.t, self.params)
        t_dual = self.p * self.q / self.t
        base = QKernel("Kc", 2, self.c, t_dual, self.params)
        w = GaugeWeight(2, self.t, self.params)
        lhs = ker(self.x, self.y)
        rhs = base(self.x, self.y) / (w(self.x) * w(self.y))
        assert modulus(lhs - rhs) / modulus(lhs) < 1e-35

    def test_kernel_function_identity(self):
        # the difference operator acting on the x-family equals its action
        # on the y-family (order 1, numeric)
        from ellipq.operators import ruijsenaars_numeric
        from ellipq.quadrature import QKernel

        ker = QKernel("Kc", 2, self.c, self.t, self.params)

        def as_x(x):
            return ker(x, self.y)

        def as_y(y):
            return ker(self.x, y)

        lhs = ruijsenaars_numeric(1, as_x, self.x, self.t, self.params)
        rhs = ruijsenaars_numeric(1, as_y, self.y, self.t, self.params)
        assert modulus(lhs - rhs) / modulus(lhs) < 2.0 ** -(self.prec - 24)

    def test_region_checked_before_evaluation(self):
        from ellipq.quadrature import QKernel

        ker = QKernel("Kc", 2, hpc(3.0, prec=140), self.t, self.params)
        with pytest.raises(RegionError):
            ker(self.x, self.y)
