"""Seeded numeric verification of the integral and series identities.

Every verifier draws admissible parameters from a seeded generator
(log-uniform moduli, uniform angles), checks the region inequalities before
evaluating anything, computes both sides through disjoint code paths on top
of the elliptic primitives, and returns a structured report.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .elliptic import EllipticParams, gamma_pq, theta
from .errors import EllipqError, RegionError
from .hpcomplex import HPComplex, modulus, unit_root
from .laurent import LaurentPoly, monomial_sym_poly
from .macdonald import macdonald_poly
from .operators import noumi_sano_numeric, ruijsenaars_numeric
from .partitions import SignedPartition
from .quadrature import (
    DixonSpec,
    continued_q_apply,
    dixon_integral,
    kernel_Kcd,
    q_apply_numeric,
)
from .spectral import phi_lambda_series

RESIDUAL_FLOOR = 1e-30


@dataclass
class VerificationReport:
    """Outcome of one identity check at one parameter point (or batch)."""

    identity: str
    parameters: dict
    quadrature_orders: list
    lhs: str
    rhs: str
    abs_residual: float
    rel_residual: float
    threshold: float
    passed: bool
    precision_bits: int
    seed: int | None = None
    wall_time_s: float = 0.0
    extra_residuals: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "identity": self.identity,
            "parameters": self.parameters,
            "quadrature_orders": list(self.quadrature_orders),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "threshold": self.threshold,
            "passed": self.passed,
            "precision_bits": self.precision_bits,
            "seed": self.seed,
            "wall_time_s": self.wall_time_s,
            "extra_residuals": dict(self.extra_residuals),
        }


def residuals(lhs: HPComplex, rhs: HPComplex):
    """(absolute, relative) residual with the documented floor."""
    a = modulus(lhs - rhs)
    scale = max(modulus(lhs), modulus(rhs), RESIDUAL_FLOOR)
    return a, a / scale


class ParamSampler:
    """Seeded draws: log-uniform in modulus, uniform in angle."""

    def __init__(self, seed: int, prec: int):
        self.rng = random.Random(seed)
        self.prec = prec

    def complex_in(self, lo: float, hi: float) -> HPComplex:
        m = math.exp(self.rng.uniform(math.log(lo), math.log(hi)))
        ang = self.rng.uniform(0.0, 2 * math.pi)
        return HPComplex(m * math.cos(ang), m * math.sin(ang), precision_bits=self.prec)

    def real_in(self, lo: float, hi: float) -> float:
        return math.exp(self.rng.uniform(math.log(lo), math.log(hi)))

    def on_circle(self, radius: float) -> HPComplex:
        ang = self.rng.uniform(0.0, 2 * math.pi)
        return HPComplex(radius * math.cos(ang), radius * math.sin(ang),
                         precision_bits=self.prec)

    def balanced_pair(self, n: int, rlo=0.92, rhi=1.08):
        """n points with product exactly 1, moduli near the unit circle."""
        pts = [self.complex_in(rlo, rhi) for _ in range(n - 1)]
        last = HPComplex(1, precision_bits=self.prec)
        for z in pts:
            last = last / z
        return tuple(pts) + (last,)


def _fmt(z: HPComplex, dps=24):
    return z.to_str(dps)


def _laurent_eval(f: LaurentPoly, prec):
    def ev(x):
        return f.evaluate(x, coeff_eval=lambda c: _coeff_num(c, prec))

    return ev


def _coeff_num(c, prec):
    from .ratfun import RationalFn

    if isinstance(c, RationalFn):
        raise EllipqError("numeric evaluation needs numeric coefficients")
    return HPComplex(c, precision_bits=prec)


# ----------------------------------------------------------------------
# special-function identities
# ----------------------------------------------------------------------


def verify_gamma_identities(seed: int, points: int = 100, prec: int = 256,
                            threshold: float | None = None) -> VerificationReport:
    """Shift and reflection identities of the elliptic gamma function on
    seeded random admissible points; reports the worst relative residual."""
    t0 = time.time()
    threshold = threshold or 2.0 ** (-(prec - 20))
    sampler = ParamSampler(seed, prec)
    tol = 2.0 ** (-(prec + 40))
    worst_shift = worst_refl = 0.0
    done = 0
    while done < points:
        p = sampler.complex_in(0.05, 0.30)
        q = sampler.complex_in(0.05, 0.30)
        x = sampler.complex_in(0.15, 2.5)
        params = EllipticParams(p, q, tol)
        try:
            g = gamma_pq(x, params)
            lhs = gamma_pq(q * x, params)
            rhs = theta(x, p, tol, prec + 40) * g
            refl = gamma_pq(p * q / x, params) * g
        except (RegionError, EllipqError):
            continue
        _, rel = residuals(lhs, rhs)
        worst_shift = max(worst_shift, rel)
        _, rel2 = residuals(refl, HPComplex(1, precision_bits=prec))
        worst_refl = max(worst_refl, rel2)
        done += 1
    worst = max(worst_shift, worst_refl)
    return VerificationReport(
        identity="gamma-identities",
        parameters={"points": str(points)},
        quadrature_orders=[],
        lhs="(worst case over batch)", rhs="(worst case over batch)",
        abs_residual=worst, rel_residual=worst,
        threshold=threshold, passed=worst < threshold,
        precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)


def _theta_sum(side_x, side_y, k, c, t, params, prec):
    """One side of the finite theta-function identity: sum over |I| = k of
    ratio products in side_x with cross factors against side_y."""
    import itertools

    n = len(side_x)
    tol = params.tol
    p = params.p
    total = HPComplex(0, precision_bits=prec)
    for subset in itertools.combinations(range(n), k):
        inside = set(subset)
        term = HPComplex(1, precision_bits=prec)
        for i in inside:
            for j in range(n):
                if j not in inside:
                    term = term * theta(t * side_x[i] / side_x[j], p, tol, prec) \
                        / theta(side_x[i] / side_x[j], p, tol, prec)
            for j in range(n):
                term = term * theta(c * side_x[i] * side_y[j], p, tol, prec) \
                    / theta(c * t * side_x[i] * side_y[j], p, tol, prec)
        total = total + term
    return total


def verify_theta_identity(n: int, k: int, seed: int, prec: int = 256,
                          threshold: float | None = None,
                          max_retries: int = 50) -> VerificationReport:
    """The finite sum identity equivalent to the kernel function identity:
    symmetric under swapping the two variable families."""
    t0 = time.time()
    threshold = threshold or 2.0 ** (-(prec - 24))
    sampler = ParamSampler(seed, prec)
    wp = prec + 40
    tol = 2.0 ** (-wp)
    for _ in range(max_retries):
        p = sampler.complex_in(0.05, 0.25)
        c = sampler.complex_in(0.3, 0.9)
        t = sampler.complex_in(0.3, 0.9)
        x = tuple(sampler.complex_in(0.7, 1.4) for _ in range(n))
        y = tuple(sampler.complex_in(0.7, 1.4) for _ in range(n))
        params = EllipticParams(p, HPComplex(0, precision_bits=prec), tol)
        # reject draws with a near-vanishing theta denominator
        floor = 1e-8
        clear = True
        for i in range(n):
            for j in range(n):
                if i != j and modulus(theta(x[i] / x[j], p, tol, wp)) < floor:
                    clear = False
                if i != j and modulus(theta(y[i] / y[j], p, tol, wp)) < floor:
                    clear = False
                if modulus(theta(c * t * x[i] * y[j], p, tol, wp)) < floor:
                    clear = False
        if not clear:
            continue
        lhs = _theta_sum(x, y, k, c, t, params, wp)
        rhs = _theta_sum(y, x, k, c, t, params, wp)
        a, rel = residuals(lhs, rhs)
        return VerificationReport(
            identity="theta-identity",
            parameters={"n": str(n), "k": str(k), "p": _fmt(p), "c": _fmt(c), "t": _fmt(t)},
            quadrature_orders=[],
            lhs=_fmt(lhs), rhs=_fmt(rhs),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    raise EllipqError("could not sample a nonsingular theta-identity point")


# ----------------------------------------------------------------------
# torus-integral identities
# ----------------------------------------------------------------------


def _grry_draw(sampler: ParamSampler, prec: int):
    # |t| drives the trapezoid rate through the sqrt(|t|) pole ring of the
    # cross-ratio factor, so it is kept small
    p = sampler.complex_in(0.03, 0.08)
    q = sampler.complex_in(0.03, 0.08)
    t = sampler.complex_in(0.12, 0.22)
    c = sampler.complex_in(0.28, 0.42)
    d = sampler.complex_in(0.28, 0.42)
    x = sampler.balanced_pair(2)
    y = sampler.balanced_pair(2)
    return p, q, t, c, d, x, y


def verify_grry(n: int, seed: int, prec: int = 128, N: int = 48,
                threshold: float = 1e-10, cap: int = 256) -> VerificationReport:
    """Symmetry of the composed two-parameter kernel in (c, d), plus the
    equivalent symmetries of the paired-argument integral on the same data."""
    t0 = time.time()
    sampler = ParamSampler(seed, prec)
    quad_tol = min(1e-14, threshold * 1e-3)
    if n == 1:
        p, q, t, c, d, _, _ = _grry_draw(sampler, prec)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))
        x = y = (sampler.complex_in(0.9, 1.1),)
        lhs = kernel_Kcd(x, y, c, d, t, params)
        rhs = kernel_Kcd(x, y, d, c, t, params)
        a, rel = residuals(lhs, rhs)
        return VerificationReport(
            identity="grry", parameters={"n": "1"}, quadrature_orders=[],
            lhs=_fmt(lhs), rhs=_fmt(rhs), abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    if n != 2:
        raise EllipqError("the composed-kernel check is implemented for n <= 2")
    for _ in range(50):
        p, q, t, c, d, x, y = _grry_draw(sampler, prec)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))
        try:
            lhs = kernel_Kcd(x, y, c, d, t, params, N=N, quad_tol=quad_tol, cap=cap)
            rhs = kernel_Kcd(x, y, d, c, t, params, N=N, quad_tol=quad_tol, cap=cap)
            a, rel = residuals(lhs, rhs)
            extras = {}
            # paired-argument integral form on the same data
            s = (p * q / (c * d * t)).sqrt()
            yargs = tuple(HPComplex(1, precision_bits=prec) / (s * xi) for xi in x) \
                + tuple(s / yj for yj in y)
            spec_ab = DixonSpec(kind="J", n=n, y=yargs, a=(s * d,), b=(s * c,))
            spec_ba = DixonSpec(kind="J", n=n, y=yargs, a=(s * c,), b=(s * d,))
            jab = dixon_integral(spec_ab, params, N=N, quad_tol=quad_tol, cap=cap)
            jba = dixon_integral(spec_ba, params, N=N, quad_tol=quad_tol, cap=cap)
            _, extras["j-symmetry"] = residuals(jab, jba)
            _, extras["kernel-j-relation"] = residuals(lhs, jab)
            yinv = tuple(HPComplex(1, precision_bits=prec) / v for v in yargs)
            spec_inv = DixonSpec(kind="J", n=n, y=yinv, a=(s * c,), b=(s * d,))
            jinv = dixon_integral(spec_inv, params, N=N, quad_tol=quad_tol, cap=cap)
            _, extras["j-trivial-symmetry"] = residuals(jab, jinv)
        except RegionError:
            continue
        passed = rel < threshold and all(v < threshold for v in extras.values())
        return VerificationReport(
            identity="grry",
            parameters={"n": str(n), "p": _fmt(p), "q": _fmt(q), "t": _fmt(t),
                        "c": _fmt(c), "d": _fmt(d)},
            quadrature_orders=[N],
            lhs=_fmt(lhs), rhs=_fmt(rhs),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=passed,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0,
            extra_residuals=extras)
    raise EllipqError("could not sample an admissible parameter point")


def verify_rains(n: int, m: int, seed: int, prec: int = 128, N: int = 32,
                 threshold: float = 1e-10, cap: int = 256,
                 max_retries: int = 200) -> VerificationReport:
    """The integral transformation between the (n, m) and (m, n) members of
    the type-A family, with balancing enforced by scaling the last lower
    parameter."""
    t0 = time.time()
    sampler = ParamSampler(seed, prec)
    quad_tol = threshold * 1e-2
    # upper-parameter moduli must exceed |s| = |prod(a)|^{1/m}, which forces
    # wider windows as m grows
    a_win = (0.55, 0.70) if m == 1 else (0.50, 0.53)
    b_win = (0.30, 0.55) if m == 1 else (0.05, 0.12)
    for _ in range(max_retries):
        p = sampler.complex_in(0.05, 0.10)
        q = sampler.complex_in(0.05, 0.10)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))
        a = tuple(sampler.complex_in(*a_win) for _ in range(n + m))
        b_free = tuple(sampler.complex_in(*b_win) for _ in range(n + m - 1))
        prod = (p * q) ** m
        for v in a + b_free:
            prod = prod / v
        b = b_free + (prod,)
        s_to_m = HPComplex(1, precision_bits=prec)
        for v in a:
            s_to_m = s_to_m * v
        s = s_to_m.root(m)
        ms = modulus(s)
        ok = all(ms < modulus(v) < 1 for v in a)
        mpq = modulus(p * q)
        ok = ok and all(mpq / ms < modulus(v) < 1 for v in b)
        if not ok:
            continue
        a2 = tuple(p * q / (s * v) for v in b)
        b2 = tuple(s / v for v in a)
        # keep the transformed parameters clear of the unit torus so both
        # integrals converge at moderate grid orders
        if not all(modulus(v) < 0.80 for v in a2 + b2):
            continue
        spec = DixonSpec(kind="I", n=n, m=m, a=a, b=b)
        lhs = dixon_integral(spec, params, N=N, quad_tol=quad_tol, cap=cap)
        pref = HPComplex(1, precision_bits=prec)
        for ai in a:
            for bj in b:
                pref = pref * gamma_pq(ai * bj, params)
        spec2 = DixonSpec(kind="I", n=m, m=n, a=a2, b=b2)
        rhs = pref * dixon_integral(spec2, params, N=N, quad_tol=quad_tol, cap=cap)
        aabs, rel = residuals(lhs, rhs)
        return VerificationReport(
            identity="rains",
            parameters={"n": str(n), "m": str(m), "p": _fmt(p), "q": _fmt(q)},
            quadrature_orders=[N],
            lhs=_fmt(lhs), rhs=_fmt(rhs),
            abs_residual=aabs, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    raise EllipqError("could not sample admissible transformation parameters")


def verify_qd_commutation(n: int, k: int, seed: int, prec: int = 140, N: int = 32,
                          threshold: float = 1e-10, cap: int = 256,
                          f: LaurentPoly | None = None) -> VerificationReport:
    """Commutation of the order-k difference operator with the integral
    operator: outer difference of the integral versus integral of the
    difference."""
    t0 = time.time()
    sampler = ParamSampler(seed, prec)
    quad_tol = threshold * 1e-3
    if f is None:
        f = monomial_sym_poly(SignedPartition((1,) + (0,) * (n - 1)), n, one=1)
    f_ev = _laurent_eval(f, prec)
    for _ in range(50):
        p = sampler.complex_in(0.02, 0.04)
        q = sampler.complex_in(0.12, 0.18)
        t = sampler.complex_in(0.15, 0.25)
        c = sampler.complex_in(0.18, 0.29)
        y = sampler.balanced_pair(n)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))

        # rigid grid rotation keeps the removable diagonal singularity of
        # the difference-operator integrand off the grid
        offset = 0.9712354

        def qc_f(yy):
            return q_apply_numeric("Q", c, f_ev, yy, t, params, N=N,
                                   quad_tol=quad_tol, cap=cap, angle_offset=offset)

        def dk_f(xx):
            return ruijsenaars_numeric(k, f_ev, xx, t, params)

        try:
            lhs = ruijsenaars_numeric(k, qc_f, y, t, params)
            rhs = q_apply_numeric("Q", c, dk_f, y, t, params, N=N,
                                  quad_tol=quad_tol, cap=cap, angle_offset=offset)
        except RegionError:
            continue
        a, rel = residuals(lhs, rhs)
        return VerificationReport(
            identity="qd-commutation",
            parameters={"n": str(n), "k": str(k), "p": _fmt(p), "q": _fmt(q),
                        "t": _fmt(t), "c": _fmt(c)},
            quadrature_orders=[N],
            lhs=_fmt(lhs), rhs=_fmt(rhs),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    raise EllipqError("could not sample an admissible commutation point")


def verify_qhqp(n: int, seed: int, prec: int = 128, N: int = 32,
                threshold: float = 1e-10, cap: int = 256) -> VerificationReport:
    """Commutation of the direct and gauge-transformed integral operators:
    both composed kernels are instances of the (n, n) integral family and
    must agree."""
    t0 = time.time()
    sampler = ParamSampler(seed, prec)
    quad_tol = min(1e-14, threshold * 1e-3)
    from .quadrature import _kappa

    for _ in range(50):
        p = sampler.complex_in(0.03, 0.07)
        q = sampler.complex_in(0.03, 0.07)
        t = sampler.complex_in(0.22, 0.32)
        c = sampler.complex_in(0.30, 0.45)
        d = sampler.complex_in(0.55, 0.75)
        x = sampler.balanced_pair(n, 0.95, 1.05)
        y = sampler.balanced_pair(n, 0.95, 1.05)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))
        r = HPComplex(1, precision_bits=prec)
        mt, mpq = modulus(t), modulus(p * q)
        ok = True
        for j in range(n):
            for val in (modulus(c / x[j]), modulus(c * y[j])):
                ok = ok and mpq / mt < val < 1
            for val in (modulus(d / x[j]), modulus(d * y[j])):
                ok = ok and mt < val < 1
        if not ok:
            continue
        a1 = tuple(d * r / xj for xj in x) + tuple(p * q * r / (c * t * yj) for yj in y)
        b1 = tuple(t * xj / (d * r) for xj in x) + tuple(c * yj / r for yj in y)
        try:
            spec1 = DixonSpec(kind="I", n=n, m=n, a=a1, b=b1)
            k1 = dixon_integral(spec1, params, N=N, quad_tol=quad_tol, cap=cap)
            a2 = tuple(c * r / xj for xj in x) + tuple(t * r / (d * yj) for yj in y)
            b2 = tuple(p * q * xj / (c * t * r) for xj in x) + tuple(d * yj / r for yj in y)
            spec2 = DixonSpec(kind="I", n=n, m=n, a=a2, b=b2)
            k2 = dixon_integral(spec2, params, N=N, quad_tol=quad_tol, cap=cap)
        except (RegionError, EllipqError):
            continue
        kap = _kappa(n, params, prec)
        k1 = k1 / kap
        pref = HPComplex(1, precision_bits=prec)
        for i in range(n):
            for j in range(n):
                if i != j:
                    pref = pref * gamma_pq(t * x[i] / x[j], params)
                    pref = pref / gamma_pq(t * y[i] / y[j], params)
        k2 = pref * k2 / kap
        a, rel = residuals(k1, k2)
        return VerificationReport(
            identity="qhqp",
            parameters={"n": str(n), "p": _fmt(p), "q": _fmt(q), "t": _fmt(t),
                        "c": _fmt(c), "d": _fmt(d)},
            quadrature_orders=[N],
            lhs=_fmt(k1), rhs=_fmt(k2),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    raise EllipqError("could not sample an admissible parameter point")


def verify_eigenvalue_series(parts: tuple, n: int, seed: int, c_values=None, prec: int = 140,
                   N: int = 32, threshold: float = 1e-8, cap: int = 256,
                   c_order: int | None = None) -> VerificationReport:
    """Quadrature of the p = 0 integral operator on P_lambda against the
    eigenvalue series from the orthogonality/Cauchy constants."""
    t0 = time.time()
    lam = SignedPartition(tuple(parts))
    sampler = ParamSampler(seed, prec)
    quad_tol = min(1e-14, threshold * 1e-3)
    qv = sampler.complex_in(0.10, 0.2)
    tv = sampler.complex_in(0.10, 0.2)
    y = sampler.balanced_pair(n)
    zero = HPComplex(0, precision_bits=prec)
    params = EllipticParams(zero, qv, 2.0 ** (-(prec + 16)))
    if c_values is None:
        c_values = [HPComplex(0.04, 0.02, precision_bits=prec),
                    HPComplex(-0.06, 0.02, precision_bits=prec),
                    HPComplex(0.01, -0.07, precision_bits=prec)]
    cap_order = c_order or (lam.weight + 10)
    phi = phi_lambda_series(lam, n, cap_order)
    p_lam = macdonald_poly(lam, n)

    def p_eval(x):
        return p_lam.evaluate(
            x, coeff_eval=lambda r: r.subs_numeric({"q": qv, "t": tv}, prec))

    worst = 0.0
    lhs_s = rhs_s = ""
    for c in c_values:
        lhs = q_apply_numeric("Q", c, p_eval, y, tv, params, N=N,
                              quad_tol=quad_tol, cap=cap)
        rhs = phi.eval_numeric(c, qv, tv, prec) * p_eval(y)
        _, rel = residuals(lhs, rhs)
        if rel >= worst:
            worst = rel
            lhs_s, rhs_s = _fmt(lhs), _fmt(rhs)
    return VerificationReport(
        identity="eigenvalue-series",
        parameters={"lambda": str(lam), "n": str(n), "q": _fmt(qv), "t": _fmt(tv)},
        quadrature_orders=[N],
        lhs=lhs_s, rhs=rhs_s,
        abs_residual=worst, rel_residual=worst,
        threshold=threshold, passed=worst < threshold,
        precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)


# ----------------------------------------------------------------------
# the residue degeneration
# ----------------------------------------------------------------------


def _nearest_pinch_distance(c0, y, p, q, t, prec):
    """Scan the gamma-argument lattice for competing singularities in c and
    return the distance from c0 to the nearest one."""
    Y = y[0] * y[1]
    best = None
    for j in range(2):
        for jp in range(2):
            base = Y / (y[j] * y[jp])
            for A in range(0, 5):
                for B in range(0, 5):
                    for fam in ("plain", "t"):
                        c2 = base * p ** -A * q ** -B
                        if fam == "t":
                            c2 = c2 * (p * q) / (t * t)
                        cs = c2.sqrt()
                        for cand in (cs, -cs):
                            dist = modulus(cand - c0)
                            if dist > 1e-12 and (best is None or dist < best):
                                best = dist
    return best


def residue_noumi_sano(n: int, k: int, f: LaurentPoly | None, seed: int,
                       prec: int = 140, N: int = 48, M: int = 20,
                       threshold: float = 1e-6, cap: int = 512) -> VerificationReport:
    """Residue of the analytically continued integral operator at the
    degenerate parameter against the alternative difference-operator side.

    The left side is a small-circle contour integral in the spectral
    parameter around q^{-k/n} (principal root), with the operator evaluated
    on its deformed-contour continuation; the right side applies the gauged
    discrete operator at the shifted argument.
    """
    t0 = time.time()
    if f is None:
        f = LaurentPoly.constant(n, 1)
    sampler = ParamSampler(seed, prec)
    f_ev = _laurent_eval(f, prec)
    if n == 1:
        p = sampler.complex_in(0.06, 0.12)
        q = sampler.complex_in(0.10, 0.2)
        t = sampler.complex_in(0.3, 0.5)
        y = (sampler.complex_in(0.8, 1.2),)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 24)))
        c0 = q ** -k
        rho = 0.05
        res = _circle_residue(
            lambda c: f_ev(y) * gamma_pq(c, params) / gamma_pq(c * t, params),
            c0, rho, M, prec)
        rhs = _ns_residue_rhs(n, k, f_ev, y, t, params, prec)
        a, rel = residuals(res, rhs)
        return VerificationReport(
            identity="ns-residue",
            parameters={"n": "1", "k": str(k), "p": _fmt(p), "q": _fmt(q), "t": _fmt(t)},
            quadrature_orders=[M],
            lhs=_fmt(res), rhs=_fmt(rhs),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    if n != 2:
        raise EllipqError("the residue check is implemented for n <= 2")
    for _ in range(50):
        p = sampler.complex_in(0.03, 0.05)
        q = sampler.complex_in(0.10, 0.14)
        mq = modulus(q)
        r_ratio = 1.12
        t_lo = modulus(p * q) * r_ratio
        t_hi = mq ** k / r_ratio ** (n - 1)
        t = sampler.on_circle(math.exp(
            0.5 * (math.log(t_lo * 1.6) + math.log(t_hi * 0.7))))
        y1 = sampler.on_circle(sampler.real_in(0.97, 1.03))
        y2 = sampler.on_circle(sampler.real_in(0.97, 1.03))
        y = (y1, y2)
        if modulus(y1 / y2) >= r_ratio or modulus(y2 / y1) >= r_ratio:
            continue
        params = EllipticParams(p, q, 2.0 ** (-(prec + 24)))
        c0 = (q ** -k).root(n)
        dist = _nearest_pinch_distance(c0, y, p, q, t, prec)
        rho = dist / 8 if dist else 0.02
        try:
            res = _circle_residue(
                lambda c: continued_q_apply(c, f_ev, y, t, params, N=N,
                                            quad_tol=min(1e-12, threshold * 1e-3),
                                            cap=cap),
                c0, rho, M, prec)
        except (RegionError, EllipqError):
            continue
        rhs = _ns_residue_rhs(n, k, f_ev, y, t, params, prec)
        a, rel = residuals(res, rhs)
        return VerificationReport(
            identity="ns-residue",
            parameters={"n": str(n), "k": str(k), "p": _fmt(p), "q": _fmt(q),
                        "t": _fmt(t), "rho": f"{rho:.4e}"},
            quadrature_orders=[M, N],
            lhs=_fmt(res), rhs=_fmt(rhs),
            abs_residual=a, rel_residual=rel,
            threshold=threshold, passed=rel < threshold,
            precision_bits=prec, seed=seed, wall_time_s=time.time() - t0)
    raise EllipqError("could not sample an admissible residue configuration")


def _circle_residue(fn, c0, rho, M, prec):
    """(1/2 pi i) contour integral of fn around the circle |c - c0| = rho."""
    total = HPComplex(0, precision_bits=prec)
    rho_c = HPComplex(rho, precision_bits=prec)
    for m in range(M):
        w = unit_root(m, M, prec)
        c = c0 + rho_c * w
        total = total + fn(c) * w
    return total * rho_c / M


def _ns_residue_rhs(n, k, f_ev, y, t, params, prec):
    """-(n-1)! q^{-k/n} t^{kn} / ((p;p)^n (q;q)^n Gamma(t)^n) (H^(k) f)(q^{-k/n} y)."""
    from .elliptic import euler_inf

    p, q = params.p, params.q
    shift = (q ** -k).root(n)
    ys = tuple(shift * v for v in y)
    hval = noumi_sano_numeric("H", k, f_ev, ys, t, params)
    ep = euler_inf(p.with_precision(prec + 24), params.tol, prec + 24)
    eq = euler_inf(q.with_precision(prec + 24), params.tol, prec + 24)
    gt = gamma_pq(t, params)
    pref = -HPComplex(math.factorial(n - 1), precision_bits=prec) * shift * t ** (k * n) \
        / ((ep * eq * gt) ** n)
    return pref * hval
