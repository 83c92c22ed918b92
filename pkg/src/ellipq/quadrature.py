"""Spectrally accurate quadrature on constrained tori and the integral
operators built on it.

The domain is the set |x_1| = ... = |x_n|, x_1...x_n = r^n; the last
coordinate is eliminated, so grid points satisfy the product constraint
exactly.  Equispaced products of trapezoidal rules integrate Laurent
monomials of per-angle degree < N exactly, giving geometric convergence for
integrands analytic in an annulus around the torus.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .elliptic import EllipticParams, gamma_pq, gamma_residue, theta
from .errors import (
    BalancingError,
    ContourError,
    ConvergenceError,
    EllipqError,
    RegionError,
)
from .hpcomplex import HPComplex, log_modulus, modulus, unit_root


@dataclass(frozen=True)
class TorusDomain:
    """Product-constrained torus x_1...x_n = r^n with |x_i| all equal.

    ``multipliers`` optionally deform the first n-1 radii; the last radius
    compensates so the product constraint continues to hold exactly.
    ``angle_offset`` rotates the grid rigidly (useful when an integrand has
    a removable singularity at coinciding angles).
    """

    n: int
    r: HPComplex
    points_per_dim: int = 32
    multipliers: tuple = field(default=())
    angle_offset: float = 0.0

    def __post_init__(self):
        if self.multipliers and len(self.multipliers) != self.n - 1:
            raise EllipqError("need one radius multiplier per free angle")
        if any(m <= 0 for m in self.multipliers):
            raise EllipqError("radius multipliers must be positive")

    def _scales(self, prec):
        mults = self.multipliers or (1.0,) * (self.n - 1)
        r = self.r.with_precision(prec)
        rot = HPComplex(math.cos(self.angle_offset), math.sin(self.angle_offset),
                        precision_bits=prec) if self.angle_offset else None
        scaled = []
        for m in mults:
            z = r * HPComplex(m, precision_bits=prec)
            scaled.append(z * rot if rot is not None else z)
        return scaled, r ** self.n

    def grid(self, N, prec):
        """Yield grid points as n-tuples at the given precision."""
        scaled, rn = self._scales(prec)
        roots = [unit_root(k, N, prec) for k in range(N)]
        for idx in itertools.product(range(N), repeat=self.n - 1):
            free = tuple(scaled[d] * roots[idx[d]] for d in range(self.n - 1))
            last = rn
            for z in free:
                last = last / z
            yield free + (last,)


def torus_integrate_full(f, dom: TorusDomain, tol: float, prec: int,
                         cap: int = 1024):
    """Adaptive product-trapezoid integration; returns (value, N, delta).

    N doubles until the value moves by less than tol (relative), starting
    from dom.points_per_dim; grid values are cached across refinements.
    """
    cache = {}
    scaled, rn = dom._scales(prec)

    def value_at(N):
        total = HPComplex(0, precision_bits=prec)
        for idx in itertools.product(range(N), repeat=dom.n - 1):
            key = tuple(Fraction(k, N) for k in idx)
            val = cache.get(key)
            if val is None:
                free = tuple(scaled[d] * unit_root(idx[d], N, prec)
                             for d in range(dom.n - 1))
                last = rn
                for z in free:
                    last = last / z
                val = f(free + (last,))
                cache[key] = val
            total = total + val
        return total / (N ** (dom.n - 1))

    N = dom.points_per_dim
    prev = value_at(N)
    while True:
        N *= 2
        cur = value_at(N)
        delta = modulus(cur - prev)
        # relative acceptance, with an absolute floor so that integrals of
        # (numerically) vanishing value can converge
        scale = max(modulus(cur), modulus(prev), 1.0)
        if delta <= tol * scale:
            return cur, N, delta
        if N >= cap:
            raise ConvergenceError(
                f"quadrature did not converge at N = {N} (delta {delta:.3e})",
                value=cur, previous=prev)
        prev = cur


def torus_integrate(f, dom: TorusDomain, tol: float, prec: int | None = None,
                    cap: int = 1024) -> HPComplex:
    """Adaptive integral over the constrained torus with the normalized
    measure prod dx_j / (2 pi i x_j)."""
    prec = prec or dom.r.precision_bits
    value, _, _ = torus_integrate_full(f, dom, tol, prec, cap)
    return value


def require_region(conditions):
    """conditions: iterable of (ok, description). Raises RegionError with
    the first violated inequality; total over the parameter point."""
    for ok, desc in conditions:
        if not ok:
            raise RegionError(f"region violation: {desc}", inequality=desc)


def _selberg_factor(x, t, params: EllipticParams, prec):
    """prod_{i != j} Gamma(t x_i/x_j) / Gamma(x_i/x_j), with the denominator
    written as an entire theta product (no poles on the torus)."""
    n = len(x)
    acc = HPComplex(1, precision_bits=prec)
    for i in range(n):
        for j in range(n):
            if i != j:
                acc = acc * gamma_pq(t * x[i] / x[j], params)
    for i in range(n):
        for j in range(i + 1, n):
            acc = acc * theta(x[i] / x[j], params.p, params.tol, prec)
            acc = acc * theta(x[j] / x[i], params.q, params.tol, prec)
    return acc


def _vartheta_inverse_gammas(x, params, prec):
    """1 / prod_{i != j} Gamma(x_i/x_j) as an entire theta product."""
    n = len(x)
    acc = HPComplex(1, precision_bits=prec)
    for i in range(n):
        for j in range(i + 1, n):
            acc = acc * theta(x[i] / x[j], params.p, params.tol, prec)
            acc = acc * theta(x[j] / x[i], params.q, params.tol, prec)
    return acc


def _principal_root(z: HPComplex, n: int) -> HPComplex:
    return z.root(n)


def q_apply_region(variant, c, y, t, params, r):
    """Admissibility inequalities for the integral operators."""
    mt = modulus(t)
    mpq = modulus(params.p * params.q)
    conds = []
    for j, yj in enumerate(y):
        ratio = modulus(c * yj) / modulus(r)
        if variant == "Q":
            conds.append((mpq / mt < ratio, f"|pq/t| < |c y_{j+1}/r|"))
            conds.append((ratio < 1, f"|c y_{j+1}/r| < 1"))
        else:
            conds.append((mt < ratio, f"|t| < |c y_{j+1}/r|"))
            conds.append((ratio < 1, f"|c y_{j+1}/r| < 1"))
    return conds


def q_apply_numeric(variant: str, c: HPComplex, f_eval, y: tuple, t: HPComplex,
                    params: EllipticParams, N: int = 32, quad_tol: float | None = None,
                    cap: int = 1024, angle_offset: float = 0.0) -> HPComplex:
    """Numeric application of the integral operator to a symmetric function.

    ``variant`` 'Q' uses the direct kernel, 'Qt' its gauge transform.  The
    integration runs over the torus with x_1...x_n = y_1...y_n; region
    admissibility is checked before any gamma evaluation.
    """
    if variant not in ("Q", "Qt"):
        raise EllipqError(f"unknown operator variant {variant!r}")
    n = len(y)
    prec = max([params.prec, c.precision_bits] + [v.precision_bits for v in y])
    quad_tol = quad_tol or max(params.tol, 2.0 ** (-(prec - 16)))
    Y = y[0]
    for v in y[1:]:
        Y = Y * v
    r = _principal_root(Y, n)
    require_region(q_apply_region(variant, c, y, t, params, r))
    if n == 1:
        if variant == "Q":
            return f_eval((y[0],)) * gamma_pq(c, params) / gamma_pq(c * t, params)
        return f_eval((y[0],)) * gamma_pq(c, params) * gamma_pq(t / c, params)

    if variant == "Q":
        def integrand(x):
            acc = f_eval(x) * _selberg_factor(x, t, params, prec)
            for i in range(n):
                for j in range(n):
                    acc = acc * gamma_pq(c * y[j] / x[i], params)
                    acc = acc / gamma_pq(c * t * y[j] / x[i], params)
            return acc
    else:
        ypre = HPComplex(1, precision_bits=prec)
        for i in range(n):
            for j in range(n):
                if i != j:
                    ypre = ypre / gamma_pq(t * y[i] / y[j], params)

        def integrand(x):
            acc = f_eval(x) * _vartheta_inverse_gammas(x, params, prec) * ypre
            for i in range(n):
                for j in range(n):
                    acc = acc * gamma_pq(c * y[j] / x[i], params)
                    acc = acc * gamma_pq(t * x[i] / (c * y[j]), params)
            return acc

    dom = TorusDomain(n, r, points_per_dim=N, angle_offset=angle_offset)
    return torus_integrate(integrand, dom, quad_tol, prec, cap)


def kernel_Kcd(x: tuple, y: tuple, c: HPComplex, d: HPComplex, t: HPComplex,
               params: EllipticParams, N: int = 32, quad_tol: float | None = None,
               cap: int = 1024) -> HPComplex:
    """The composed two-parameter kernel: a single torus integral in z.

    Requires x_1...x_n = y_1...y_n (within tolerance) and the admissibility
    inequalities |pq/t| < |c r/x_j|, |d r/x_j|, |c y_j/r|, |d y_j/r| < 1.
    """
    n = len(x)
    prec = max([params.prec] + [v.precision_bits for v in x + y])
    quad_tol = quad_tol or max(params.tol, 2.0 ** (-(prec - 16)))
    X = x[0]
    for v in x[1:]:
        X = X * v
    Y = y[0]
    for v in y[1:]:
        Y = Y * v
    if modulus(X - Y) > 1e-25 * max(modulus(X), modulus(Y)):
        raise BalancingError("balancing x_1...x_n = y_1...y_n violated")
    r = _principal_root(Y, n)
    mt, mpq = modulus(t), modulus(params.p * params.q)
    conds = []
    for j in range(n):
        for label, val in (("c r/x", modulus(c * r / x[j])),
                           ("d r/x", modulus(d * r / x[j])),
                           ("c y/r", modulus(c * y[j] / r)),
                           ("d y/r", modulus(d * y[j] / r))):
            conds.append((mpq / mt < val, f"|pq/t| < |{label}_{j+1}|"))
            conds.append((val < 1, f"|{label}_{j+1}| < 1"))
    require_region(conds)
    if n == 1:
        return gamma_pq(c, params) * gamma_pq(d, params) \
            / (gamma_pq(c * t, params) * gamma_pq(d * t, params))

    def integrand(z):
        acc = _selberg_factor(z, t, params, prec)
        for i in range(n):
            for j in range(n):
                acc = acc * gamma_pq(c * y[j] / z[i], params)
                acc = acc / gamma_pq(c * t * y[j] / z[i], params)
                acc = acc * gamma_pq(d * z[i] / x[j], params)
                acc = acc / gamma_pq(d * t * z[i] / x[j], params)
        return acc

    dom = TorusDomain(n, r, points_per_dim=N)
    return torus_integrate(integrand, dom, quad_tol, prec, cap)


# ----------------------------------------------------------------------
# elliptic hypergeometric integrals
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DixonSpec:
    """Parameters of the two integral families.

    kind 'I': vectors a, b of length n+m with prod(a) prod(b) = (pq)^m and
    all moduli < 1.  kind 'J': 2n-vector y with prod(y) = 1, scalars a, b
    with |pq| < |ab| and |b| < |y_j| < 1/|a|.
    """

    kind: str
    n: int
    m: int = 0
    a: tuple = ()
    b: tuple = ()
    y: tuple = ()

    def validate(self, params: EllipticParams):
        if self.kind == "I":
            if len(self.a) != self.n + self.m or len(self.b) != self.n + self.m:
                raise BalancingError("I-family needs n+m upper and lower parameters")
            prod = HPComplex(1, precision_bits=params.prec)
            for v in self.a + self.b:
                prod = prod * v
            target = (params.p * params.q) ** self.m
            if modulus(prod - target) > 1e-20 * max(1e-30, modulus(target)):
                raise BalancingError("balancing prod(a) prod(b) = (pq)^m violated")
            for v in self.a + self.b:
                if modulus(v) >= 1:
                    raise RegionError("parameter moduli must be < 1",
                                      inequality="|a_j|, |b_j| < 1")
        elif self.kind == "J":
            if len(self.y) != 2 * self.n or len(self.a) != 1 or len(self.b) != 1:
                raise BalancingError("J-family needs 2n y-arguments and scalar a, b")
            prod = HPComplex(1, precision_bits=params.prec)
            for v in self.y:
                prod = prod * v
            if modulus(prod - HPComplex(1, precision_bits=params.prec)) > 1e-20:
                raise BalancingError("balancing y_1...y_{2n} = 1 violated")
            a, b = self.a[0], self.b[0]
            if not modulus(params.p * params.q) < modulus(a * b):
                raise RegionError("need |pq| < |ab|", inequality="|pq| < |ab|")
            for j, v in enumerate(self.y):
                if not modulus(b) < modulus(v) < 1 / modulus(a):
                    raise RegionError(f"need |b| < |y_{j+1}| < 1/|a|",
                                      inequality="|b| < |y_j| < 1/|a|")
        else:
            raise EllipqError(f"unknown Dixon family {self.kind!r}")


def _kappa(n: int, params: EllipticParams, prec) -> HPComplex:
    from .elliptic import euler_inf

    ep = euler_inf(params.p.with_precision(prec), params.tol, prec)
    eq = euler_inf(params.q.with_precision(prec), params.tol, prec)
    return (ep * eq) ** (n - 1) / math.factorial(n)


def dixon_integral(spec: DixonSpec, params: EllipticParams, N: int = 32,
                   quad_tol: float | None = None, cap: int = 1024) -> HPComplex:
    """Evaluate one member of either integral family on the unit torus."""
    spec.validate(params)
    prec = max([params.prec] + [v.precision_bits for v in spec.a + spec.b + spec.y])
    quad_tol = quad_tol or max(params.tol, 2.0 ** (-(prec - 16)))
    n = spec.n
    one = HPComplex(1, precision_bits=prec)
    if spec.kind == "I":
        if n == 1:
            acc = one
            for v in spec.a:
                acc = acc * gamma_pq(v, params)
            for v in spec.b:
                acc = acc * gamma_pq(v, params)
            return acc

        def integrand(x):
            acc = _vartheta_inverse_gammas(x, params, prec)
            for xi in x:
                for v in spec.a:
                    acc = acc * gamma_pq(v * xi, params)
                for v in spec.b:
                    acc = acc * gamma_pq(v / xi, params)
            return acc

        dom = TorusDomain(n, one, points_per_dim=N)
        return _kappa(n, params, prec) * torus_integrate(integrand, dom, quad_tol, prec, cap)

    a, b = spec.a[0], spec.b[0]
    if n == 1:
        acc = one
        for yj in spec.y:
            acc = acc * gamma_pq(a * yj, params) * gamma_pq(b / yj, params)
        return acc
    tt = params.p * params.q / (a * b)

    def integrand(x):
        acc = _vartheta_inverse_gammas(x, params, prec)
        for i in range(n):
            for j in range(n):
                if i != j:
                    acc = acc * gamma_pq(tt * x[i] / x[j], params)
        for xi in x:
            for yj in spec.y:
                acc = acc * gamma_pq(a * xi * yj, params)
                acc = acc * gamma_pq(b / (xi * yj), params)
        return acc

    dom = TorusDomain(n, one, points_per_dim=N)
    return torus_integrate(integrand, dom, quad_tol, prec, cap)


# ----------------------------------------------------------------------
# analytic continuation of the integral operator near its residue point
# ----------------------------------------------------------------------


def _lattice_above(base_log, lp, lq, limit, depth=60):
    """(a, b, log-modulus) over a, b >= 0 with log|base| + a lp + b lq > limit."""
    out = []
    for a in range(depth):
        la = base_log + a * lp
        if la <= limit:
            break
        for b in range(depth):
            lab = la + b * lq
            if lab <= limit:
                break
            out.append((a, b, lab))
    return out


def continued_q_apply(c: HPComplex, f_eval, y: tuple, t: HPComplex,
                      params: EllipticParams, N: int = 64,
                      quad_tol: float | None = None, cap: int = 512) -> HPComplex:
    """(Q_c f)(y) for two variables, analytically continued in c.

    The base contour is the circle |x_1| = |y_1 y_2|^{1/2}; poles of the
    integrand that the admissible deformed contour must enclose (or must
    not) are restored by explicit residue corrections, which realizes the
    contour deformation exactly.
    """
    n = len(y)
    prec = max([params.prec, c.precision_bits] + [v.precision_bits for v in y])
    quad_tol = quad_tol or max(params.tol, 2.0 ** (-(prec - 20)))
    if n == 1:
        return f_eval((y[0],)) * gamma_pq(c, params) / gamma_pq(c * t, params)
    if n != 2:
        raise EllipqError("analytic continuation is implemented for n <= 2")
    p, q = params.p, params.q
    Y = y[0] * y[1]
    r = _principal_root(Y, 2)
    lr = log_modulus(r)
    lp, lq = log_modulus(p), log_modulus(q)

    def kernel_rest(x, skip=None):
        """Integrand at x = (x1, x2) with one gamma factor optionally skipped.

        skip = ('y', j) drops Gamma(c y_j / x_1); skip = ('x2', j) drops the
        x_2-side factor Gamma(c y_j / x_2)."""
        acc = f_eval(x) * _selberg_factor(x, t, params, prec)
        for i in range(2):
            for j in range(2):
                if skip == ("y", j) and i == 0:
                    pass
                elif skip == ("x2", j) and i == 1:
                    pass
                else:
                    acc = acc * gamma_pq(c * y[j] / x[i], params)
                acc = acc / gamma_pq(c * t * y[j] / x[i], params)
        return acc

    # clearance checks for the factors that must not cross the base circle
    checks = []
    for j in range(2):
        checks.append((log_modulus(c * t * y[j] / (p * q)) > lr,
                       "|c t y_j / pq| > r (denominator zeros outside)"))
        checks.append((log_modulus(Y * p * q / (c * t * y[j])) < lr,
                       "|Y pq /(c t y_j)| < r (x2-side denominator zeros inside)"))
    checks.append((0.5 * log_modulus(t * Y) < lr < 0.5 * (log_modulus(Y) - log_modulus(t)),
                   "sqrt|tY| < r < sqrt|Y/t| (Selberg factors clear)"))
    for ok, desc in checks:
        if not ok:
            raise ContourError(f"cannot hold pole configuration on the base circle: {desc}")

    corrections = []  # (sign, kind, j, a, b, x1star)
    clearance = 0.02
    for j in range(2):
        # inward-required poles x1 = c y_j p^a q^b with modulus > r: add
        base = log_modulus(c * y[j])
        for a, b, lab in _lattice_above(base, lp, lq, limit=lr - 3 * (-lq)):
            if abs(lab - lr) < clearance:
                raise ContourError(
                    "a pole sits on the base circle; use a smaller c-circle radius")
            if lab <= lr:
                continue
            x1s = c * y[j] * p ** a * q ** b
            corrections.append((+1, "y", j, a, b, x1s))
        # outward-required poles x1 = (Y/(c y_j)) p^-a q^-b with modulus < r: subtract
        base = log_modulus(Y / (c * y[j]))
        for a, b, lab in _lattice_above(-base, lp, lq, limit=-lr - 3 * (-lq)):
            if abs(lab + lr) < clearance:
                raise ContourError(
                    "a pole sits on the base circle; use a smaller c-circle radius")
            if -lab >= lr:
                continue
            x1s = (Y / (c * y[j])) * p ** -a * q ** -b
            corrections.append((-1, "x2", j, a, b, x1s))

    dom = TorusDomain(2, r, points_per_dim=N)
    base_val, _, _ = torus_integrate_full(kernel_rest, dom, quad_tol, prec, cap)

    total = base_val
    for sign, kind, j, a, b, x1s in corrections:
        x2s = Y / x1s
        rest = kernel_rest((x1s, x2s), skip=(kind, j))
        gres = gamma_residue(a, b, params)
        if kind == "y":
            # Gamma(c y_j / x1): residue in x1 is -gres * x1s^2 / (c y_j)
            res_x1 = -gres * x1s * x1s / (c * y[j])
        else:
            # Gamma(c y_j x1 / Y): residue in x1 is gres * Y / (c y_j)
            res_x1 = gres * Y / (c * y[j])
        total = total + rest * res_x1 / x1s * sign
    return total


@dataclass(frozen=True)
class QKernel:
    """Descriptor for the kernel variants, with the region predicate of the
    variant checked before any evaluation.

    Variants: 'Q' and 'Qt' are the integral-operator kernels (direct and
    gauge-transformed), 'Kc' the two-family kernel, 'Kct' its gauge
    transform, 'M' the integrand kernel of the direct integral operator.
    """

    variant: str
    n: int
    c: HPComplex
    t: HPComplex
    params: EllipticParams
    d: HPComplex = None

    def __post_init__(self):
        if self.variant not in ("Q", "Qt", "Kc", "Kct", "M"):
            raise EllipqError(f"unknown kernel variant {self.variant!r}")

    def region_conditions(self, x, y):
        mt = modulus(self.t)
        mpq = modulus(self.params.p * self.params.q)
        conds = []
        if self.variant in ("Kc", "Kct"):
            for xi in x:
                for yj in y:
                    v = modulus(self.c * xi * yj)
                    conds.append((mpq / mt < v, "|pq/t| < |c x_i y_j|"))
                    conds.append((v < 1, "|c x_i y_j| < 1"))
        else:
            r = _principal_root(_product(y, self.params.prec), self.n)
            conds.extend(q_apply_region("Q" if self.variant in ("Q", "M") else "Qt",
                                        self.c, y, self.t, self.params, r))
        return conds

    def __call__(self, x: tuple, y: tuple) -> HPComplex:
        """Pointwise kernel value (not defined for the integral-operator
        variants 'Q'/'Qt', which need a quadrature)."""
        require_region(self.region_conditions(x, y))
        prec = max([self.params.prec] + [v.precision_bits for v in x + y])
        par = self.params
        acc = HPComplex(1, precision_bits=prec)
        if self.variant == "Kc":
            for xi in x:
                for yj in y:
                    acc = acc * gamma_pq(self.c * xi * yj, par)
                    acc = acc / gamma_pq(self.c * self.t * xi * yj, par)
            return acc
        if self.variant == "Kct":
            for xi in x:
                for yj in y:
                    acc = acc * gamma_pq(self.c * xi * yj, par)
                    acc = acc * gamma_pq(self.t / (self.c * xi * yj), par)
            for fam in (x, y):
                for i in range(self.n):
                    for j in range(self.n):
                        if i != j:
                            acc = acc / gamma_pq(self.t * fam[i] / fam[j], par)
            return acc
        if self.variant == "M":
            for i in range(self.n):
                for j in range(self.n):
                    acc = acc * gamma_pq(self.c * y[j] / x[i], par)
                    acc = acc / gamma_pq(self.c * self.t * y[j] / x[i], par)
            return acc * _selberg_factor(x, self.t, par, prec)
        raise EllipqError(f"variant {self.variant!r} is an integral operator; "
                          "use q_apply_numeric")


def _product(vals, prec):
    acc = HPComplex(1, precision_bits=prec)
    for v in vals:
        acc = acc * v
    return acc
