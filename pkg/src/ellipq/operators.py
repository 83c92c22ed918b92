"""Difference operators of the relativistic trigonometric/elliptic family.

Symbolic application works on truncated p-series with symmetric Laurent
coefficients over Q(q,t): theta ratios are expanded through the triple
product series, every term of the operator sum is put over one common
denominator, and the final division is exact (a failure to clear is an
internal error, not a domain case).  Numeric application evaluates the same
sums through the high-precision theta/gamma routines.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .elliptic import EllipticParams, gamma_pq, theta
from .elliptic_series import theta_triple_series
from .errors import DenominatorClearError, EllipqError, EnvelopeError
from .hpcomplex import HPComplex, modulus
from .laurent import LaurentPoly, monomial_sym_poly
from .partitions import SignedPartition
from .ratfun import RationalFn
from .series import LaurentRing, PSeries, series_exact_div, series_inv

MAX_EXACT_VARS = 3
MAX_ORDER = 8

_QT = ("q", "t")


def _one():
    return RationalFn(1, _QT)


def _gen(name):
    return RationalFn(name, _QT)


@dataclass(frozen=True)
class DifferenceOperator:
    """Descriptor for one member of the commuting families."""

    kind: str  # 'ruijsenaars' | 'noumi-sano' | 'noumi-sano-gauged'
    k: int
    n: int
    p_order: int = 0

    def __post_init__(self):
        if self.kind == "ruijsenaars" and not 0 <= self.k <= self.n:
            raise EllipqError(f"order must satisfy 0 <= k <= n, got k={self.k}")
        if self.kind.startswith("noumi") and self.k < 0:
            raise EllipqError("order must be nonnegative")

    def apply(self, f: PSeries, K=None) -> PSeries:
        if self.kind == "ruijsenaars":
            return apply_ruijsenaars(self.k, f, K)
        variant = "H" if self.kind == "noumi-sano-gauged" else "Ht"
        return apply_noumi_sano(variant, self.k, f, K)


def _mono(n, exps, coeff=None):
    return LaurentPoly(n, {tuple(exps): coeff if coeff is not None else _one()})


def _pair_mono(n, i, j, coeff):
    exps = [0] * n
    exps[i] += 1
    exps[j] -= 1
    return _mono(n, exps, coeff)


def _qshift_series(f: PSeries, subset, n) -> PSeries:
    q = _gen("q")
    factors = [q if i in subset else _one() for i in range(n)]
    return PSeries([c.substitute_scale(factors) for c in f.coeffs], f.ring)


def _as_pseries(f, n, K) -> PSeries:
    if isinstance(f, PSeries):
        return f.pad(K) if f.order < K else f.truncate(K)
    if isinstance(f, LaurentPoly):
        return PSeries.constant(f, LaurentRing(n), K)
    raise EllipqError(f"cannot apply an operator to {type(f).__name__}")


def apply_ruijsenaars(k: int, f, K: int | None = None) -> PSeries:
    """Apply the order-k elliptic difference operator

        sum_{|I|=k} prod_{i in I, j not in I} theta_p(t x_i/x_j)/theta_p(x_i/x_j)
                    prod_{i in I} T_{q,x_i}

    exactly to order p^K.  Output coefficients are symmetric Laurent
    polynomials whenever the input's are.
    """
    n = f.n if isinstance(f, LaurentPoly) else f.ring.n
    if K is None:
        K = f.order if isinstance(f, PSeries) else 0
    if K > MAX_ORDER:
        raise EnvelopeError(f"p-order envelope is K <= {MAX_ORDER}")
    if n > MAX_EXACT_VARS:
        raise EnvelopeError(f"exact mode supports n <= {MAX_EXACT_VARS}")
    if not 0 <= k <= n:
        raise EllipqError(f"order must satisfy 0 <= k <= n, got k={k}")
    fs = _as_pseries(f, n, K)
    if k == 0:
        return fs
    if k == n:
        return _qshift_series(fs, set(range(n)), n)
    t = _gen("t")
    nser = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                nser[(i, j, "t")] = theta_triple_series(_pair_mono(n, i, j, t), K)
                nser[(i, j, "1")] = theta_triple_series(_pair_mono(n, i, j, _one()), K)
    den = None
    for i in range(n):
        for j in range(n):
            if i != j:
                den = nser[(i, j, "1")] if den is None else den * nser[(i, j, "1")]
    total = None
    for subset in itertools.combinations(range(n), k):
        inside = set(subset)
        term = _qshift_series(fs, inside, n)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if i in inside and j not in inside:
                    term = term * nser[(i, j, "t")]
                else:
                    term = term * nser[(i, j, "1")]
        total = term if total is None else total + term
    out = series_exact_div(total, den)
    _assert_in_v(out)
    return out


def _assert_in_v(series: PSeries):
    """Outputs must stay in the symmetric-Laurent module."""
    for c in series.coeffs:
        if not isinstance(c, LaurentPoly):
            raise DenominatorClearError("operator output has non-polynomial layer")
        if not c.is_symmetric():
            raise DenominatorClearError("operator output lost its symmetry")


def macdonald_eigenvalue(lam: SignedPartition, k: int, n: int) -> RationalFn:
    """Exact eigenvalue of the order-k operator on P_lambda at p = 0.

    This is t^{-k(k-1)/2} e_k(t^{n-1} q^{lam_1}, ..., t^0 q^{lam_n}): the
    prefactor matches the operator normalization above, whose k = n member
    is the plain total q-shift with eigenvalue q^{|lam|}.
    """
    if not 0 <= k <= n:
        raise EllipqError(f"order must satisfy 0 <= k <= n, got k={k}")
    if lam.n != n:
        raise EllipqError(f"partition has {lam.n} parts, expected {n}")
    q, t = _gen("q"), _gen("t")
    letters = [q ** lam.parts[i] * t ** (n - 1 - i) for i in range(n)]
    acc = RationalFn(0, _QT)
    for subset in itertools.combinations(range(n), k):
        term = _one()
        for i in subset:
            term = term * letters[i]
        acc = acc + term
    return acc * t ** (-(k * (k - 1) // 2))


# ----------------------------------------------------------------------
# Noumi-Sano family
# ----------------------------------------------------------------------


def _efact_factors(mono: LaurentPoly, m: int, K: int):
    """Elliptic shifted factorial (u; q, p)_m as triple-product N-series
    factor lists: returns (numerator_factors, denominator_factors)."""
    q = _gen("q")
    num, den = [], []
    if m >= 0:
        for l in range(m):
            num.append(mono.scale(q ** l))
    else:
        for l in range(1, -m + 1):
            den.append(mono.scale(q ** -l))
    return num, den


def _compositions(k, n):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


def apply_noumi_sano(variant: str, k: int, f, K: int | None = None) -> PSeries:
    """Apply one of the alternative commuting difference operators exactly.

    ``variant`` is 'Ht' for the original family

        sum_{|mu|=k} prod_{i<j} q^{mu_j} theta(q^{mu_i-mu_j} x_i/x_j)/theta(x_i/x_j)
                     prod_{i,j} (t x_i/x_j; q,p)_{mu_i} / (q x_i/x_j; q,p)_{mu_i}
                     prod_i T_{q,x_i}^{mu_i}

    and 'H' for its gauge-transformed companion

        sum_{|mu|=k} prod_{i!=j} (t x_i/x_j; q,p)_{mu_i-mu_j} / (x_i/x_j; q,p)_{mu_i-mu_j}
                     prod_{i,j} (q x_i/t x_j; q,p)_{mu_i} / (q x_i/x_j; q,p)_{mu_i}
                     prod_i T_{q,x_i}^{mu_i}.
    """
    if variant not in ("H", "Ht"):
        raise EllipqError(f"unknown variant {variant!r}")
    n = f.n if isinstance(f, LaurentPoly) else f.ring.n
    if K is None:
        K = f.order if isinstance(f, PSeries) else 0
    if K > MAX_ORDER:
        raise EnvelopeError(f"p-order envelope is K <= {MAX_ORDER}")
    if n > MAX_EXACT_VARS:
        raise EnvelopeError(f"exact mode supports n <= {MAX_EXACT_VARS}")
    if k < 0:
        raise EllipqError("order must be nonnegative")
    fs = _as_pseries(f, n, K)
    if k == 0:
        return fs
    q, t = _gen("q"), _gen("t")

    terms = []  # (numerator PSeries including shifted f, Counter of den keys)
    den_pool = {}

    def den_key(mono: LaurentPoly):
        (exps, coeff), = mono.terms.items()
        key = (exps, coeff)
        if key not in den_pool:
            den_pool[key] = mono
        return key

    for mu in _compositions(k, n):
        num_monos, den_keys = [], Counter()
        scalar = _one()
        if variant == "Ht":
            for i in range(n):
                for j in range(i + 1, n):
                    scalar = scalar * q ** mu[j]
                    num_monos.append(_pair_mono(n, i, j, q ** (mu[i] - mu[j])))
                    den_keys[den_key(_pair_mono(n, i, j, _one()))] += 1
            for i in range(n):
                for j in range(n):
                    up = _pair_mono(n, i, j, t)
                    dn = _pair_mono(n, i, j, q)
                    nn, dd = _efact_factors(up, mu[i], K)
                    num_monos += nn
                    den_keys.update(den_key(m) for m in dd)
                    nn, dd = _efact_factors(dn, mu[i], K)
                    den_keys.update(den_key(m) for m in nn)
                    num_monos += dd
        else:
            for i in range(n):
                for j in range(n):
                    if i != j:
                        up = _pair_mono(n, i, j, t)
                        dn = _pair_mono(n, i, j, _one())
                        nn, dd = _efact_factors(up, mu[i] - mu[j], K)
                        num_monos += nn
                        den_keys.update(den_key(m) for m in dd)
                        nn, dd = _efact_factors(dn, mu[i] - mu[j], K)
                        den_keys.update(den_key(m) for m in nn)
                        num_monos += dd
                    up = _pair_mono(n, i, j, q / t)
                    dn = _pair_mono(n, i, j, q)
                    nn, dd = _efact_factors(up, mu[i], K)
                    num_monos += nn
                    den_keys.update(den_key(m) for m in dd)
                    nn, dd = _efact_factors(dn, mu[i], K)
                    den_keys.update(den_key(m) for m in nn)
                    num_monos += dd
        qfacs = [q ** m for m in mu]
        shifted = PSeries([c.substitute_scale(qfacs) for c in fs.coeffs], fs.ring)
        num = shifted.scale(scalar)
        for mono in num_monos:
            num = num * theta_triple_series(mono, K)
        terms.append((num, den_keys))

    lcd = Counter()
    for _, dk in terms:
        for key, mult in dk.items():
            lcd[key] = max(lcd[key], mult)
    total = None
    for num, dk in terms:
        for key, mult in lcd.items():
            extra = mult - dk.get(key, 0)
            for _ in range(extra):
                num = num * theta_triple_series(den_pool[key], K)
        total = num if total is None else total + num
    # split constant (x-free) denominator factors from x-dependent ones
    result = total
    for key, mult in lcd.items():
        fac = theta_triple_series(den_pool[key], K)
        exps = key[0]
        for _ in range(mult):
            if any(exps):
                result = series_exact_div(result, fac)
            else:
                result = result * series_inv(fac)
    _assert_in_v(result)
    return result


# ----------------------------------------------------------------------
# numeric application
# ----------------------------------------------------------------------


def _theta_ratio_numeric(u, t, params: EllipticParams, prec):
    return theta(t * u, params.p, params.tol, prec) / theta(u, params.p, params.tol, prec)


def ruijsenaars_numeric(k: int, f_eval, x: tuple, t: HPComplex,
                        params: EllipticParams) -> HPComplex:
    """Numeric (D^(k) f)(x) for an evaluatable symmetric function f."""
    n = len(x)
    if not 0 <= k <= n:
        raise EllipqError(f"order must satisfy 0 <= k <= n, got k={k}")
    prec = max([params.prec] + [xi.precision_bits for xi in x])
    q = params.q
    total = HPComplex(0, precision_bits=prec)
    for subset in itertools.combinations(range(n), k):
        inside = set(subset)
        coeff = HPComplex(1, precision_bits=prec)
        for i in inside:
            for j in range(n):
                if j not in inside:
                    coeff = coeff * _theta_ratio_numeric(x[i] / x[j], t, params, prec)
        shifted = tuple(x[i] * q if i in inside else x[i] for i in range(n))
        total = total + coeff * f_eval(shifted)
    return total


def _efact_numeric(u, m, params: EllipticParams, prec):
    from .elliptic import elliptic_factorial

    return elliptic_factorial(u.with_precision(prec), m, params)


def noumi_sano_numeric(variant: str, k: int, f_eval, x: tuple, t: HPComplex,
                       params: EllipticParams) -> HPComplex:
    """Numeric (H^(k) f)(x) or (Ht^(k) f)(x)."""
    if variant not in ("H", "Ht"):
        raise EllipqError(f"unknown variant {variant!r}")
    n = len(x)
    prec = max([params.prec] + [xi.precision_bits for xi in x])
    p, q = params.p, params.q
    total = HPComplex(0, precision_bits=prec)
    for mu in _compositions(k, n):
        coeff = HPComplex(1, precision_bits=prec)
        if variant == "Ht":
            for i in range(n):
                for j in range(i + 1, n):
                    u = x[i] / x[j]
                    coeff = coeff * (q ** mu[j]) * theta(u * q ** (mu[i] - mu[j]), p, params.tol, prec) \
                        / theta(u, p, params.tol, prec)
            for i in range(n):
                for j in range(n):
                    u = x[i] / x[j]
                    coeff = coeff * _efact_numeric(t * u, mu[i], params, prec)
                    coeff = coeff / _efact_numeric(q * u, mu[i], params, prec)
        else:
            for i in range(n):
                for j in range(n):
                    u = x[i] / x[j]
                    if i != j:
                        coeff = coeff * _efact_numeric(t * u, mu[i] - mu[j], params, prec)
                        coeff = coeff / _efact_numeric(u, mu[i] - mu[j], params, prec)
                    coeff = coeff * _efact_numeric(q * u / t, mu[i], params, prec)
                    coeff = coeff / _efact_numeric(q * u, mu[i], params, prec)
        shifted = tuple(x[i] * q ** mu[i] for i in range(n))
        total = total + coeff * f_eval(shifted)
    return total


@dataclass(frozen=True)
class GaugeWeight:
    """W(x) = prod_{i != j} Gamma_{p,q}(t x_i / x_j); symmetric in x."""

    n: int
    t: HPComplex
    params: EllipticParams

    def __call__(self, x: tuple) -> HPComplex:
        prec = max([self.params.prec] + [xi.precision_bits for xi in x])
        acc = HPComplex(1, precision_bits=prec)
        for i in range(self.n):
            for j in range(self.n):
                if i != j:
                    acc = acc * gamma_pq(self.t * x[i] / x[j], self.params)
        return acc


class GaugeCheckResult(NamedTuple):
    lhs: HPComplex
    rhs: HPComplex
    abs_residual: float
    rel_residual: float


def _laurent_eval(f: LaurentPoly, prec):
    def ev(x):
        return f.evaluate(x, coeff_eval=lambda c: _coeff_numeric(c, prec))

    return ev


def _coeff_numeric(c, prec):
    if isinstance(c, RationalFn):
        raise EllipqError("symbolic coefficients need explicit parameter values")
    return HPComplex(c, precision_bits=prec)


def gauge_conjugate_ruijsenaars_check(k: int, n: int, sample: dict,
                                      f: LaurentPoly | None = None) -> GaugeCheckResult:
    """Two-path residual for the gauge relation

        D^(k) = W^{-1} (D^(k)|_{t -> pq/t}) W

    at one numeric sample {x, p, q, t}.  The left path applies the operator
    directly; the right path conjugates by the gauge weight.
    """
    x, p, q, t = sample["x"], sample["p"], sample["q"], sample["t"]
    tol = sample.get("tol", 2.0 ** -(p.precision_bits + 8))
    params = EllipticParams(p, q, tol)
    prec = params.prec
    if f is None:
        f = monomial_sym_poly(SignedPartition((1,) + (0,) * (n - 1)), n, one=1)

    def f_eval(pt):
        return f.evaluate(pt, coeff_eval=lambda c: HPComplex(c, precision_bits=prec))

    lhs = ruijsenaars_numeric(k, f_eval, x, t, params)
    w = GaugeWeight(n, t, params)
    t_dual = p * q / t

    def wf(pt):
        return w(pt) * f_eval(pt)

    rhs = ruijsenaars_numeric(k, wf, x, t_dual, params) / w(x)
    diff = modulus(lhs - rhs)
    scale = max(modulus(lhs), modulus(rhs), 1e-30)
    return GaugeCheckResult(lhs, rhs, diff, diff / scale)
