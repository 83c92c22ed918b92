"""Formal p-expansions of the elliptic building blocks.

Two symbolic series drive all operator work:

* the triple-product sum N(u) = sum_k (-1)^k p^{k(k-1)/2} u^k, which equals
  (p;p)_inf * theta_p(u); ratios of thetas are ratios of N's, so the Euler
  factor never appears in operator coefficients;
* the expansion Gamma_{p,q}(x) (x;q)_inf = sum_k phi_k(x) p^k with phi_k a
  Laurent polynomial in x over Q(q).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EllipqError
from .laurent import LaurentPoly
from .ratfun import RationalFn
from .series import LaurentRing, PSeries, RationalRing, series_exp

MAX_ORDER = 8


def theta_triple_series(mono: LaurentPoly, K: int) -> PSeries:
    """(p;p)_inf * theta_p(u) as a p-series, with u a Laurent monomial.

    Only powers u^k with k(k-1)/2 <= K survive truncation at order K.
    """
    if len(mono.terms) != 1:
        raise EllipqError("theta argument must be a single Laurent monomial")
    ring = LaurentRing(mono.n)
    coeffs = [ring.zero() for _ in range(K + 1)]
    k = 0
    while True:
        grew = False
        for kk in (k, -k) if k else (0,):
            e = kk * (kk - 1) // 2
            if e <= K:
                grew = True
                sign = -1 if kk % 2 else 1
                term = mono ** kk if kk else LaurentPoly.constant(mono.n, _one_of(mono))
                coeffs[e] = coeffs[e] + term.scale(sign) if sign < 0 else coeffs[e] + term
        if not grew:
            break
        k += 1
    return PSeries(coeffs, ring)


def _one_of(mono: LaurentPoly):
    c = next(iter(mono.terms.values()))
    from .laurent import _one_like

    return _one_like(c)


def gamma_p_expansion(K: int, var_params=("q",)) -> PSeries:
    """The series S with Gamma_{p,q}(x) (x;q)_inf = S + O(p^{K+1}).

    Coefficients are Laurent polynomials in one variable x over Q(q); the
    constant coefficient is 1.  Derived by exponentiating

        log S = sum_{j>=1} sum_{m>=1} p^{jm} (x^m - (q/x)^m) / (m (1 - q^m)).
    """
    if K > MAX_ORDER:
        raise EllipqError(f"gamma_p_expansion supports K <= {MAX_ORDER}")
    inner = RationalRing(var_params)
    ring = LaurentRing(1, inner)
    log_s = PSeries.zero(ring, K)
    q = RationalFn("q", var_params)
    for j in range(1, K + 1):
        for m in range(1, K // j + 1):
            if j * m > K:
                continue
            coeff = RationalFn(Fraction(1, m), var_params) / (RationalFn(1, var_params) - q ** m)
            poly = LaurentPoly(1, {(m,): coeff, (-m,): -coeff * q ** m})
            log_s.coeffs[j * m] = log_s.coeffs[j * m] + poly
    return series_exp(log_s)
