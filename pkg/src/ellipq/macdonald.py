"""Macdonald polynomials over Q(q,t) and their orthogonality/Cauchy constants.

P_lambda is constructed as the unique monic-in-dominance eigenfunction of
the first q-difference operator (the p = 0 layer of the order-1 elliptic
difference operator); all coefficients come out as exact rational functions.
The Cauchy constants b_lambda are read off the expansion of the Cauchy
kernel, and the norm constants N_lambda from the constant-term pairing with
the weight truncated as a power series (exact to a stated order).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DegeneracyError, EllipqError, EnvelopeError
from .laurent import (
    LaurentPoly,
    exact_div,
    from_monomial_dict,
    lex_sorted_partitions,
    monomial_sym_poly,
)
from .partitions import (SignedPartition, dominance_lower_set,
                         partitions_with_weight)
from .ratfun import RationalFn

MAX_VARS = 4

_QT = ("q", "t")


def _one():
    return RationalFn(1, _QT)


def _gen(name):
    return RationalFn(name, _QT)


def monomial_sym(mu: SignedPartition, n: int) -> LaurentPoly:
    """m_mu over Q(q,t): sum of all distinct permutations of x^mu."""
    return monomial_sym_poly(mu, n, one=_one())


def eigenvalue_p0(lam: SignedPartition, n: int) -> RationalFn:
    """Eigenvalue sum_i q^{lam_i} t^{n-i} of the first Macdonald operator."""
    q, t = _gen("q"), _gen("t")
    acc = RationalFn(0, _QT)
    for i, part in enumerate(lam.parts):
        acc = acc + q ** part * t ** (n - 1 - i)
    return acc


def _vandermonde(n) -> LaurentPoly:
    """prod_{i<j} (x_i - x_j) over Q(q,t)."""
    out = LaurentPoly.constant(n, _one())
    for i in range(n):
        for j in range(i + 1, n):
            ei = [0] * n
            ei[i] = 1
            ej = [0] * n
            ej[j] = 1
            out = out * LaurentPoly(n, {tuple(ei): _one(), tuple(ej): -_one()})
    return out


def _qshift_poly(f: LaurentPoly, i: int) -> LaurentPoly:
    """x_i -> q x_i."""
    q = _gen("q")
    factors = [_one()] * f.n
    factors[i] = q
    return f.substitute_scale(factors)


def macdonald_operator_apply(f: LaurentPoly, n: int) -> LaurentPoly:
    """Apply sum_i prod_{j!=i} (t x_i - x_j)/(x_i - x_j) T_{q,x_i} exactly.

    Terms are combined over the Vandermonde denominator and divided out;
    the quotient is asserted to be a Laurent polynomial.
    """
    t = _gen("t")
    vdm = _vandermonde(n)
    total = LaurentPoly(n)
    for i in range(n):
        # numerator factors (t x_i - x_j), and the cofactor of the LCD
        num = _qshift_poly(f, i)
        for j in range(n):
            if j == i:
                continue
            ei = [0] * n
            ei[i] = 1
            ej = [0] * n
            ej[j] = 1
            num = num * LaurentPoly(n, {tuple(ei): t, tuple(ej): -_one()})
        cof = LaurentPoly.constant(n, _one())
        for a in range(n):
            for b in range(a + 1, n):
                if a == i or b == i:
                    continue
                ea = [0] * n
                ea[a] = 1
                eb = [0] * n
                eb[b] = 1
                cof = cof * LaurentPoly(n, {tuple(ea): _one(), tuple(eb): -_one()})
        sign = _one() if i % 2 == 0 else -_one()
        # denominator of term i is prod_{j!=i}(x_i - x_j); relative to the
        # Vandermonde this is (-1)^i times the cofactor above
        total = total + (num * cof).scale(sign)
    return exact_div(total, vdm)


@lru_cache(maxsize=None)
def _macdonald_cached(parts: tuple, n: int):
    lam = SignedPartition(parts)
    basis = dominance_lower_set(lam)
    order = lex_sorted_partitions([mu.parts for mu in basis], reverse=True)
    # operator matrix on the m-basis, column by column
    columns = {}
    for parts_mu in order:
        mu = SignedPartition(parts_mu)
        applied = macdonald_operator_apply(monomial_sym(mu, n), n)
        columns[parts_mu] = applied.monomial_expansion()
    e_lam = eigenvalue_p0(lam, n)
    coeffs = {parts: RationalFn(0, _QT) for parts in order}
    coeffs[lam.parts] = _one()
    for parts_mu in order:
        if parts_mu == lam.parts:
            continue
        mu = SignedPartition(parts_mu)
        acc = RationalFn(0, _QT)
        for parts_nu in order:
            if parts_nu <= parts_mu:
                continue
            c = columns[parts_nu].get(parts_mu)
            if c is not None:
                acc = acc + c * coeffs[parts_nu]
        gap = e_lam - eigenvalue_p0(mu, n)
        if gap.is_zero:
            raise DegeneracyError(f"eigenvalue collision between {lam} and {mu}")
        coeffs[parts_mu] = acc / gap
    return {parts: c for parts, c in coeffs.items() if not c.is_zero}


def macdonald_coeffs(lam: SignedPartition, n: int) -> dict:
    """m-expansion of P_lambda as {parts: RationalFn}, unitriangular."""
    if lam.n != n:
        raise EllipqError(f"partition has {lam.n} parts, expected {n}")
    if n > MAX_VARS:
        raise EnvelopeError(f"supported envelope is n <= {MAX_VARS}")
    return dict(_macdonald_cached(lam.parts, n))


def macdonald_poly(lam: SignedPartition, n: int) -> LaurentPoly:
    """Macdonald polynomial P_lambda over Q(q,t), extended to signed
    partitions through P_{lambda+(m)^n} = (x_1...x_n)^m P_lambda."""
    return from_monomial_dict(n, macdonald_coeffs(lam, n), one=_one())


def schur_poly(lam: SignedPartition, n: int) -> LaurentPoly:
    """Schur polynomial via the alternant determinant ratio (oracle path)."""
    delta = tuple(n - 1 - i for i in range(n))
    num = _alternant(tuple(p + d for p, d in zip(lam.parts, delta)), n)
    den = _alternant(delta, n)
    return exact_div(num, den)


def _alternant(exps: tuple, n: int) -> LaurentPoly:
    import itertools

    out = LaurentPoly(n)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        mon = tuple(exps[perm[i]] for i in range(n))
        c = _one() if sign > 0 else -_one()
        prev = out.terms.get(mon)
        out.terms[mon] = c if prev is None else prev + c
        if out.terms[mon].is_zero:
            del out.terms[mon]
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


# ----------------------------------------------------------------------
# Cauchy and orthogonality constants
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cauchy_factor_coeff(k: int) -> RationalFn:
    """Coefficient of u^k in (t u; q)_inf / (u; q)_inf = sum_k (t;q)_k/(q;q)_k u^k."""
    q, t = _gen("q"), _gen("t")
    num = _one()
    den = _one()
    for j in range(k):
        num = num * (_one() - t * q ** j)
        den = den * (_one() - q ** (j + 1))
    return num / den


@lru_cache(maxsize=None)
def _weight_factor_coeff(k: int) -> RationalFn:
    """Coefficient of u^k in (u; q)_inf / (t u; q)_inf."""
    q, t = _gen("q"), _gen("t")
    num = _one()
    den = _one()
    for j in range(k):
        num = num * (t - q ** j)
        den = den * (_one() - q ** (j + 1))
    return num / den


@lru_cache(maxsize=None)
def _weight_factor_scaled(k: int, trunc: int) -> RationalFn:
    """The u^k weight coefficient times (q;q)_trunc: a polynomial, so the
    constant-term pairing avoids per-term gcd reduction."""
    F = _qt_ring()
    R = F.ring
    q, t = R.gens
    out = R.one
    for j in range(k):
        out = out * (t - q ** j)
    for j in range(k + 1, trunc + 1):
        out = out * (R.one - q ** j)
    return RationalFn._wrap(F.new(out, R.one), _QT)


def _qt_ring():
    from .ratfun import _field

    F, _ = _field(("q", "t"))
    return F


@lru_cache(maxsize=None)
def _beta_poly_scaled(k: int, d: int):
    """(t;q)_k * (q;q)_d / (q;q)_k as a polynomial: the Cauchy factor
    coefficient cleared against the level-d common denominator."""
    F = _qt_ring()
    R = F.ring
    q, t = R.gens
    out = R.one
    for j in range(k):
        out = out * (R.one - t * q ** j)
    for j in range(k + 1, d + 1):
        out = out * (R.one - q ** j)
    return out


@lru_cache(maxsize=None)
def _cauchy_level(d: int, n: int) -> dict:
    """All b_mu with |mu| = d from the degree-d slice of the Cauchy kernel.

    The slice coefficient of x^mu y^mu equals sum_{nu >= mu} b_nu
    (P_nu[mu])^2, which is triangular in dominance; only the diagonal
    monomial coefficients of the slice are needed.  They are accumulated
    as polynomials over the common denominator (q;q)_d^{n^2}.
    """
    F = _qt_ring()
    R = F.ring
    mus = [mu.parts for mu in partitions_with_weight(n, d, d, 0)]
    wanted = set(mus)
    diag = {}

    def put(key, coeff):
        prev = diag.get(key)
        diag[key] = coeff if prev is None else prev + coeff

    if n == 2:
        # diagonal x^mu y^mu terms need equal row and column sums of the
        # 2x2 composition, which forces the off-diagonal entries equal
        for b_ in range(d // 2 + 1):
            off = _beta_poly_scaled(b_, d)
            off2 = off * off
            for a_ in range(d - 2 * b_ + 1):
                c_ = d - 2 * b_ - a_
                if a_ < c_:
                    continue
                put((a_ + b_, b_ + c_),
                    _beta_poly_scaled(a_, d) * off2 * _beta_poly_scaled(c_, d))
    else:
        pairs = [(i, j) for i in range(n) for j in range(n)]

        def rec(idx, remaining, xexp, yexp, coeff):
            if idx == len(pairs):
                if remaining == 0 and tuple(xexp) == tuple(yexp):
                    key = tuple(xexp)
                    if key in wanted:
                        put(key, coeff)
                return
            i, j = pairs[idx]
            for k in range(remaining + 1):
                if k:
                    xexp[i] += k
                    yexp[j] += k
                rec(idx + 1, remaining - k, xexp, yexp,
                    coeff * _beta_poly_scaled(k, d))
                if k:
                    xexp[i] -= k
                    yexp[j] -= k

        rec(0, d, [0] * n, [0] * n, R.one)
    den = _beta_poly_scaled(0, d) ** (n * n)  # (q;q)_d^{n^2}
    out = {}
    for parts_mu in lex_sorted_partitions(mus, reverse=True):
        poly = diag.get(parts_mu)
        total = RationalFn._wrap(F.new(poly, den), _QT) if poly is not None \
            else RationalFn(0, _QT)
        for parts_nu, b_nu in out.items():
            c = macdonald_coeffs(SignedPartition(parts_nu), n).get(parts_mu)
            if c is not None:
                total = total - b_nu * c * c
        out[parts_mu] = total
    return out


def _cauchy_b_cached(parts: tuple, n: int) -> RationalFn:
    return _cauchy_level(sum(parts), n).get(tuple(parts), RationalFn(0, _QT))


def cauchy_b(lam: SignedPartition, n: int) -> RationalFn:
    """Coefficient b_lambda of P_lambda(x) P_lambda(y) in the Cauchy kernel
    expansion prod_{i,j} (t x_i y_j; q)_inf / (x_i y_j; q)_inf."""
    if any(p < 0 for p in lam.parts):
        raise EllipqError("cauchy_b expects a partition with nonnegative parts")
    return _cauchy_b_cached(lam.parts, n)


@lru_cache(maxsize=8)
def _weight_scaled(n: int, trunc: int):
    """(weight * (q;q)_trunc^{n(n-1)}, that scale factor) with polynomial
    coefficients throughout; dividing once at the end is much cheaper than
    reducing every product term."""
    if n > 2:
        raise EnvelopeError("truncated symbolic weight supports n <= 2")
    if n == 1:
        return LaurentPoly.constant(1, _one()), _one()
    out = None
    for (i, j) in ((0, 1), (1, 0)):
        fac = LaurentPoly(2)
        for k in range(trunc + 1):
            mon = [0, 0]
            mon[i] = k
            mon[j] = -k
            fac.terms[tuple(mon)] = _weight_factor_scaled(k, trunc)
        out = fac if out is None else out * fac
    scale = _one()
    q = _gen("q")
    for j in range(1, trunc + 1):
        scale = scale * (_one() - q ** j)
    return out, scale ** (n * (n - 1))


def weight_truncated(n: int, trunc: int) -> LaurentPoly:
    """The orthogonality weight prod_{i != j} (x_i/x_j; q)_inf/(t x_i/x_j; q)_inf
    with every pair factor truncated at u-order ``trunc``.

    Constant-term pairings against Laurent polynomials of bounded exponent
    spread are then exact to total (q,t)-order about 2*trunc - spread.
    """
    scaled, scale = _weight_scaled(n, trunc)
    return scaled.map_coeffs(lambda c: c / scale)


def ct_pairing(f: LaurentPoly, g: LaurentPoly, weight: LaurentPoly) -> RationalFn:
    """Constant term of f(x) g(x^{-1}) * weight, by direct convolution."""
    total = RationalFn(0, _QT)
    for mf, cf in f.terms.items():
        for mg, cg in g.terms.items():
            mw = tuple(b - a for a, b in zip(mf, mg))
            cw = weight.terms.get(mw)
            if cw is not None:
                total = total + cf * cg * cw
    return total


def macdonald_constants(lam: SignedPartition, n: int, degree_cap: int,
                        trunc: int = 14):
    """(N_lambda, b_lambda) per the orthogonality and Cauchy expansions.

    b_lambda is exact; N_lambda is computed with the weight truncated at
    u-order ``trunc`` and is exact as a (q,t)-series to total order about
    2*trunc - spread(lam).
    """
    if any(p < 0 for p in lam.parts):
        raise EllipqError("macdonald_constants expects lambda with nonnegative parts")
    if lam.parts and lam.parts[0] > degree_cap:
        raise EllipqError(f"degree cap {degree_cap} too small for {lam}")
    b = cauchy_b(lam, n)
    if n == 1:
        return _one(), b
    w, scale = _weight_scaled(n, trunc)
    p = macdonald_poly(lam, n)
    return ct_pairing(p, p, w) / scale, b
