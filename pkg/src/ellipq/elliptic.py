"""High-precision evaluation of theta functions and the elliptic gamma function.

The double-product gamma function is evaluated by shifting its argument into
an annulus centred on sqrt(|pq|) with the quasi-periodicity identities, then
summing the logarithmic series

    log G(x) = sum_{m>=1} (x^m - (pq/x)^m) / (m (1-p^m)(1-q^m)),

which converges geometrically there.  All truncations carry certified tail
bounds derived from the same logarithm estimates as the q-Pochhammer case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath.libmp import (
    fone,
    fzero,
    mpc_add,
    mpc_div,
    mpc_exp,
    mpc_mul,
    mpc_mul_int,
    mpc_sub,
    round_nearest,
)

from .errors import ParameterDomainError, PoleProximityError
from .hpcomplex import HPComplex, log_modulus, modulus

_RND = round_nearest
_ONE = (fone, fzero)


@dataclass(frozen=True)
class EllipticParams:
    """Nome pair with a truncation target. Requires |p| < 1 and |q| < 1."""

    p: HPComplex
    q: HPComplex
    tol: float = 1e-60

    def __post_init__(self):
        if modulus(self.p) >= 1:
            raise ParameterDomainError(f"|p| must be < 1, got {modulus(self.p)}")
        if modulus(self.q) >= 1:
            raise ParameterDomainError(f"|q| must be < 1, got {modulus(self.q)}")
        if not self.tol > 0:
            raise ParameterDomainError("tol must be positive")

    @property
    def prec(self):
        return max(self.p.precision_bits, self.q.precision_bits)


def default_tol(prec):
    """Truncation target a little below the precision floor."""
    return 2.0 ** (-(prec + 8))


def qpochhammer_inf(x: HPComplex, q: HPComplex, tol: float, prec: int | None = None) -> HPComplex:
    """(x; q)_infinity with relative tail error <= tol.

    The tail after J factors is bounded through
    |log prod_{j>J} (1 - x q^j)| <= 2 |x| |q|^{J+1} / (1 - |q|),
    valid once |x| |q|^{J+1} <= 1/2.
    """
    mq = modulus(q)
    if mq >= 1:
        raise ParameterDomainError(f"|q| must be < 1, got {mq}")
    prec = prec or max(x.precision_bits, q.precision_bits)
    one = HPComplex(1, precision_bits=prec)
    if x.is_zero:
        return one
    if q.is_zero:
        return one - x
    lmx = log_modulus(x)
    lq = math.log(mq)
    # smallest J with both conditions
    j_half = (math.log(0.5) - lmx) / lq - 1
    j_tol = (math.log(tol * (1 - mq) / 2) - lmx) / lq - 1
    J = max(0, int(math.ceil(max(j_half, j_tol))) + 1)
    acc = _ONE
    xq = (x._re, x._im)
    qr = (q._re, q._im)
    for _ in range(J + 1):
        acc = mpc_mul(acc, mpc_sub(_ONE, xq, prec, _RND), prec, _RND)
        xq = mpc_mul(xq, qr, prec, _RND)
    return HPComplex._raw(acc[0], acc[1], prec)


@lru_cache(maxsize=256)
def euler_inf(q: HPComplex, tol: float, prec: int) -> HPComplex:
    """(q; q)_infinity, cached."""
    return qpochhammer_inf(q, q, tol, prec)


def theta(x: HPComplex, p: HPComplex, tol: float, prec: int | None = None) -> HPComplex:
    """Multiplicative theta: theta_p(x) = (x; p)_inf (p/x; p)_inf."""
    if x.is_zero:
        raise ParameterDomainError("theta is singular at x = 0")
    if modulus(p) >= 1:
        raise ParameterDomainError(f"|p| must be < 1, got {modulus(p)}")
    prec = prec or max(x.precision_bits, p.precision_bits)
    if p.is_zero:
        return HPComplex(1, precision_bits=prec) - x
    return qpochhammer_inf(x, p, tol, prec) * qpochhammer_inf(p / x, p, tol, prec)


def _nearest_pole_index(x, p, q):
    """Closest (j, k) >= 0 with p^{-j} q^{-k} near x, by log-lattice search."""
    lx, lp, lq = log_modulus(x), log_modulus(p), log_modulus(q)
    best = None
    j_max = max(0, int(lx / -lp) + 2) if lx > 0 else 1
    for j in range(0, j_max + 1):
        rem = lx + j * lp  # want rem + k*lq ~ 0 with k >= 0
        k = max(0, round(-rem / lq)) if lq else 0
        for kk in (k - 1, k, k + 1):
            if kk < 0:
                continue
            cand = abs(rem + kk * lq)
            if best is None or cand < best[0]:
                best = (cand, j, kk)
    return best[1], best[2]


def gamma_pq(x: HPComplex, params: EllipticParams) -> HPComplex:
    """Ruijsenaars's elliptic gamma function at x.

    Raises PoleProximityError when a retained denominator factor
    1 - p^j q^k x comes within 10*tol of zero.
    """
    p, q, tol = params.p, params.q, params.tol
    if x.is_zero:
        raise ParameterDomainError("gamma_pq is singular at x = 0")
    prec = max(x.precision_bits, params.prec)
    wp = prec + 24
    if p.is_zero:
        one = HPComplex(1, precision_bits=prec)
        return one / qpochhammer_inf(x, q, tol, wp)
    if q.is_zero:
        one = HPComplex(1, precision_bits=prec)
        return one / qpochhammer_inf(x, p, tol, wp)

    # pole proximity: x near p^{-j} q^{-k}  <=>  |1 - p^j q^k x| small
    j, k = _nearest_pole_index(x, p, q)
    probe = (p ** j) * (q ** k) * x
    gap = modulus(HPComplex(1, precision_bits=wp) - probe)
    if gap < 10 * tol:
        raise PoleProximityError(
            f"argument within {gap:.3e} of the gamma pole p^-{j} q^-{k}",
            lattice_index=(j, k))

    value = _gamma_reduced(x.with_precision(wp), p.with_precision(wp), q.with_precision(wp), tol, wp)
    return value.with_precision(prec)


def _gamma_reduced(x, p, q, tol, wp):
    """Shift-reduce x into the convergence annulus and sum the log series.

    The target window is one shift-step wide and centred on sqrt(|pq|) in
    log-modulus, which keeps the reduced argument strictly inside the
    annulus |pq| < |x| < 1 where gamma has neither poles nor zeros.  Theta
    factors along the chain can only approach zero when x itself is near
    the pole or zero lattice of gamma, where a small factor is the correct
    (and accurately computed) behaviour.
    """
    mp_, mq_ = modulus(p), modulus(q)
    # shift in the parameter with the larger modulus: granularity is finer
    if mp_ <= mq_:
        base, nome = q, p
        lbase = math.log(mq_)
    else:
        base, nome = p, q
        lbase = math.log(mp_)
    center = 0.5 * (math.log(mp_) + math.log(mq_))
    half = -lbase / 2
    num = HPComplex(1, precision_bits=wp)
    den = HPComplex(1, precision_bits=wp)
    lx = log_modulus(x)
    steps = int(round((lx - center) / -lbase))
    # steps > 0: x too large, divide by base that many times
    for _ in range(max(0, steps)):
        den = den * theta(x, nome, tol, wp)
        x = x * base
    for _ in range(max(0, -steps)):
        x = x / base
        num = num * theta(x, nome, tol, wp)
    lx = log_modulus(x)
    if not (center - half - 1e-9 <= lx <= center + half + 1e-9):
        # rounding of the step count can leave us one shift off; nudge once
        if lx > center + half:
            den = den * theta(x, nome, tol, wp)
            x = x * base
        else:
            x = x / base
            num = num * theta(x, nome, tol, wp)
    if den.is_zero:
        raise PoleProximityError("gamma argument lies exactly on the pole lattice")
    return num * _gamma_core(x, p, q, tol, wp) / den


def _gamma_core(x, p, q, tol, wp):
    """Logarithmic series on the annulus; certified geometric tail."""
    pq = p * q
    y = pq / x
    rho1, rho2 = modulus(x), modulus(y)
    rho = max(rho1, rho2)
    if rho >= 0.999999:
        raise ParameterDomainError("reduced gamma argument is not inside the annulus")
    mp_, mq_ = modulus(p), modulus(q)
    denom_floor = (1 - mp_) * (1 - mq_) * (1 - rho)
    # M terms: 2 rho^{M+1} / ((M+1) * denom_floor) <= tol / 2
    M = 1
    while 2 * rho ** (M + 1) / ((M + 1) * denom_floor) > tol / 2:
        M += 1
    xr, yr = (x._re, x._im), (y._re, y._im)
    pr, qr = (p._re, p._im), (q._re, q._im)
    xm = ym = pm = qm = _ONE
    S = ((fzero, fzero))
    for m in range(1, M + 1):
        xm = mpc_mul(xm, xr, wp, _RND)
        ym = mpc_mul(ym, yr, wp, _RND)
        pm = mpc_mul(pm, pr, wp, _RND)
        qm = mpc_mul(qm, qr, wp, _RND)
        den = mpc_mul(mpc_sub(_ONE, pm, wp, _RND), mpc_sub(_ONE, qm, wp, _RND), wp, _RND)
        den = mpc_mul_int(den, m, wp, _RND)
        S = mpc_add(S, mpc_div(mpc_sub(xm, ym, wp, _RND), den, wp, _RND), wp, _RND)
    er, ei = mpc_exp(S, wp, _RND)
    return HPComplex._raw(er, ei, wp)


def elliptic_factorial(x: HPComplex, n: int, params: EllipticParams) -> HPComplex:
    """Elliptic shifted factorial (x; q, p)_n as a finite theta product.

    (x;q,p)_n = theta(x) theta(xq) ... theta(x q^{n-1})   for n >= 0,
    and 1 / (theta(x/q) ... theta(x q^n)) for n < 0; computed from theta
    directly, never as a gamma quotient.
    """
    p, q, tol = params.p, params.q, params.tol
    prec = max(x.precision_bits, params.prec)
    one = HPComplex(1, precision_bits=prec)
    if n == 0:
        return one
    if n > 0:
        acc = one
        u = x
        for _ in range(n):
            th = theta(u, p, tol, prec)
            if th.is_zero:
                raise ParameterDomainError("vanishing theta factor in elliptic factorial")
            acc = acc * th
            u = u * q
        return acc
    acc = one
    u = x
    for _ in range(-n):
        u = u / q
        th = theta(u, p, tol, prec)
        if th.is_zero:
            raise ParameterDomainError("vanishing theta factor in elliptic factorial")
        acc = acc * th
    return one / acc


def gamma_residue(a: int, b: int, params: EllipticParams) -> HPComplex:
    """Residue of the elliptic gamma function at its pole p^{-a} q^{-b}.

    Computed from Res_{z=1} = -1/((p;p)(q;q)) and the quasi-periodicity
    recursions
        G_{a,b} = G_{a,b-1} / theta_p(p^{-a} q^{-b}),
        G_{a,0} = G_{a-1,0} / theta_q(p^{-a}),
    where G_{a,b} = lim (1 - p^a q^b z) Gamma(z).
    """
    p, q, tol = params.p, params.q, params.tol
    prec = params.prec + 24
    G = HPComplex(1, precision_bits=prec) / (
        euler_inf(p.with_precision(prec), tol, prec) * euler_inf(q.with_precision(prec), tol, prec))
    for r in range(1, a + 1):
        G = G / theta(p ** -r, q, tol, prec)
    for s in range(1, b + 1):
        G = G / theta((p ** -a) * (q ** -s), p, tol, prec)
    z0 = (p ** -a) * (q ** -b)
    return -z0 * G
