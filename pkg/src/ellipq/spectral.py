"""Elliptic Macdonald polynomials and the kernel-function expansion.

The joint eigenfunctions are constructed perturbatively in the nome p: at
each order a dominance-triangular linear system over Q(q,t) determines the
new monomial coefficients and the eigenvalue correction, with the diagonal
coefficient pinned to zero as normalization.  The same data drives the
Schauder-basis conversion and the diagonalization of the kernel expansion
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegeneracyError, EllipqError, EnvelopeError
from .laurent import LaurentPoly, from_monomial_dict, lex_sorted_partitions
from .macdonald import cauchy_b, eigenvalue_p0, macdonald_coeffs, macdonald_constants
from .operators import apply_ruijsenaars
from .partitions import SignedPartition, dominance_leq, partitions_with_weight
from .ratfun import RationalFn
from .series import LaurentRing, PSeries, RationalRing

MAX_VARS = 3
MAX_ORDER = 3

_QT = ("q", "t")


def _one():
    return RationalFn(1, _QT)


def _zero():
    return RationalFn(0, _QT)


@dataclass(frozen=True)
class EllipticMacdonald:
    """Perturbative eigenfunction data: layers[k] maps parts -> coefficient
    of m_mu at order p^k; eigencorrections for the order-1 and order-2
    operators come along for free."""

    lam: SignedPartition
    n: int
    order: int
    layers: tuple  # tuple of dict {parts: RationalFn}
    eps1: tuple  # eigenvalue series for the order-1 operator
    eps2: tuple  # eigenvalue series for the order-2 operator (n >= 2)

    def coefficient(self, k: int, mu) -> RationalFn:
        mu = tuple(mu.parts if isinstance(mu, SignedPartition) else mu)
        return self.layers[k].get(mu, _zero())

    def layer_poly(self, k: int) -> LaurentPoly:
        return from_monomial_dict(self.n, self.layers[k], one=_one())

    def as_pseries(self) -> PSeries:
        return PSeries([self.layer_poly(k) for k in range(self.order + 1)],
                       LaurentRing(self.n))

    def evaluate(self, x, p, coeff_eval) -> object:
        """Numeric value of the truncated series at a point."""
        total = None
        ppow = None
        for k in range(self.order + 1):
            v = self.layer_poly(k).evaluate(x, coeff_eval=coeff_eval)
            if ppow is not None:
                v = v * ppow
            ppow = p if ppow is None else ppow * p
            total = v if total is None else total + v
        return total


def _support(lam: SignedPartition, k: int):
    """mu <= lam + k*phi in dominance, phi = (1,0,...,0,-1)."""
    n = lam.n
    if k == 0:
        top = lam
    else:
        parts = list(lam.parts)
        parts[0] += k
        parts[-1] -= k
        top = SignedPartition(tuple(parts))
    return [mu for mu in partitions_with_weight(n, lam.weight, top.parts[0], top.parts[-1])
            if dominance_leq(mu, top)]


def elliptic_macdonald(lam: SignedPartition, n: int, K: int) -> EllipticMacdonald:
    """Solve the order-1 eigen-equation order by order in p.

    Normalization: the m_lam coefficient is 1 at p^0 and 0 at every higher
    order; the eigenvalue corrections are outputs.  The result is verified
    against the order-2 operator's eigen-equation as well.
    """
    if lam.n != n:
        raise EllipqError(f"partition has {lam.n} parts, expected {n}")
    if n > MAX_VARS or K > MAX_ORDER:
        raise EnvelopeError(f"envelope is n <= {MAX_VARS}, K <= {MAX_ORDER}")
    if K >= 1 and lam.spread + 2 * K > 10:
        raise EnvelopeError("exponent spread too large for the requested order")
    if n == 1:
        layers = [{lam.parts: _one()}] + [{} for _ in range(K)]
        q = RationalFn("q", _QT)
        eps1 = [q ** lam.weight] + [_zero()] * K
        return EllipticMacdonald(lam, 1, K, tuple(layers), tuple(eps1), tuple(eps1))
    return _elliptic_cached(lam.parts, n, K)


_CACHE = {}


def _elliptic_cached(parts, n, K):
    for kk in range(K, MAX_ORDER + 1):
        hit = _CACHE.get((parts, n, kk))
        if hit is not None:
            return _truncate_em(hit, K)
    lam = SignedPartition(parts)
    e_lam = eigenvalue_p0(lam, n)
    supports = [_support(lam, k) for k in range(K + 1)]
    # operator layers on each monomial appearing anywhere
    needed = sorted({mu.parts for sup in supports for mu in sup})
    from .macdonald import monomial_sym

    op_layers = {}
    for parts_mu in needed:
        applied = apply_ruijsenaars(1, monomial_sym(SignedPartition(parts_mu), n), K)
        op_layers[parts_mu] = [c.monomial_expansion() if c else {} for c in applied.coeffs]

    layers = [dict() for _ in range(K + 1)]
    layers[0] = dict(macdonald_coeffs(lam, n))
    eps1 = [e_lam]
    for k in range(1, K + 1):
        sup = [mu.parts for mu in supports[k]]
        sup_set = set(sup)
        # right-hand side R_nu over the full reachable support
        R = {}
        for l in range(1, k + 1):
            for parts_mu, c_mu in layers[k - l].items():
                if c_mu.is_zero:
                    continue
                for parts_nu, a in op_layers[parts_mu][l].items():
                    prev = R.get(parts_nu, _zero())
                    R[parts_nu] = prev - a * c_mu
            if l < k:
                for parts_nu, c_nu in layers[k - l].items():
                    prev = R.get(parts_nu, _zero())
                    R[parts_nu] = prev + eps1[l] * c_nu
        # consistency outside the order-k support
        for parts_nu, val in R.items():
            if parts_nu not in sup_set and not val.is_zero:
                raise DegeneracyError(
                    f"order-{k} equation has unreachable component at {parts_nu}")
        coeffs_k = {}
        eps_k = None
        for parts_nu in lex_sorted_partitions(sup, reverse=True):
            acc = R.get(parts_nu, _zero())
            if eps_k is not None:
                # the eigenvalue correction multiplies the whole p^0 layer
                c0 = layers[0].get(parts_nu)
                if c0 is not None:
                    acc = acc + eps_k * c0
            for parts_mu in sup:
                if parts_mu <= parts_nu or parts_mu == lam.parts:
                    continue
                c_mu = coeffs_k.get(parts_mu)
                if c_mu is None or c_mu.is_zero:
                    continue
                a = op_layers[parts_mu][0].get(parts_nu)
                if a is not None:
                    acc = acc - a * c_mu
            if parts_nu == lam.parts:
                eps_k = -acc
                continue
            gap = eigenvalue_p0(SignedPartition(parts_nu), n) - e_lam
            if gap.is_zero:
                raise DegeneracyError(f"eigenvalue collision at order {k}: {parts_nu}")
            val = acc / gap
            if not val.is_zero:
                coeffs_k[parts_nu] = val
        layers[k] = coeffs_k
        eps1.append(eps_k if eps_k is not None else _zero())
    eps2 = _verify_second_operator(lam, n, K, layers)
    em = EllipticMacdonald(lam, n, K, tuple(layers), tuple(eps1), tuple(eps2))
    _CACHE[(parts, n, K)] = em
    return em


def _truncate_em(em: EllipticMacdonald, K):
    if em.order == K:
        return em
    return EllipticMacdonald(em.lam, em.n, K, em.layers[: K + 1],
                             em.eps1[: K + 1], em.eps2[: K + 1])


def _verify_second_operator(lam, n, K, layers):
    """The solution of the order-1 equation must satisfy the order-2 one."""
    if n < 2:
        return tuple()
    series = PSeries([from_monomial_dict(n, layers[k], one=_one()) for k in range(K + 1)],
                     LaurentRing(n))
    applied = apply_ruijsenaars(2, series, K)
    app_layers = [c.monomial_expansion() if c else {} for c in applied.coeffs]
    eps2 = [app_layers[k].get(lam.parts, _zero()) for k in range(K + 1)]
    for k in range(K + 1):
        expect = {}
        for l in range(k + 1):
            for parts_mu, c in layers[k - l].items():
                prev = expect.get(parts_mu, _zero())
                expect[parts_mu] = prev + eps2[l] * c
        got = app_layers[k]
        keys = set(expect) | set(got)
        for key in keys:
            if not (expect.get(key, _zero()) - got.get(key, _zero())).is_zero:
                raise DegeneracyError(
                    f"joint-eigenfunction check failed at order {k}, component {key}")
    return tuple(eps2)


# ----------------------------------------------------------------------
# Schauder-basis conversion
# ----------------------------------------------------------------------


def _scale_passenger(value, rational: RationalFn):
    """Multiply a passenger coefficient (RationalFn or LaurentPoly) by a
    rational function."""
    if isinstance(value, LaurentPoly):
        return value.scale(rational)
    return value * rational


def to_elliptic_basis(f: PSeries, K: int | None = None) -> dict:
    """Expand f in the elliptic eigenfunction basis: {parts: PSeries over
    Q(q,t)} with the iterative dominance elimination.

    Passenger coefficients (e.g. Laurent polynomials in a second variable
    set) ride along untouched, in which case the returned series have
    passenger-valued coefficients represented as plain lists.
    """
    n = f.ring.n
    K = f.order if K is None else min(K, f.order)
    residual = [dict(c.monomial_expansion()) if c else {} for c in f.coeffs[: K + 1]]
    out = {}
    for k in range(K + 1):
        guard = 0
        while residual[k]:
            guard += 1
            if guard > 20000:
                raise EllipqError("basis conversion did not terminate")
            parts_mu = lex_sorted_partitions(residual[k].keys())[0]
            a = residual[k].pop(parts_mu)
            if _passenger_zero(a):
                continue
            em = elliptic_macdonald(SignedPartition(parts_mu), n, K - k)
            slot = out.setdefault(parts_mu, [None] * (K + 1))
            slot[k] = a if slot[k] is None else slot[k] + a
            for l in range(K - k + 1):
                for parts_nu, c in em.layers[l].items():
                    if l == 0 and parts_nu == parts_mu:
                        continue
                    prev = residual[k + l].get(parts_nu)
                    term = _scale_passenger(a, c)
                    s = -term if prev is None else prev - term
                    if _passenger_zero(s):
                        residual[k + l].pop(parts_nu, None)
                    else:
                        residual[k + l][parts_nu] = s
    return {parts: _slot_to_series(slot, K) for parts, slot in out.items()}


def _passenger_zero(v):
    if hasattr(v, "is_zero"):
        z = v.is_zero
        return z if isinstance(z, bool) else bool(z)
    return v == 0


def _slot_to_series(slot, K):
    vals = [v if v is not None else _zero() for v in slot]
    if all(isinstance(v, RationalFn) for v in vals):
        return PSeries(vals, RationalRing(_QT))
    return vals


def from_elliptic_basis(coeffs: dict, n: int, K: int) -> PSeries:
    """Reassemble sum_lam A_lam(p) P_lam(x;p) as a PSeries in the m-basis."""
    layers = [dict() for _ in range(K + 1)]
    for parts, a in coeffs.items():
        avals = a.coeffs if isinstance(a, PSeries) else a
        em = elliptic_macdonald(SignedPartition(parts), n, K)
        for k, ak in enumerate(avals[: K + 1]):
            if _passenger_zero(ak):
                continue
            for l in range(K - k + 1):
                for parts_nu, c in em.layers[l].items():
                    prev = layers[k + l].get(parts_nu)
                    term = _scale_passenger(ak, c)
                    s = term if prev is None else prev + term
                    if _passenger_zero(s):
                        layers[k + l].pop(parts_nu, None)
                    else:
                        layers[k + l][parts_nu] = s
    ring = LaurentRing(n)
    return PSeries([from_monomial_dict(n, lay, one=_one()) for lay in layers], ring)


def basis_convert(f, direction: str, K: int):
    """Dispatch between the monomial and elliptic-eigenfunction bases.

    direction 'm->P' takes a PSeries over Laurent coefficients and returns
    expansion coefficients {parts: PSeries}; 'P->m' takes such a mapping
    (with the variable count in ``f['n']`` absent: inferred) and returns
    the PSeries.
    """
    if direction in ("m->P", "mP", "to"):
        return to_elliptic_basis(f, K)
    if direction in ("P->m", "Pm", "from"):
        coeffs, n = f
        return from_elliptic_basis(coeffs, n, K)
    raise EllipqError(f"unknown direction {direction!r}")


# ----------------------------------------------------------------------
# kernel expansion
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class KernelExpansion:
    """One Laurent coefficient of the kernel function in the spectral
    parameter, expanded in p and diagonalized over eigenfunction pairs."""

    m: int
    n: int
    order: int
    raw: PSeries  # LaurentPoly coefficients in (x, y) jointly (2n variables)
    diagonal: dict = field(default_factory=dict)  # {parts: PSeries}

    def raw_layer(self, k: int) -> LaurentPoly:
        return self.raw.coeffs[k]


def _euler_coeff(s: int, sign: int) -> RationalFn:
    """Coefficient of z^s in (z;q)_inf (sign=+1) or 1/(z;q)_inf (sign=-1)."""
    q = RationalFn("q", _QT)
    den = _one()
    for j in range(1, s + 1):
        den = den * (_one() - q ** j)
    if sign > 0:
        c = q ** (s * (s - 1) // 2) / den
        return -c if s % 2 else c
    return _one() / den


def kernel_coefficient(m: int, n: int, K: int) -> KernelExpansion:
    """Expand the kernel function's c^m Laurent coefficient to order p^K and
    diagonalize it over elliptic eigenfunction pairs.

    The kernel is rewritten with d = p/c, expanded as a double series in
    (c, d) with Laurent-polynomial coefficients in (x, y), and the c^k d^l
    terms recombine into p-layers via k - l = -m.
    """
    if n != 2 or abs(m) > 2 or K > 2:
        raise EnvelopeError("kernel expansion envelope: n = 2, |m| <= 2, K <= 2")
    q, t = RationalFn("q", _QT), RationalFn("t", _QT)
    cap_c = K + max(0, m)
    cap_d = K + max(0, -m)
    nv = 2 * n
    # bivariate truncated series over LaurentPoly(2n)
    bis = {(0, 0): LaurentPoly.constant(nv, _one())}

    def mul_factor(alpha, beta, mono, sign):
        """Multiply by (c^alpha d^beta * mono ; q)_inf^{sign}."""
        nonlocal bis
        smax_c = (cap_c - 0) // alpha if alpha else None
        smax_d = (cap_d - 0) // beta if beta else None
        smax = min(x for x in (smax_c, smax_d) if x is not None)
        out = {}
        for s in range(smax + 1):
            es = _euler_coeff(s, sign)
            if es.is_zero:
                continue
            mono_s = mono ** s if s else LaurentPoly.constant(nv, _one())
            term = mono_s.scale(es)
            for (kc, kd), poly in bis.items():
                nc, nd = kc + alpha * s, kd + beta * s
                if nc > cap_c or nd > cap_d:
                    continue
                add = poly * term
                prev = out.get((nc, nd))
                out[(nc, nd)] = add if prev is None else prev + add
        bis = {key: v for key, v in out.items() if not v.is_zero}

    jmax = max(cap_c, cap_d)
    for i in range(n):
        for j in range(n):
            exps_u = [0] * nv
            exps_u[i] = 1
            exps_u[n + j] = 1
            u = LaurentPoly.monomial(nv, exps_u, _one())
            uinv = LaurentPoly.monomial(nv, [-e for e in exps_u], _one())
            for row in range(jmax + 1):
                # (c^{row+1} d^row t u; q)inf / (c^{row+1} d^row u; q)inf
                if row + 1 <= cap_c and (row == 0 or row <= cap_d):
                    mul_factor(row + 1, row, u.scale(t), +1)
                    mul_factor(row + 1, row, u, -1)
                # (c^row d^{row+1} q/u; q)inf / (c^row d^{row+1} q/(t u); q)inf
                if row + 1 <= cap_d and (row == 0 or row <= cap_c):
                    mul_factor(row, row + 1, uinv.scale(q), +1)
                    mul_factor(row, row + 1, uinv.scale(q / t), -1)
    layers = []
    for k in range(K + 1):
        # c^{kc} d^{kd} with d = p/c contributes to p^{kd} c^{kc-kd}
        layers.append(bis.get((k + m, k), LaurentPoly(nv)) if k + m >= 0
                      else LaurentPoly(nv))
    raw = PSeries(layers, LaurentRing(nv))
    diagonal = _diagonalize_kernel(raw, m, n, K)
    return KernelExpansion(m, n, K, raw, diagonal)


def _split_xy(poly: LaurentPoly, n: int):
    """2n-variable Laurent polynomial -> x-monomial dict with y-Laurent
    passenger coefficients."""
    out = {}
    for mon, c in poly.terms.items():
        xm, ym = mon[:n], mon[n:]
        slot = out.setdefault(xm, LaurentPoly(n))
        prev = slot.terms.get(ym)
        slot.terms[ym] = c if prev is None else prev + c
    return {xm: v for xm, v in out.items() if v}


def _diagonalize_kernel(raw: PSeries, m: int, n: int, K: int) -> dict:
    """Convert in x (y as passenger), then in y; assert off-diagonal terms
    vanish identically and return {parts: PSeries of B_lambda}."""
    xseries_layers = []
    ring = LaurentRing(n)
    for k in range(K + 1):
        split = _split_xy(raw.coeffs[k], n)
        poly = LaurentPoly(n)
        poly.terms = dict(split)
        xseries_layers.append(poly)
    xseries = PSeries(xseries_layers, ring)
    x_coeffs = to_elliptic_basis(xseries, K)
    diagonal = {}
    for parts_lam, slot in x_coeffs.items():
        vals = slot.coeffs if isinstance(slot, PSeries) else slot
        yser = PSeries([v if isinstance(v, LaurentPoly) else LaurentPoly.constant(n, v)
                        for v in vals], ring)
        y_coeffs = to_elliptic_basis(yser, K)
        for parts_mu, b in y_coeffs.items():
            bser = b if isinstance(b, PSeries) else PSeries(b, RationalRing(_QT))
            if parts_mu != parts_lam:
                if not bser.is_zero:
                    raise DegeneracyError(
                        f"kernel expansion has off-diagonal component {parts_lam}/{parts_mu}")
                continue
            diagonal[parts_lam] = bser
    return diagonal


# ----------------------------------------------------------------------
# the c-series of the integral-operator eigenvalue at p = 0
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PhiSeries:
    """Truncated expansion phi_lam(c) = N_lam sum_k b_{lam+(k)^n} c^{|lam|+kn}.

    Exponent support is |lam| + n Z intersected with [|lam| - n lam_n, cap].
    N_lam carries the documented weight-truncation order; b coefficients
    are exact.
    """

    lam: SignedPartition
    n: int
    cap: int
    coeffs: dict  # {exponent: RationalFn}

    def eval_numeric(self, c, qv, tv, prec):
        total = None
        for e, r in sorted(self.coeffs.items()):
            term = r.subs_numeric({"q": qv, "t": tv}, prec) * c ** e
            total = term if total is None else total + term
        return total


def phi_lambda_series(lam: SignedPartition, n: int, c_order: int,
                      trunc: int = 14) -> PhiSeries:
    """Coefficients of the p = 0 integral-operator eigenvalue on P_lam."""
    if lam.n != n:
        raise EllipqError(f"partition has {lam.n} parts, expected {n}")
    base = lam.parts[-1]
    lam0 = lam.shift(-base)  # nonnegative, same N constant
    N, _ = macdonald_constants(lam0, n, max(1, lam0.parts[0] if lam0.parts else 1),
                               trunc=trunc)
    coeffs = {}
    k = -base
    while True:
        e = lam.weight + k * n
        if e > c_order:
            break
        shifted = lam.shift(k)
        if any(p < 0 for p in shifted.parts):
            k += 1
            continue
        coeffs[e] = N * cauchy_b(shifted, n)
        k += 1
    return PhiSeries(lam, n, c_order, coeffs)


# ----------------------------------------------------------------------
# eigenvalue series of the integral operator
# ----------------------------------------------------------------------


def _split_vars(poly: LaurentPoly, n_first: int):
    """Group a Laurent polynomial by its first n_first exponents; passenger
    coefficients are Laurent polynomials in the remaining variables."""
    rest = poly.n - n_first
    out = {}
    for mon, c in poly.terms.items():
        head, tail = mon[:n_first], mon[n_first:]
        slot = out.setdefault(head, LaurentPoly(rest))
        prev = slot.terms.get(tail)
        slot.terms[tail] = c if prev is None else prev + c
    return {k: v for k, v in out.items() if v}


def _m_to_p_matrix(parts, n):
    """m_mu = sum_nu d_{mu nu} P_nu at p = 0, triangular inversion (cached)."""
    key = (parts, n)
    hit = _M2P_CACHE.get(key)
    if hit is not None:
        return hit
    out = {parts: RationalFn(1, _QT)}
    pcoeffs = macdonald_coeffs(SignedPartition(parts), n)
    for parts_mu, c in pcoeffs.items():
        if parts_mu == parts:
            continue
        for parts_nu, d in _m_to_p_matrix(parts_mu, n).items():
            prev = out.get(parts_nu, _zero())
            out[parts_nu] = prev - c * d
    out = {k: v for k, v in out.items() if not v.is_zero}
    _M2P_CACHE[key] = out
    return out


_M2P_CACHE = {}


def _gamma_series_at(mono: LaurentPoly, K: int) -> PSeries:
    """gamma_p_expansion composed at a Laurent monomial argument."""
    from .elliptic_series import gamma_p_expansion

    base = gamma_p_expansion(K)
    nv = mono.n
    ring = LaurentRing(nv)
    coeffs = []
    for k in range(K + 1):
        layer = LaurentPoly(nv)
        for (e,), c in base.coeffs[k].terms.items():
            term = mono ** e if e else LaurentPoly.constant(nv, RationalFn(1, _QT))
            layer = layer + term.scale(_embed_qtc(c))
        coeffs.append(layer)
    return PSeries(coeffs, ring)


def _embed_qtc(r: RationalFn) -> RationalFn:
    return RationalFn(r, ("q", "t"))


@dataclass(frozen=True)
class QEigenvalue:
    """Truncated eigenvalue series of the spectral-parameter integral
    operator on one joint eigenfunction.

    ``layers[k]`` is the order-p^k coefficient as a polynomial in the
    spectral parameter c (exponents <= c_cap; the p^0 layer is the
    truncation of the analytic eigenvalue of the p = 0 operator)."""

    lam: SignedPartition
    n: int
    order: int
    c_cap: int
    layers: tuple  # tuple of {c-exponent: RationalFn}

    def eval_numeric(self, c, p, qv, tv, prec):
        total = None
        ppow = None
        for k in range(self.order + 1):
            layer = None
            for e, r in sorted(self.layers[k].items()):
                term = r.subs_numeric({"q": qv, "t": tv}, prec) * c ** e
                layer = term if layer is None else layer + term
            if layer is None:
                ppow = p if ppow is None else ppow * p
                continue
            if ppow is not None:
                layer = layer * ppow
            ppow = p if ppow is None else ppow * p
            total = layer if total is None else total + layer
        return total


def _phi_poly(parts, n, c_cap, trunc):
    phi = phi_lambda_series(SignedPartition(parts), n, c_cap, trunc=trunc)
    return {e: r for e, r in phi.coeffs.items() if e <= c_cap}


def q_eigenvalue(lam: SignedPartition, n: int, K: int, c_cap: int = 6,
                 trunc: int = 8) -> QEigenvalue:
    """Expand the integral operator termwise on the elliptic eigenfunction
    and read off the eigenvalue series.

    The integrand's gamma ratios split into the p = 0 kernel times a formal
    series with Laurent-polynomial coefficients; each p-layer is integrated
    through the p = 0 eigen-relation, so only the analytic eigenvalue
    series of the p = 0 operator enters.
    """
    if n != 2:
        raise EnvelopeError("eigenvalue expansion is implemented for n = 2")
    if K > 2 or c_cap > 10:
        raise EnvelopeError("envelope: K <= 2, c_cap <= 10")
    em = elliptic_macdonald(lam, n, K)
    nv = 2 * n + 1  # x..., y..., c
    one = RationalFn(1, _QT)

    def mono(xi=None, yj=None, c_pow=0, coeff=None):
        exps = [0] * nv
        if xi is not None:
            i, e = xi
            exps[i] += e
        if yj is not None:
            j, e = yj
            exps[n + j] += e
        exps[2 * n] += c_pow
        return LaurentPoly(nv, {tuple(exps): coeff if coeff is not None else one})

    t = RationalFn("t", _QT)
    phi_parts = []
    for i in range(n):
        for j in range(n):
            if i != j:
                phi_parts.append((_gamma_series_at(
                    mono(xi=(i, 1), coeff=t) * mono(xi=(j, -1)), K), False))
                phi_parts.append((_gamma_series_at(
                    mono(xi=(i, 1)) * mono(xi=(j, -1)), K), True))
    for i in range(n):
        for j in range(n):
            phi_parts.append((_gamma_series_at(
                mono(xi=(i, -1), yj=(j, 1), c_pow=1), K), False))
            phi_parts.append((_gamma_series_at(
                mono(xi=(i, -1), yj=(j, 1), c_pow=1, coeff=t), K), True))
    from .series import series_inv

    phi_series = None
    for ser, invert in phi_parts:
        ser = series_inv(ser) if invert else ser
        phi_series = ser if phi_series is None else phi_series * ser

    # embed the eigenfunction layers into the (x, y, c) variable set
    p_layers = []
    for k in range(K + 1):
        layer = LaurentPoly(nv)
        for parts_mu, cmu in em.layers[k].items():
            for perm_mon in monomial_sym_poly_exps(parts_mu):
                exps = tuple(perm_mon) + (0,) * (n + 1)
                prev = layer.terms.get(exps)
                layer.terms[exps] = cmu if prev is None else prev + cmu
        p_layers.append(layer)

    phi_cache = {}
    out_layers = []
    for k in range(K + 1):
        total_k = LaurentPoly(nv)
        for a in range(k + 1):
            total_k = total_k + p_layers[a] * phi_series.coeffs[k - a]
        # integrate against the p=0 kernel: x-monomials -> eigenvalue series
        out_layers.append(_integrate_p0(total_k, n, c_cap, trunc, phi_cache))
    layers = []
    lam_y = tuple(lam.parts)
    for k in range(K + 1):
        cpoly = {}
        for mon, coeff in out_layers[k].terms.items():
            if mon[:n] == lam_y:
                cpoly[mon[n]] = coeff
        layers.append(cpoly)
    return QEigenvalue(lam, n, K, c_cap, tuple(layers))


def monomial_sym_poly_exps(parts):
    import itertools as _it

    return sorted(set(_it.permutations(parts)))


def _integrate_p0(poly: LaurentPoly, n: int, c_cap: int, trunc: int, phi_cache):
    """Apply the p = 0 integral operator to an (x, y, c)-Laurent polynomial,
    symmetric in x: returns a (y, c)-Laurent polynomial, c-truncated."""
    xsplit = _split_vars(poly, n)
    # m-basis expansion of the x-dependence with passenger coefficients
    xpoly = LaurentPoly(n)
    xpoly.terms = dict(xsplit)
    mexp = xpoly.monomial_expansion()
    out = LaurentPoly(n + 1)
    for parts_mu, passenger in mexp.items():
        for parts_nu, d in _m_to_p_matrix(parts_mu, n).items():
            phi = phi_cache.get(parts_nu)
            if phi is None:
                phi = _phi_poly(parts_nu, n, c_cap, trunc)
                phi_cache[parts_nu] = phi
            pcoeffs = macdonald_coeffs(SignedPartition(parts_nu), n)
            for parts_rho, prho in pcoeffs.items():
                for y_mon in monomial_sym_poly_exps(parts_rho):
                    for (pass_mon, pass_c) in passenger.terms.items():
                        base_c = pass_mon[n]
                        y_part = tuple(pm + ym for pm, ym in zip(pass_mon[:n], y_mon))
                        for e, r in phi.items():
                            ce = base_c + e
                            if ce > c_cap:
                                continue
                            key = y_part + (ce,)
                            val = pass_c * d * prho * r
                            prev = out.terms.get(key)
                            s = val if prev is None else prev + val
                            if s.is_zero:
                                out.terms.pop(key, None)
                            else:
                                out.terms[key] = s
    return out
