"""Sparse multivariate Laurent polynomials over a pluggable coefficient ring.

Terms are a dict from integer exponent vectors (length n) to coefficients.
Coefficients can be RationalFn, HPComplex, Fraction/int, or nested
LaurentPoly (used for tensor-factor bookkeeping).  Zero coefficients are
never stored.
"""

from __future__ import annotations

import itertools

from .errors import DenominatorClearError, EllipqError, RingMismatchError
from .partitions import SignedPartition, lex_key


def _is_zero_coeff(c):
    if hasattr(c, "is_zero"):
        z = c.is_zero
        return z if isinstance(z, bool) else bool(z)
    return c == 0


class LaurentPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for mon, c in terms.items():
                if not _is_zero_coeff(c):
                    self.terms[tuple(mon)] = c

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n, exponents, c=1):
        return cls(n, {tuple(exponents): c})

    # ------------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exponents, default=0):
        return self.terms.get(tuple(exponents), default)

    def constant_term(self, default=0):
        return self.terms.get((0,) * self.n, default)

    def _check(self, other):
        if self.n != other.n:
            raise RingMismatchError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            s = terms.get(mon)
            s = c if s is None else s + c
            if _is_zero_coeff(s):
                terms.pop(mon, None)
            else:
                terms[mon] = s
        out = LaurentPoly(self.n)
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = LaurentPoly(self.n)
        out.terms = {mon: -c for mon, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = terms.get(mon)
                s = c if s is None else s + c
                if _is_zero_coeff(s):
                    terms.pop(mon, None)
                else:
                    terms[mon] = s
        out = LaurentPoly(self.n)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if _is_zero_coeff(c):
            return LaurentPoly(self.n)
        out = LaurentPoly(self.n)
        out.terms = {mon: c * v for mon, v in self.terms.items()}
        out.terms = {m: v for m, v in out.terms.items() if not _is_zero_coeff(v)}
        return out

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise EllipqError("cannot invert a non-monomial Laurent polynomial")
            mon, c = next(iter(self.terms.items()))
            inv = LaurentPoly(self.n, {tuple(-e for e in mon): _one_like(c) / c})
            return inv ** (-k)
        out = None
        base = self
        while True:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if not k:
                break
            base = base * base
        return LaurentPoly.constant(self.n, 1) if out is None else out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.n != other.n or set(self.terms) != set(other.terms):
            return False
        return all(_is_zero_coeff(self.terms[m] - other.terms[m]) for m in self.terms)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        bits = []
        for mon in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i+1}^{e}" for i, e in enumerate(mon) if e)
            bits.append(f"({self.terms[mon]})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    # ------------------------------------------------------------------

    def map_coeffs(self, fn):
        out = LaurentPoly(self.n)
        for mon, c in self.terms.items():
            v = fn(c)
            if not _is_zero_coeff(v):
                out.terms[mon] = v
        return out

    def substitute_scale(self, factors):
        """x_i -> factors[i] * x_i with factors in the coefficient ring.

        Factors must be invertible for negative exponents (field scalars).
        """
        out = LaurentPoly(self.n)
        for mon, c in self.terms.items():
            v = c
            for f, e in zip(factors, mon):
                if e:
                    v = v * f ** e
            if not _is_zero_coeff(v):
                out.terms[mon] = v
        return out

    def permute_vars(self, perm):
        """Apply x_i -> x_{perm[i]}."""
        out = LaurentPoly(self.n)
        for mon, c in self.terms.items():
            m2 = [0] * self.n
            for i, e in enumerate(mon):
                m2[perm[i]] = e
            out.terms[tuple(m2)] = c
        return out

    def is_symmetric(self):
        """Invariance under all adjacent transpositions."""
        for i in range(self.n - 1):
            perm = list(range(self.n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if self.permute_vars(perm) != self:
                return False
        return True

    def evaluate(self, point, coeff_eval=None):
        """Evaluate at a point (sequence supporting * and **).

        ``coeff_eval`` maps each coefficient into the point's arithmetic
        (e.g. RationalFn -> HPComplex); identity by default.
        """
        total = None
        for mon, c in self.terms.items():
            v = coeff_eval(c) if coeff_eval else c
            for z, e in zip(point, mon):
                if e:
                    v = v * z ** e
            total = v if total is None else total + v
        return point[0] * 0 if total is None else total

    # ------------------------------------------------------------------
    # symmetric-function views
    # ------------------------------------------------------------------

    def leading_exponent(self):
        """Lex-largest exponent vector after sorting each one decreasingly.

        For a symmetric polynomial this is the dominance-maximal partition
        present, refined lexicographically.
        """
        best = None
        for mon in self.terms:
            key = tuple(sorted(mon, reverse=True))
            if best is None or key > best:
                best = key
        return best

    def monomial_expansion(self):
        """Expand a symmetric Laurent polynomial in the m-basis.

        Returns dict {parts tuple: coefficient}.  Raises if the input is
        not symmetric (leftover terms that are no full orbit).
        """
        rest = self
        out = {}
        guard = 0
        while rest.terms:
            guard += 1
            if guard > 100000:
                raise EllipqError("monomial expansion did not terminate")
            lam = rest.leading_exponent()
            c = rest.terms.get(lam)
            if c is None or _is_zero_coeff(c):
                raise EllipqError("not symmetric: dominant orbit misses its sorted exponent")
            out[lam] = c
            rest = rest - monomial_sym_poly(SignedPartition(lam), self.n, one=_one_like(c)).scale(c)
        return out


def _one_like(c):
    """Multiplicative unit matching a coefficient's ring."""
    from fractions import Fraction

    if isinstance(c, int):
        return Fraction(1)
    if isinstance(c, (float, complex, Fraction)):
        return 1
    if hasattr(c, "params"):
        from .ratfun import RationalFn

        return RationalFn(1, c.params)
    if isinstance(c, LaurentPoly):
        return LaurentPoly.constant(c.n, 1)
    from .hpcomplex import HPComplex

    if isinstance(c, HPComplex):
        return HPComplex(1, precision_bits=c.precision_bits)
    return 1


def monomial_sym_poly(mu: SignedPartition, n, one=1) -> LaurentPoly:
    """Monomial symmetric Laurent polynomial m_mu: each distinct permutation
    of the exponent vector once, with unit coefficient."""
    if mu.n != n:
        raise EllipqError(f"partition has {mu.n} parts, expected {n}")
    out = LaurentPoly(n)
    for perm in set(itertools.permutations(mu.parts)):
        out.terms[perm] = one
    return out


def exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials (coefficients in a field).

    Works by shifting both to ordinary polynomials and running lex-greedy
    division; raises DenominatorClearError when the division is not exact.
    """
    if g.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero:
        return LaurentPoly(f.n)
    n = f.n

    def lexmax(terms):
        return max(terms)

    g_lead = lexmax(g.terms)
    g_lc = g.terms[g_lead]
    rem = dict(f.terms)
    quot = {}
    guard = 0
    while rem:
        guard += 1
        if guard > 200000:
            raise DenominatorClearError("division loop did not terminate")
        r_lead = lexmax(rem)
        r_lc = rem[r_lead]
        shift = tuple(a - b for a, b in zip(r_lead, g_lead))
        ratio = r_lc / g_lc
        # subtract ratio * x^shift * g from the remainder
        for mon, c in g.terms.items():
            key = tuple(a + b for a, b in zip(mon, shift))
            s = rem.get(key)
            v = ratio * c
            s = -v if s is None else s - v
            if _is_zero_coeff(s):
                rem.pop(key, None)
            else:
                rem[key] = s
        if r_lead in rem:
            raise DenominatorClearError("leading term did not cancel; inexact division")
        q = quot.get(shift)
        q = ratio if q is None else q + ratio
        if _is_zero_coeff(q):
            quot.pop(shift, None)
        else:
            quot[shift] = q
    out = LaurentPoly(n)
    out.terms = quot
    return out


def from_monomial_dict(n, coeffs, one=1):
    """Sum of c_mu * m_mu given {parts tuple: coefficient}."""
    out = LaurentPoly(n)
    for parts, c in coeffs.items():
        out = out + monomial_sym_poly(SignedPartition(tuple(parts)), n, one=one).scale(c)
    return out


def lex_sorted_partitions(coeffs, reverse=True):
    return sorted(coeffs, key=lambda parts: lex_key(SignedPartition(parts)), reverse=reverse)
