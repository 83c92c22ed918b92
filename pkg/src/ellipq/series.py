"""Truncated power series in the elliptic nome p.

A PSeries stores a dense list of K+1 coefficients from a declared
coefficient ring.  All operations truncate at the smaller order of their
operands, and the ring tag is checked on every binary operation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EllipqError, RingMismatchError
from .hpcomplex import HPComplex
from .laurent import LaurentPoly, _is_zero_coeff, exact_div
from .ratfun import RationalFn


class RationalRing:
    """Coefficients in Q(params)."""

    def __init__(self, params=("q", "t")):
        self.params = tuple(params)

    def zero(self):
        return RationalFn(0, self.params)

    def one(self):
        return RationalFn(1, self.params)

    def coerce(self, x):
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, (int, Fraction, str)):
            return RationalFn(x, self.params)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} into Q{self.params}")

    def invert(self, x):
        if _is_zero_coeff(x):
            raise EllipqError("constant term is zero, series not invertible")
        return self.one() / x

    def __eq__(self, other):
        # RationalFn promotes across parameter lists, so any two are compatible.
        return isinstance(other, RationalRing)

    def __repr__(self):
        return f"RationalRing{self.params}"


class LaurentRing:
    """Coefficients are Laurent polynomials in n variables over an inner ring."""

    def __init__(self, n, inner=None):
        self.n = n
        self.inner = inner or RationalRing()

    def zero(self):
        return LaurentPoly(self.n)

    def one(self):
        return LaurentPoly.constant(self.n, self.inner.one())

    def coerce(self, x):
        if isinstance(x, LaurentPoly):
            if x.n != self.n:
                raise RingMismatchError(f"LaurentPoly in {x.n} vars, ring expects {self.n}")
            return x
        return LaurentPoly.constant(self.n, self.inner.coerce(x))

    def invert(self, x):
        if not isinstance(x, LaurentPoly) or len(x.terms) != 1:
            raise EllipqError("only monomial Laurent coefficients are invertible")
        return x ** -1

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.n == self.n

    def __repr__(self):
        return f"LaurentRing(n={self.n})"


class HPRing:
    """Numeric coefficients at a fixed working precision."""

    def __init__(self, prec):
        self.prec = prec

    def zero(self):
        return HPComplex(0, precision_bits=self.prec)

    def one(self):
        return HPComplex(1, precision_bits=self.prec)

    def coerce(self, x):
        if isinstance(x, HPComplex):
            return x
        return HPComplex(x, precision_bits=self.prec)

    def invert(self, x):
        if x.is_zero:
            raise EllipqError("constant term is zero, series not invertible")
        return self.one() / x

    def __eq__(self, other):
        return isinstance(other, HPRing)

    def __repr__(self):
        return f"HPRing({self.prec})"


class PSeries:
    """Power series in p truncated at order K (inclusive)."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring):
        self.ring = ring
        self.coeffs = [ring.coerce(c) for c in coeffs]
        if not self.coeffs:
            raise EllipqError("a PSeries needs at least the constant coefficient")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, ring, order):
        coeffs = [ring.coerce(value)] + [ring.zero() for _ in range(order)]
        return cls(coeffs, ring)

    @classmethod
    def zero(cls, ring, order):
        return cls([ring.zero() for _ in range(order + 1)], ring)

    def __getitem__(self, k):
        return self.coeffs[k] if k <= self.order else self.ring.zero()

    def truncate(self, order):
        if order >= self.order:
            return self
        return PSeries(self.coeffs[: order + 1], self.ring)

    def pad(self, order):
        if order <= self.order:
            return self
        return PSeries(self.coeffs + [self.ring.zero()] * (order - self.order), self.ring)

    def shift(self, k):
        """Multiply by p^k, keeping the order."""
        if k == 0:
            return self
        coeffs = [self.ring.zero()] * k + self.coeffs[: max(0, len(self.coeffs) - k)]
        return PSeries(coeffs, self.ring)

    def _check(self, other):
        if not isinstance(other, PSeries):
            raise RingMismatchError(f"expected PSeries, got {type(other).__name__}")
        if not (self.ring == other.ring):
            raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    @property
    def is_zero(self):
        return all(_is_zero_coeff(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PSeries):
            return NotImplemented
        if not (self.ring == other.ring) or self.order != other.order:
            return False
        return all(_is_zero_coeff(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        self._check(other)
        k = min(self.order, other.order)
        return PSeries([self.coeffs[i] + other.coeffs[i] for i in range(k + 1)], self.ring)

    def __sub__(self, other):
        self._check(other)
        k = min(self.order, other.order)
        return PSeries([self.coeffs[i] - other.coeffs[i] for i in range(k + 1)], self.ring)

    def __neg__(self):
        return PSeries([-c for c in self.coeffs], self.ring)

    def scale(self, c):
        return PSeries([x * c for x in self.coeffs], self.ring)

    def __mul__(self, other):
        if not isinstance(other, PSeries):
            return self.scale(other)
        self._check(other)
        k = min(self.order, other.order)
        out = []
        for m in range(k + 1):
            acc = None
            for i in range(m + 1):
                a, b = self.coeffs[i], other.coeffs[m - i]
                if _is_zero_coeff(a) or _is_zero_coeff(b):
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            out.append(self.ring.zero() if acc is None else acc)
        return PSeries(out, self.ring)

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if not _is_zero_coeff(c):
                bits.append(f"({c!r})" + (f"*p^{k}" if k else ""))
        return " + ".join(bits) or "0"


def series_mul(a: PSeries, b: PSeries) -> PSeries:
    """Truncated Cauchy product; result order is min(a.order, b.order)."""
    return a * b


def series_inv(a: PSeries) -> PSeries:
    """Multiplicative inverse; requires an invertible constant coefficient."""
    inv0 = a.ring.invert(a.coeffs[0])
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = None
        for i in range(1, k + 1):
            if i > a.order or _is_zero_coeff(a.coeffs[i]):
                continue
            term = a.coeffs[i] * out[k - i]
            acc = term if acc is None else acc + term
        out.append(a.ring.zero() if acc is None else (-acc) * inv0)
    return PSeries(out, a.ring)


def series_exp(a: PSeries) -> PSeries:
    """exp of a series with zero constant term, over a Q-algebra."""
    if not _is_zero_coeff(a.coeffs[0]):
        raise EllipqError("series_exp needs a vanishing constant term")
    K = a.order
    result = PSeries.constant(1, a.ring, K)
    term = PSeries.constant(1, a.ring, K)
    for m in range(1, K + 1):
        term = (term * a).scale(Fraction(1, m))
        result = result + term
        if term.is_zero:
            break
    return result


def series_exact_div(num: PSeries, den: PSeries) -> PSeries:
    """Order-by-order exact division for Laurent-coefficient series.

    The constant coefficient of ``den`` must divide exactly at every order;
    raises DenominatorClearError otherwise.
    """
    den0 = den.coeffs[0]
    out = []
    for m in range(num.order + 1):
        acc = num.coeffs[m]
        for i in range(1, m + 1):
            if i > den.order or _is_zero_coeff(den.coeffs[i]):
                continue
            acc = acc - den.coeffs[i] * out[m - i]
        out.append(exact_div(acc, den0) if isinstance(acc, LaurentPoly) else acc / den0)
    return PSeries(out, num.ring)
