"""Arbitrary-precision complex scalars.

``HPComplex`` wraps the raw mpf tuples of :mod:`mpmath.libmp`, so every
operation is a pure function of its operands: no global context, no mutable
precision state.  Binary operations round at the larger of the two operand
precisions.
"""

from __future__ import annotations

import os
from fractions import Fraction

from mpmath import mpc as _mp_mpc
from mpmath import mpf as _mp_mpf
from mpmath.libmp import (
    from_float,
    from_int,
    from_rational,
    from_str,
    fzero,
    mpc_abs,
    mpc_add,
    mpc_div,
    mpc_exp,
    mpc_log,
    mpc_mul,
    mpc_neg,
    mpc_pow_int,
    mpc_sqrt,
    mpc_sub,
    mpf_cmp,
    mpf_cos_sin,
    mpf_div,
    mpf_log,
    mpf_mul_int,
    mpf_neg,
    mpf_pi,
    round_nearest,
    to_float,
    to_str,
)

_RND = round_nearest

MIN_PRECISION = 64
DEFAULT_PRECISION = max(MIN_PRECISION, int(os.environ.get("ELLIPQ_PRECISION_BITS", "256")))


def _raw_real(value, prec):
    """Convert a real Python scalar to a raw mpf."""
    if isinstance(value, int):
        return from_int(value, prec, _RND)
    if isinstance(value, float):
        return from_float(value, prec, _RND)
    if isinstance(value, Fraction):
        return from_rational(value.numerator, value.denominator, prec, _RND)
    if isinstance(value, str):
        return from_str(value, prec, _RND)
    if isinstance(value, _mp_mpf):
        return value._mpf_
    raise TypeError(f"cannot interpret {type(value).__name__} as a real part")


class HPComplex:
    """Immutable arbitrary-precision complex number.

    ``precision_bits`` is the working precision attached to the value; the
    mantissas themselves are exact binary numbers of whatever length their
    producing operation rounded to.
    """

    __slots__ = ("_re", "_im", "precision_bits")

    def __init__(self, real=0, imag=0, precision_bits=None):
        if isinstance(real, HPComplex):
            prec = precision_bits or real.precision_bits
            self._re, self._im = real._re, real._im
            self.precision_bits = prec
            return
        prec = DEFAULT_PRECISION if precision_bits is None else int(precision_bits)
        if prec < MIN_PRECISION:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION}, got {prec}")
        if isinstance(real, complex):
            if imag:
                raise ValueError("pass either a complex value or separate parts")
            real, imag = real.real, real.imag
        elif isinstance(real, _mp_mpc):
            if imag:
                raise ValueError("pass either a complex value or separate parts")
            real, imag = real.real, real.imag
        self._re = _raw_real(real, prec)
        self._im = _raw_real(imag, prec)
        self.precision_bits = prec

    @classmethod
    def _raw(cls, re, im, prec):
        self = object.__new__(cls)
        self._re = re
        self._im = im
        self.precision_bits = prec
        return self

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def real(self):
        return _mp_mpf(self._re)

    @property
    def imag(self):
        return _mp_mpf(self._im)

    @property
    def is_zero(self):
        return self._re == fzero and self._im == fzero

    def __complex__(self):
        return complex(to_float(self._re), to_float(self._im))

    def __float__(self):
        if self._im != fzero:
            raise ValueError("non-real HPComplex cannot convert to float")
        return to_float(self._re)

    def __bool__(self):
        return not self.is_zero

    def to_str(self, dps=None):
        dps = dps or max(1, int(self.precision_bits * 0.30103))
        re = to_str(self._re, dps)
        im = to_str(self._im, dps)
        if self._im == fzero:
            return re
        return f"({re} {'+' if not im.startswith('-') else '-'} {im.lstrip('-')}j)"

    def __repr__(self):
        return f"HPComplex({self.to_str(12)}, prec={self.precision_bits})"

    def __str__(self):
        return self.to_str()

    # ------------------------------------------------------------------
    # arithmetic (result precision = max of operand precisions)
    # ------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, HPComplex):
            return other
        if isinstance(other, (int, float, complex, Fraction, str, _mp_mpf, _mp_mpc)):
            return HPComplex(other, precision_bits=self.precision_bits)
        return None

    def _binary(self, other, op):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = max(self.precision_bits, o.precision_bits)
        re, im = op((self._re, self._im), (o._re, o._im), prec, _RND)
        return HPComplex._raw(re, im, prec)

    def __add__(self, other):
        return self._binary(other, mpc_add)

    def __radd__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + self

    def __sub__(self, other):
        return self._binary(other, mpc_sub)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        return self._binary(other, mpc_mul)

    def __rmul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self

    def __truediv__(self, other):
        return self._binary(other, mpc_div)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o / self

    def __neg__(self):
        re, im = mpc_neg((self._re, self._im))
        return HPComplex._raw(re, im, self.precision_bits)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        prec = self.precision_bits
        re, im = mpc_pow_int((self._re, self._im), n, prec, _RND)
        return HPComplex._raw(re, im, prec)

    def __abs__(self):
        prec = self.precision_bits
        return HPComplex._raw(mpc_abs((self._re, self._im), prec, _RND), fzero, prec)

    def conjugate(self):
        return HPComplex._raw(self._re, mpf_neg(self._im), self.precision_bits)

    def exp(self):
        prec = self.precision_bits
        re, im = mpc_exp((self._re, self._im), prec, _RND)
        return HPComplex._raw(re, im, prec)

    def log(self):
        prec = self.precision_bits
        re, im = mpc_log((self._re, self._im), prec, _RND)
        return HPComplex._raw(re, im, prec)

    def sqrt(self):
        prec = self.precision_bits
        re, im = mpc_sqrt((self._re, self._im), prec, _RND)
        return HPComplex._raw(re, im, prec)

    def root(self, n):
        """Principal n-th root via exp(log(z)/n)."""
        if n == 1:
            return self
        prec = self.precision_bits
        lre, lim = mpc_log((self._re, self._im), prec + 8, _RND)
        lre = mpf_div(lre, from_int(n), prec + 8, _RND)
        lim = mpf_div(lim, from_int(n), prec + 8, _RND)
        re, im = mpc_exp((lre, lim), prec, _RND)
        return HPComplex._raw(re, im, prec)

    def with_precision(self, prec):
        if prec < MIN_PRECISION:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION}")
        return HPComplex._raw(self._re, self._im, prec)

    # ------------------------------------------------------------------
    # comparisons
    # ------------------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        return hash((self._re, self._im))

    def _real_cmp(self, other, cmp):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._im != fzero or o._im != fzero:
            raise TypeError("ordering is only defined for real values")
        return cmp(mpf_cmp(self._re, o._re))

    def __lt__(self, other):
        return self._real_cmp(other, lambda c: c < 0)

    def __le__(self, other):
        return self._real_cmp(other, lambda c: c <= 0)

    def __gt__(self, other):
        return self._real_cmp(other, lambda c: c > 0)

    def __ge__(self, other):
        return self._real_cmp(other, lambda c: c >= 0)


def hpc(value, imag=0, prec=None):
    """Shorthand constructor."""
    return HPComplex(value, imag, precision_bits=prec)


def modulus(z: HPComplex) -> float:
    """|z| as a float; falls back to log-space for extreme magnitudes."""
    m = mpc_abs((z._re, z._im), 53, _RND)
    f = to_float(m)
    if f == 0.0 and not z.is_zero:
        return 0.0
    return f


def log_modulus(z: HPComplex) -> float:
    """log|z| as a float, safe against overflow/underflow of float range."""
    if z.is_zero:
        raise ValueError("log of zero modulus")
    m = mpc_abs((z._re, z._im), 53, _RND)
    return to_float(mpf_log(m, 53, _RND))


def unit_root(k: int, n: int, prec: int) -> HPComplex:
    """exp(2*pi*i*k/n) at the given precision."""
    wp = prec + 12
    angle = mpf_div(mpf_mul_int(mpf_pi(wp, _RND), 2 * (k % n), wp, _RND), from_int(n), wp, _RND)
    c, s = mpf_cos_sin(angle, prec, _RND)
    return HPComplex._raw(c, s, prec)
