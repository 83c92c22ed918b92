"""Exact multivariate rational functions over the rationals.

Thin wrapper around sympy's sparse fraction fields.  Elements are always
kept in reduced form, equality is exact, and mixed-parameter arithmetic
promotes both operands to the union parameter list.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.fields import field as _sympy_field

from .errors import RingMismatchError
from .hpcomplex import HPComplex

# Canonical ordering for the parameters that appear across the library.
_CANONICAL = ("q", "t", "c", "d", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4", "x", "y", "s")


def _sort_params(params):
    def key(name):
        try:
            return (0, _CANONICAL.index(name))
        except ValueError:
            return (1, name)

    return tuple(sorted(set(params), key=key))


@lru_cache(maxsize=None)
def _field(params: tuple):
    F, *gens = _sympy_field(list(params), QQ)
    return F, dict(zip(params, gens))


def _embed(element, src_params, dst_params):
    """Re-embed a FracElement into the field over a superset of parameters."""
    if src_params == dst_params:
        return element
    dst_field, _ = _field(dst_params)
    idx = [dst_params.index(s) for s in src_params]

    def remap(poly):
        d = {}
        for mon, coeff in poly.items():
            m2 = [0] * len(dst_params)
            for i, e in enumerate(mon):
                m2[idx[i]] = e
            d[tuple(m2)] = coeff
        return dst_field.ring.from_dict(d)

    return dst_field.new(remap(element.numer), remap(element.denom))


class RationalFn:
    """Element of Q(params), reduced, with exact decidable equality."""

    __slots__ = ("params", "elem")

    def __init__(self, value=0, params=("q", "t")):
        self.params = _sort_params(params)
        F, gens = _field(self.params)
        if isinstance(value, RationalFn):
            self.elem = _embed(value.elem, value.params, _sort_params(self.params + value.params))
            self.params = _sort_params(self.params + value.params)
            return
        if isinstance(value, str):
            if value not in gens:
                raise KeyError(f"unknown parameter {value!r}; declared {self.params}")
            self.elem = gens[value]
        elif isinstance(value, Fraction):
            self.elem = F.ground_new(QQ(value.numerator, value.denominator))
        elif isinstance(value, int):
            self.elem = F.ground_new(QQ(value))
        else:
            self.elem = value  # trust: a FracElement of this field

    @classmethod
    def _wrap(cls, elem, params):
        self = object.__new__(cls)
        self.elem = elem
        self.params = params
        return self

    # ------------------------------------------------------------------

    @property
    def numerator(self):
        return self.elem.numer

    @property
    def denominator(self):
        return self.elem.denom

    @property
    def is_zero(self):
        return not self.elem

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn(other, self.params)
        if not isinstance(other, RationalFn):
            raise RingMismatchError(f"cannot combine RationalFn with {type(other).__name__}")
        if self.params == other.params:
            return self.elem, other.elem, self.params
        union = _sort_params(self.params + other.params)
        return _embed(self.elem, self.params, union), _embed(other.elem, other.params, union), union

    def __add__(self, other):
        a, b, ps = self._pair(other)
        return RationalFn._wrap(a + b, ps)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, ps = self._pair(other)
        return RationalFn._wrap(a - b, ps)

    def __rsub__(self, other):
        a, b, ps = self._pair(other)
        return RationalFn._wrap(b - a, ps)

    def __mul__(self, other):
        a, b, ps = self._pair(other)
        return RationalFn._wrap(a * b, ps)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b, ps = self._pair(other)
        if not b:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn._wrap(a / b, ps)

    def __rtruediv__(self, other):
        a, b, ps = self._pair(other)
        if not a:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn._wrap(b / a, ps)

    def __neg__(self):
        return RationalFn._wrap(-self.elem, self.params)

    def __pow__(self, n):
        return RationalFn._wrap(self.elem ** n, self.params)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn(other, self.params)
        if not isinstance(other, RationalFn):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __hash__(self):
        return hash((self.params, self.elem))

    def __bool__(self):
        return bool(self.elem)

    def __repr__(self):
        return f"RationalFn({self.elem})"

    def __str__(self):
        return str(self.elem)

    # ------------------------------------------------------------------

    def subs_numeric(self, assignment: dict, prec=None) -> HPComplex:
        """Evaluate at numeric parameter values (HPComplex arithmetic)."""
        num = _eval_poly(self.elem.numer, self.params, assignment, prec)
        den = _eval_poly(self.elem.denom, self.params, assignment, prec)
        return num / den

    def subs_rational(self, assignment: dict) -> "RationalFn":
        """Substitute some parameters by other RationalFn values, exactly."""
        remaining = tuple(p for p in self.params if p not in assignment)
        out_params = _sort_params(remaining + tuple(
            p for v in assignment.values() if isinstance(v, RationalFn) for p in v.params))
        if not out_params:
            out_params = ("q",)
        acc_num = _subs_poly(self.elem.numer, self.params, assignment, out_params)
        acc_den = _subs_poly(self.elem.denom, self.params, assignment, out_params)
        return acc_num / acc_den


def _eval_poly(poly, params, assignment, prec):
    total = HPComplex(0, precision_bits=prec)
    for mon, coeff in poly.items():
        term = HPComplex(Fraction(int(coeff.numerator), int(coeff.denominator)), precision_bits=prec)
        for name, e in zip(params, mon):
            if e:
                term = term * (assignment[name] ** e)
        total = total + term
    return total


def _subs_poly(poly, params, assignment, out_params):
    total = RationalFn(0, out_params)
    for mon, coeff in poly.items():
        term = RationalFn(Fraction(int(coeff.numerator), int(coeff.denominator)), out_params)
        for name, e in zip(params, mon):
            if not e:
                continue
            v = assignment.get(name)
            if v is None:
                v = RationalFn(name, out_params)
            elif not isinstance(v, RationalFn):
                v = RationalFn(v, out_params)
            term = term * v ** e
        total = total + term
    return total


def rf(name_or_value, params=("q", "t")):
    """Shorthand: rf('q') is the generator q, rf(3) the constant 3."""
    return RationalFn(name_or_value, params)
