"""Signed partitions and the dominance order.

Partitions here are weakly decreasing integer vectors of fixed length n.
Three classes appear: all parts >= 0, arbitrary integer parts, and last
part zero.  The dominance order compares prefix sums and requires equal
totals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

from .errors import EllipqError


@dataclass(frozen=True, order=False)
class SignedPartition:
    parts: tuple
    n: int = field(default=0)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", self.n or len(parts))
        if self.n != len(parts):
            raise EllipqError(f"length mismatch: n={self.n} but {len(parts)} parts")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise EllipqError(f"parts must be weakly decreasing: {parts}")

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def spread(self):
        return self.parts[0] - self.parts[-1] if self.parts else 0

    def classify(self):
        """Most specific class tag: 'Lambda0', 'Lambda', or 'LambdaInf'."""
        if not self.parts or self.parts[-1] == 0:
            return "Lambda0"
        if self.parts[-1] > 0:
            return "Lambda"
        return "LambdaInf"

    def in_class(self, tag):
        if tag == "LambdaInf":
            return True
        if tag == "Lambda":
            return not self.parts or self.parts[-1] >= 0
        if tag == "Lambda0":
            return not self.parts or self.parts[-1] == 0
        raise EllipqError(f"unknown partition class {tag!r}")

    def shift(self, m):
        """Add m to every part."""
        return SignedPartition(tuple(p + m for p in self.parts))

    def orbit_size(self):
        """Number of distinct permutations of the parts."""
        size = factorial(self.n)
        for _, grp in itertools.groupby(self.parts):
            size //= factorial(len(list(grp)))
        return size

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partition(*parts):
    return SignedPartition(tuple(parts))


def dominance_leq(lam: SignedPartition, mu: SignedPartition) -> bool:
    """True iff lam <= mu in dominance: prefix sums of lam never exceed
    those of mu and the totals agree."""
    if lam.n != mu.n:
        raise EllipqError(f"length mismatch: {lam.n} vs {mu.n}")
    sl = sm = 0
    for j in range(lam.n - 1):
        sl += lam.parts[j]
        sm += mu.parts[j]
        if sl > sm:
            return False
    return lam.weight == mu.weight


def lex_key(lam: SignedPartition):
    """Sort key giving a linear extension of dominance (plain lex on parts)."""
    return lam.parts


def partitions_with_weight(n, weight, upper, lower):
    """All weakly decreasing integer n-tuples with the given total and
    parts confined to [lower, upper]."""
    out = []

    def rec(prefix, remaining, bound):
        k = len(prefix)
        if k == n:
            if remaining == 0:
                out.append(SignedPartition(tuple(prefix)))
            return
        slots = n - k
        for p in range(min(bound, remaining - lower * (slots - 1)), lower - 1, -1):
            # remaining - p must be achievable by slots-1 parts each <= p and >= lower
            if remaining - p > p * (slots - 1):
                continue
            rec(prefix + [p], remaining - p, p)

    rec([], weight, upper)
    return out


def dominance_lower_set(lam: SignedPartition, upper=None, lower=None):
    """All mu <= lam in dominance (same length and total)."""
    up = lam.parts[0] if upper is None else upper
    lo = lam.parts[-1] if lower is None else lower
    return [mu for mu in partitions_with_weight(lam.n, lam.weight, up, lo)
            if dominance_leq(mu, lam)]
