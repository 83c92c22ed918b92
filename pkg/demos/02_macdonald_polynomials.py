"""Macdonald polynomials over Q(q,t): construction, eigen-relations, and
the orthogonality/Cauchy constants."""

from ellipq.macdonald import (
    cauchy_b,
    eigenvalue_p0,
    macdonald_coeffs,
    macdonald_operator_apply,
    macdonald_poly,
    macdonald_constants,
)
from ellipq.partitions import partition

for parts in ((2, 0), (1, -1), (2, 1, 0)):
    lam = partition(*parts)
    coeffs = macdonald_coeffs(lam, lam.n)
    terms = " + ".join(
        f"({c})*m{list(mu)}" if str(c) != "1" else f"m{list(mu)}"
        for mu, c in sorted(coeffs.items(), reverse=True))
    print(f"P_{parts} =", terms)

lam = partition(2, 0)
p = macdonald_poly(lam, 2)
applied = macdonald_operator_apply(p, 2)
print("\neigen-relation exact:", applied == p.scale(eigenvalue_p0(lam, 2)),
      "| eigenvalue:", eigenvalue_p0(lam, 2))

print("\nCauchy constants b_lambda (expansion of the Cauchy kernel):")
for parts in ((0, 0), (1, 0), (1, 1), (2, 0)):
    print(f"  b_{parts} =", cauchy_b(partition(*parts), 2))

N, b = macdonald_constants(partition(1, 0), 2, 3, trunc=10)
print("\nnorm constant N_(1,0) (weight truncated at order 10):")
print("  ", str(N)[:100], "...")
