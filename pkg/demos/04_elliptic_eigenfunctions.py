"""Perturbative joint eigenfunctions in the elliptic nome, the basis
conversion, and the eigenvalue series of the integral operator."""

from ellipq.macdonald import monomial_sym
from ellipq.partitions import partition
from ellipq.series import LaurentRing, PSeries
from ellipq.spectral import (
    elliptic_macdonald,
    from_elliptic_basis,
    phi_lambda_series,
    to_elliptic_basis,
)

em = elliptic_macdonald(partition(0, 0), 2, 2)
print("eigenfunction for (0,0), layers:")
for k, layer in enumerate(em.layers):
    print(f"  p^{k}:", {mu: str(c)[:60] for mu, c in layer.items()})
print("order-1 eigenvalue series:", [str(e)[:60] for e in em.eps1])

f = PSeries.constant(monomial_sym(partition(0, 0), 2), LaurentRing(2), 2)
conv = to_elliptic_basis(f)
print("\nexpanding m[0,0] in the eigenfunction basis:")
for parts, series in sorted(conv.items()):
    print(f"  A_{parts}:", [str(c)[:50] for c in series.coeffs])
back = from_elliptic_basis(conv, 2, 2)
print("roundtrip identity:", back == f)

phi = phi_lambda_series(partition(1, 0), 2, 7)
print("\neigenvalue series of the p=0 integral operator on P_(1,0):")
for e, c in sorted(phi.coeffs.items()):
    print(f"  c^{e}:", str(c)[:70])
