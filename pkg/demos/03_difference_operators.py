"""The commuting difference operators: exact p-series application,
commutation, and the discrete alternative family."""

from ellipq.macdonald import monomial_sym
from ellipq.operators import apply_noumi_sano, apply_ruijsenaars
from ellipq.partitions import partition
from ellipq.series import LaurentRing, PSeries

f = PSeries.constant(monomial_sym(partition(1, 0), 2), LaurentRing(2), 2)

out = apply_ruijsenaars(1, f, 2)
print("order-1 operator on m[1,0], to O(p^3):")
for k, layer in enumerate(out.coeffs):
    print(f"  p^{k}:", {mu: str(c) for mu, c in layer.monomial_expansion().items()})

ab = apply_ruijsenaars(2, apply_ruijsenaars(1, f, 2), 2)
ba = apply_ruijsenaars(1, apply_ruijsenaars(2, f, 2), 2)
print("\n[D1, D2] m[1,0] = 0 exactly to p^2:", ab == ba)

h = apply_noumi_sano("Ht", 1, f, 1)
print("\ndiscrete-family operator on m[1,0], to O(p^2):")
for k, layer in enumerate(h.coeffs):
    print(f"  p^{k}:", {mu: str(c)[:40] for mu, c in layer.monomial_expansion().items()})

hd = apply_ruijsenaars(1, apply_noumi_sano("Ht", 1, f, 1), 1)
dh = apply_noumi_sano("Ht", 1, apply_ruijsenaars(1, f, 1), 1)
print("\n[Ht1, D1] m[1,0] = 0 exactly to p^1:", hd == dh)
