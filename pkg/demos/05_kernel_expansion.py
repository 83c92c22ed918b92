"""Laurent coefficients of the two-family kernel function, diagonalized
over pairs of elliptic eigenfunctions."""

from ellipq.spectral import kernel_coefficient

for m in (0, 1):
    ke = kernel_coefficient(m, 2, 1)
    print(f"kernel coefficient m={m}, to O(p^2):")
    head = {mon: str(c) for mon, c in list(ke.raw.coeffs[0].terms.items())[:4]}
    print("  raw p^0 layer:", head, "..." if len(ke.raw.coeffs[0].terms) > 4 else "")
    for parts, series in sorted(ke.diagonal.items()):
        print(f"  B_{parts}:", [str(c)[:60] for c in series.coeffs])
    print("  off-diagonal pairs: none (asserted during diagonalization)")
    print()
