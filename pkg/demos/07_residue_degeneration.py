"""The discrete operators as residues of the integral operator.

The integral operator, analytically continued in its spectral parameter,
develops a simple pole at a root-of-q point; the residue there reproduces
the gauged discrete operator.  The left side is computed by a small-circle
contour integral with the operator evaluated on its deformed-contour
continuation; the right side applies the discrete operator directly.
"""

from ellipq.laurent import monomial_sym_poly
from ellipq.partitions import SignedPartition
from ellipq.verify import residue_noumi_sano

rep = residue_noumi_sano(1, 2, None, seed=3)
print(f"one variable, order 2 (closed forms): rel residual {rep.rel_residual:.2e}")

rep = residue_noumi_sano(2, 1, None, seed=11)
print(f"two variables, order 1, f = 1:        rel residual {rep.rel_residual:.2e}")
print("   circle radius used:", rep.parameters["rho"])

f = monomial_sym_poly(SignedPartition((1, 0)), 2, one=1)
rep = residue_noumi_sano(2, 1, f, seed=12)
print(f"two variables, order 1, f = m[1,0]:   rel residual {rep.rel_residual:.2e}")
