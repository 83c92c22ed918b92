"""Numeric verification of the torus-integral identities: the composed
kernel symmetry, the integral transformation, and the mixed-gauge
commutation.  Each check draws seeded admissible parameters and compares
two independently computed sides."""

from ellipq.verify import verify_grry, verify_qhqp, verify_rains, verify_theta_identity

rep = verify_theta_identity(3, 1, seed=1)
print(f"finite theta identity (n=3, k=1): rel residual {rep.rel_residual:.2e}")

rep = verify_rains(2, 1, seed=1)
print(f"integral transformation (n=2, m=1): rel residual {rep.rel_residual:.2e}")

rep = verify_grry(2, seed=1)
print(f"composed-kernel symmetry (n=2): rel residual {rep.rel_residual:.2e}")
for name, val in rep.extra_residuals.items():
    print(f"   {name}: {val:.2e}")

rep = verify_qhqp(2, seed=1)
print(f"mixed-gauge commutation (n=2): rel residual {rep.rel_residual:.2e}")
