"""Theta functions and the elliptic gamma function at high precision.

Evaluates the building blocks, checks the quasi-periodicity and reflection
identities on the spot, and shows the certified-truncation behaviour.
"""

from ellipq.elliptic import EllipticParams, elliptic_factorial, gamma_pq, qpochhammer_inf, theta
from ellipq.hpcomplex import hpc, modulus

prec = 256
tol = 2.0 ** -(prec + 16)
p = hpc(0.11, 0.04, prec=prec)
q = hpc(0.18, -0.06, prec=prec)
x = hpc(0.65, 0.3, prec=prec)
params = EllipticParams(p, q, tol)

print("q-Pochhammer (x;q)_inf =", qpochhammer_inf(x, q, tol).to_str(30))
print("theta_p(x)             =", theta(x, p, tol).to_str(30))

g = gamma_pq(x, params)
print("Gamma_{p,q}(x)         =", g.to_str(30))

shift = gamma_pq(q * x, params)
print("shift residual     |Gamma(qx) - theta_p(x) Gamma(x)| =",
      f"{float(modulus(shift - theta(x, p, tol) * g)):.3e}")

refl = gamma_pq(p * q / x, params)
print("reflection residual|Gamma(x) Gamma(pq/x) - 1|        =",
      f"{float(modulus(refl * g - 1)):.3e}")

fac = elliptic_factorial(x, 3, params)
quot = gamma_pq(x * q ** 3, params) / gamma_pq(x, params)
print("factorial vs gamma quotient residual                 =",
      f"{float(modulus(fac - quot)):.3e}")
