"""ellipq: elliptic special functions, Macdonald machinery, difference
operators, and torus-quadrature verification of their integral identities."""

from .hpcomplex import DEFAULT_PRECISION, HPComplex, hpc, unit_root
from .elliptic import (
    EllipticParams,
    elliptic_factorial,
    gamma_pq,
    gamma_residue,
    qpochhammer_inf,
    theta,
)
from .elliptic_series import gamma_p_expansion, theta_triple_series
from .partitions import SignedPartition, dominance_leq, partition
from .laurent import LaurentPoly, monomial_sym_poly
from .ratfun import RationalFn, rf
from .series import LaurentRing, PSeries, RationalRing, series_inv, series_mul
from .macdonald import (
    cauchy_b,
    macdonald_constants,
    macdonald_poly,
    monomial_sym,
)
from .operators import (
    DifferenceOperator,
    GaugeWeight,
    apply_noumi_sano,
    apply_ruijsenaars,
    gauge_conjugate_ruijsenaars_check,
    macdonald_eigenvalue,
)
from .spectral import (
    EllipticMacdonald,
    KernelExpansion,
    QEigenvalue,
    basis_convert,
    elliptic_macdonald,
    kernel_coefficient,
    phi_lambda_series,
    q_eigenvalue,
)
from .quadrature import (
    DixonSpec,
    TorusDomain,
    dixon_integral,
    kernel_Kcd,
    q_apply_numeric,
    torus_integrate,
)
from .verify import (
    VerificationReport,
    residue_noumi_sano,
    verify_gamma_identities,
    verify_grry,
    verify_eigenvalue_series,
    verify_qd_commutation,
    verify_qhqp,
    verify_rains,
    verify_theta_identity,
)

__version__ = "0.1.0"
