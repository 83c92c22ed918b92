"""Acceptance suite: one test per criterion, at the contracted tolerances.

Each test prints a pass line with its measured worst residual and wall time
(visible with `pytest -s` or on failure).
"""

import time

import pytest

from ellipq.hpcomplex import hpc, modulus
from ellipq.laurent import LaurentPoly, monomial_sym_poly
from ellipq.macdonald import macdonald_coeffs, monomial_sym
from ellipq.operators import apply_ruijsenaars, macdonald_eigenvalue
from ellipq.partitions import SignedPartition, partition, partitions_with_weight
from ellipq.ratfun import RationalFn
from ellipq.series import LaurentRing, PSeries
from ellipq.spectral import (
    elliptic_macdonald,
    from_elliptic_basis,
    kernel_coefficient,
    to_elliptic_basis,
)
from ellipq.verify import (
    residue_noumi_sano,
    verify_gamma_identities,
    verify_grry,
    verify_eigenvalue_series,
    verify_qhqp,
    verify_rains,
    verify_theta_identity,
)

ONE = RationalFn(1)
Q = RationalFn("q")
T = RationalFn("t")


def report(num, label, detail, t0, budget):
    elapsed = time.time() - t0
    print(f"PASS criterion {num:2d} ({label}): {detail}  [{elapsed:.1f}s]")
    assert elapsed < budget, f"criterion {num} exceeded its {budget}s budget"


def test_criterion_01_gamma_identities():
    t0 = time.time()
    rep = verify_gamma_identities(seed=2024, points=100, prec=256,
                                  threshold=2.0 ** -236)
    assert rep.passed, f"worst residual {rep.rel_residual:.3e}"
    # certification rerun at 320 bits
    rep320 = verify_gamma_identities(seed=2024, points=100, prec=320,
                                     threshold=2.0 ** -300)
    assert rep320.passed
    report(1, "gamma shift/reflection",
           f"worst rel {rep.rel_residual:.2e} < 2^-236; "
           f"320-bit rerun {rep320.rel_residual:.2e}", t0, 30)


def test_criterion_02_macdonald_coefficient_exact():
    t0 = time.time()
    coeffs = macdonald_coeffs(partition(2, 0), 2)
    beta = (ONE - T) * (ONE + Q) / (ONE - T * Q)
    assert coeffs[(1, 1)] == beta
    assert set(coeffs) == {(2, 0), (1, 1)} and coeffs[(2, 0)] == ONE
    report(2, "exact Macdonald coefficient", "m[1,1] coefficient matches", t0, 1)


def test_criterion_03_elliptic_macdonald_alpha_exact():
    t0 = time.time()
    em = elliptic_macdonald(partition(0, 0), 2, 1)
    alpha = (ONE - T) ** 2 * (ONE + T) * Q / (T * (ONE - Q) * (ONE - T * Q))
    assert em.coefficient(1, (1, -1)) == alpha
    assert em.coefficient(1, (0, 0)).is_zero
    report(3, "order-p eigenfunction coefficient", "alpha matches exactly", t0, 10)


def test_criterion_04_kernel_expansion_exact():
    t0 = time.time()
    ke = kernel_coefficient(0, 2, 1)
    coef = (ONE - T) ** 2 * Q / (T * (ONE - Q) ** 2)
    xk = LaurentPoly(4, {(1, -1, 0, 0): ONE, (-1, 1, 0, 0): ONE, (0, 0, 0, 0): ONE * 2})
    yk = LaurentPoly(4, {(0, 0, 1, -1): ONE, (0, 0, -1, 1): ONE, (0, 0, 0, 0): ONE * 2})
    assert ke.raw.coeffs[0] == LaurentPoly.constant(4, ONE)
    assert ke.raw.coeffs[1] == (xk * yk).scale(coef)
    b00 = ke.diagonal[(0, 0)]
    b11 = ke.diagonal[(1, -1)]
    b00_p1 = (T + 1) * (T - 1) ** 2 * Q * (3 * T * Q + T - Q - 3 * ONE) \
        / (T * (Q - 1) * (T * Q - 1) ** 2)
    assert b00.coeffs[0] == ONE and b00.coeffs[1] == b00_p1
    assert b11.coeffs[0].is_zero and b11.coeffs[1] == coef
    assert set(ke.diagonal) == {(0, 0), (1, -1)}  # off-diagonals vanish
    report(4, "kernel expansion", "raw and diagonalized forms match exactly", t0, 60)


def test_criterion_05_eigen_equations_exact():
    t0 = time.time()
    checked = 0
    for n in (2, 3):
        for weight in range(5):
            for lam in partitions_with_weight(n, weight, weight, 0):
                from ellipq.macdonald import macdonald_poly

                p = PSeries.constant(macdonald_poly(lam, n), LaurentRing(n), 0)
                for k in range(n + 1):
                    out = apply_ruijsenaars(k, p, 0)
                    ev = macdonald_eigenvalue(lam, k, n)
                    assert out.coeffs[0] == p.coeffs[0].scale(ev), (lam, k)
                    checked += 1
    polys = [monomial_sym(partition(*parts), 2)
             for parts in ((0, 0), (1, 0), (2, 0), (1, 1), (1, -1))]
    for f in polys:
        fs = PSeries.constant(f, LaurentRing(2), 2)
        ab = apply_ruijsenaars(2, apply_ruijsenaars(1, fs, 2), 2)
        ba = apply_ruijsenaars(1, apply_ruijsenaars(2, fs, 2), 2)
        assert ab == ba
    report(5, "eigen-equations and commutation",
           f"{checked} eigen-relations exact; order-(1,2) commutator zero to p^2",
           t0, 120)


def test_criterion_06_kcd_symmetry_20_seeds():
    t0 = time.time()
    worst = worst_j = 0.0
    for seed in range(20):
        rep = verify_grry(2, seed=seed, threshold=1e-10, cap=256)
        assert rep.passed, f"seed {seed}: {rep.rel_residual:.3e}"
        worst = max(worst, rep.rel_residual)
        worst_j = max(worst_j, rep.extra_residuals["j-symmetry"])
    report(6, "composed-kernel symmetry",
           f"20 seeds, worst rel {worst:.2e}, paired-argument form {worst_j:.2e}",
           t0, 600)


def test_criterion_07_integral_transformation():
    t0 = time.time()
    worst = 0.0
    for (n, m) in ((1, 1), (2, 1), (1, 2)):
        for seed in range(10):
            rep = verify_rains(n, m, seed=seed, threshold=1e-10, cap=256)
            assert rep.passed, f"(n,m)=({n},{m}) seed {seed}: {rep.rel_residual:.3e}"
            worst = max(worst, rep.rel_residual)
    report(7, "integral transformation", f"30 instances, worst rel {worst:.2e}",
           t0, 600)


def test_criterion_08_theta_identity_all_orders():
    t0 = time.time()
    prec = 256
    worst = 0.0
    for n in (2, 3, 4):
        for k in range(n + 1):
            for seed in range(10):
                rep = verify_theta_identity(n, k, seed=seed, prec=prec,
                                            threshold=2.0 ** -(prec - 24))
                assert rep.passed, f"n={n} k={k} seed {seed}"
                worst = max(worst, rep.rel_residual)
    report(8, "finite theta identity",
           f"n in 2..4, all k, 10 seeds each, worst rel {worst:.2e}", t0, 300)


def test_criterion_09_residue_degeneration():
    t0 = time.time()
    rep1 = residue_noumi_sano(1, 1, None, seed=41, threshold=1e-10)
    assert rep1.passed, f"n=1: {rep1.rel_residual:.3e}"
    worst = 0.0
    for f, seed in ((None, 42), (monomial_sym_poly(SignedPartition((1, 0)), 2, one=1), 43)):
        rep = residue_noumi_sano(2, 1, f, seed=seed, threshold=1e-6)
        assert rep.passed, f"n=2 seed {seed}: {rep.rel_residual:.3e}"
        worst = max(worst, rep.rel_residual)
    report(9, "residue degeneration",
           f"n=1 closed form {rep1.rel_residual:.2e}; n=2 worst {worst:.2e}",
           t0, 900)


def test_criterion_10_gauge_pair_commutation():
    t0 = time.time()
    worst = 0.0
    for seed in range(10):
        rep = verify_qhqp(2, seed=seed, threshold=1e-10, cap=256)
        assert rep.passed, f"seed {seed}: {rep.rel_residual:.3e}"
        worst = max(worst, rep.rel_residual)
    report(10, "mixed-gauge commutation", f"10 seeds, worst rel {worst:.2e}",
           t0, 300)


def test_criterion_11_eigenvalue_series_quadrature():
    t0 = time.time()
    worst = 0.0
    for parts in ((0, 0), (1, 0), (1, -1)):
        rep = verify_eigenvalue_series(parts, 2, seed=71, threshold=1e-8)
        assert rep.passed, f"{parts}: {rep.rel_residual:.3e}"
        worst = max(worst, rep.rel_residual)
    report(11, "integral-operator eigenvalue series",
           f"three partitions, three spectral points each, worst {worst:.2e}",
           t0, 300)


def test_criterion_12_schauder_roundtrip():
    t0 = time.time()
    K = 2
    ring = LaurentRing(2)
    count = 0
    for top in range(-2, 3):
        for bottom in range(max(-2, top - 2), top + 1):
            lam = partition(top, bottom)
            f = PSeries.constant(monomial_sym(lam, 2), ring, K)
            conv = to_elliptic_basis(f)
            back = from_elliptic_basis(conv, 2, K)
            assert back == f, lam
            count += 1
    report(12, "basis roundtrip", f"{count} monomial elements, exact to p^2",
           t0, 60)
