"""Acceptance gate: one test per criterion, each at its stated tolerance."""
import time
from fractions import Fraction as F

import numpy as np
import pytest

from helpers import disk_points, random_aggregate, valid_indices
from zernike_calculus import (
    CoefficientAggregate,
    DerivativeSign,
    FourierBoundary,
    GradientCoefficientPair,
    NeumannCompatibilityError,
    ZernikeIndex,
    apply_A,
    apply_A_adjoint,
    apply_normal_operator,
    boundary_normal_derivative,
    circle_eval_xy,
    d_mu,
    d_nu,
    inner_product,
    inverse_laplacian_single,
    laplacian,
    laplacian_single,
    norm_sq,
    radial_eval,
    reconstruct,
    scale_expansion,
    solve_neumann,
    wavefront_eval,
)
from zernike_calculus.polynomials import RadialMethod, radial_table
from zernike_calculus.structured import (
    dense_inverse,
    difference_matrix,
    invert_C,
    invert_LM,
    laplacian_block,
    min_matrix,
    reconstruction_min_sequence,
)

PLUS, MINUS = DerivativeSign.PLUS, DerivativeSign.MINUS

# (n, m) -> {s: coefficient of Z_s^m in Delta Z_n^m}
LAPLACIAN_ROWS = {
    (0, 0): {}, (2, 0): {0: 8}, (4, 0): {2: 48, 0: 24}, (6, 0): {4: 120, 2: 120, 0: 48},
    (1, 1): {}, (3, 1): {1: 24}, (5, 1): {3: 80, 1: 64},
    (2, 2): {}, (4, 2): {2: 48}, (6, 2): {4: 120, 2: 120},
    (3, 3): {}, (5, 3): {3: 80},
    (4, 4): {}, (6, 4): {4: 120},
    (5, 5): {}, (6, 6): {},
}

# (n', m) -> {n: coefficient of Z_n^m in the preimage of Z_{n'}^m}
INVERSE_ROWS = {
    (0, 0): {2: F(1, 8)},
    (2, 0): {2: F(-1, 16), 4: F(1, 48)},
    (4, 0): {2: F(1, 80), 4: F(-1, 48), 6: F(1, 120)},
    (6, 0): {4: F(1, 168), 6: F(-1, 96), 8: F(1, 224)},
    (1, 1): {3: F(1, 24)},
    (3, 1): {3: F(-1, 30), 5: F(1, 80)},
    (5, 1): {3: F(1, 120), 5: F(-1, 70), 7: F(1, 168)},
    (2, 2): {4: F(1, 48)},
    (4, 2): {4: F(-1, 48), 6: F(1, 120)},
    (6, 2): {4: F(1, 168), 6: F(-1, 96), 8: F(1, 224)},
    (3, 3): {5: F(1, 80)},
    (5, 3): {5: F(-1, 70), 7: F(1, 168)},
    (4, 4): {6: F(1, 120)},
    (6, 4): {6: F(-1, 96), 8: F(1, 224)},
    (5, 5): {7: F(1, 168)},
    (6, 6): {8: F(1, 224)},
}


def as_rows(agg, m):
    assert all(k[0] == m for k in agg.keys())
    return {n: v for (_, n), v in agg.items()}


@pytest.mark.criterion(1, "Laplacian table, exact integers, < 1 s")
def test_laplacian_table_exact():
    # every (n, m) with m >= 0, n <= 6 and n - m even
    assert set(LAPLACIAN_ROWS) == {(n, m) for m, n in valid_indices(6, m_min=0)}
    start = time.perf_counter()
    for (n, m), row in LAPLACIAN_ROWS.items():
        got = as_rows(laplacian_single(ZernikeIndex(n, m)), m)
        assert got == row, (n, m)
        assert all(type(v) is int for v in got.values())
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(2, "inverse Laplacian table, exact rationals, < 1 s")
def test_inverse_laplacian_table_exact():
    assert set(INVERSE_ROWS) == {(n, m) for m, n in valid_indices(6, m_min=0)}
    start = time.perf_counter()
    for (n, m), row in INVERSE_ROWS.items():
        got = as_rows(inverse_laplacian_single(ZernikeIndex(n, m)), m)
        assert got == row, (n, m)
        assert all(isinstance(v, (int, F)) for v in got.values())
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(3, "Laplacian of Z_6^2 spot check")
def test_laplacian_z62():
    assert laplacian_single(ZernikeIndex(6, 2)) == {(2, 4): 120, (2, 2): 120}


@pytest.mark.criterion(4, "delta recovery from perfect gradients, N = 20, < 10 s")
def test_delta_recovery():
    N = 20
    start = time.perf_counter()
    count = 0
    for m1, n1 in valid_indices(18):
        if n1 == 0:
            continue
        alpha = CoefficientAggregate.basis(m1, n1, N)
        pair = GradientCoefficientPair(apply_A(PLUS, alpha), apply_A(MINUS, alpha))
        hat = reconstruct(pair, N).alpha_hat
        assert abs(hat[(m1, n1)] - 1) <= 1e-12
        others = [abs(v) for k, v in hat.items() if k not in ((m1, n1), (0, 0))]
        assert max(others, default=0.0) <= 1e-12, (m1, n1)
        count += 1
    assert count == sum(n + 1 for n in range(1, 19))
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(5, "gradient expansions vs finite differences, n <= 10")
def test_gradient_expansions_finite_differences():
    rng = np.random.default_rng(2024)
    pts = disk_points(rng, 50, rho_max=0.9)
    nu, mu = pts[:, 0], pts[:, 1]
    h = 1e-5
    for m, n in valid_indices(10):
        idx = ZernikeIndex(n, m)
        fd_nu = (circle_eval_xy(idx, nu + h, mu) - circle_eval_xy(idx, nu - h, mu)) / (2 * h)
        fd_mu = (circle_eval_xy(idx, nu, mu + h) - circle_eval_xy(idx, nu, mu - h)) / (2 * h)
        e = CoefficientAggregate.basis(m, n)
        np.testing.assert_allclose(wavefront_eval(d_nu(e), pts), fd_nu, rtol=0, atol=1e-6)
        np.testing.assert_allclose(wavefront_eval(d_mu(e), pts), fd_mu, rtol=0, atol=1e-6)


@pytest.mark.criterion(6, "adjoint and normal-operator identities, 100 pairs, N = 16")
def test_adjoint_and_normal_operator():
    rng = np.random.default_rng(16)
    N = 16
    for _ in range(100):
        alpha = random_aggregate(rng, N)
        gamma = random_aggregate(rng, N - 1)
        scale = np.sqrt(norm_sq(alpha) * norm_sq(gamma))
        for sign in (PLUS, MINUS):
            lhs = inner_product(apply_A(sign, alpha), gamma)
            rhs = inner_product(alpha, apply_A_adjoint(sign, gamma))
            assert abs(lhs - rhs) <= 1e-12 * scale
        closed = apply_normal_operator(alpha)
        composed = apply_A_adjoint(PLUS, apply_A(PLUS, alpha)) + apply_A_adjoint(MINUS, apply_A(MINUS, alpha))
        ref = max(abs(v) for v in composed.values())
        assert closed.max_abs_diff(composed) <= 1e-12 * ref


@pytest.mark.criterion(7, "structured inverses vs dense elimination, I, K <= 12, |m| <= 6")
def test_structured_inverses_vs_dense():
    worst = 0.0
    for m in range(-6, 7):
        for size in range(13):
            b = reconstruction_min_sequence(m, size)
            if m == 0:
                b = b[1:]
            if b:
                LM = difference_matrix(len(b)) @ min_matrix(b)
                worst = max(worst, np.max(np.abs(invert_LM(b).to_dense() - dense_inverse(LM))))
            C = laplacian_block((m, size))
            worst = max(worst, np.max(np.abs(invert_C((m, size)).to_dense() - dense_inverse(C))))
    assert worst <= 1e-11


@pytest.mark.criterion(8, "radial evaluation methods agree")
def test_radial_methods_agree():
    rho = np.linspace(0.0, 1.0, 101)
    for n in range(13):
        for m in range(n % 2, n + 1, 2):
            mono = radial_eval(n, m, rho, RadialMethod.MONOMIAL)
            for method in (RadialMethod.RECURRENCE, RadialMethod.CHEBYSHEV_DCT):
                np.testing.assert_allclose(radial_eval(n, m, rho, method), mono, rtol=0, atol=1e-12)
    table = radial_table(50, rho)
    for n in range(51):
        for m in range(n % 2, n + 1, 2):
            dct = radial_eval(n, m, rho, RadialMethod.CHEBYSHEV_DCT)
            np.testing.assert_allclose(dct, table[n, m], rtol=0, atol=1e-10)


@pytest.mark.criterion(9, "pupil-scaling expansion, n' <= 10")
def test_pupil_scaling():
    rho = np.linspace(0.0, 1.0, 21)
    for n_prime in range(11):
        for m in range(n_prime % 2, n_prime + 1, 2):
            for eps in (0.3, 0.5, 0.9):
                coeffs = scale_expansion(n_prime, m, eps)
                got = sum(c * radial_eval(n, m, rho, RadialMethod.MONOMIAL) for n, c in coeffs)
                want = radial_eval(n_prime, m, eps * rho, RadialMethod.MONOMIAL)
                np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)


@pytest.mark.criterion(10, "Neumann round trip and compatibility error")
@pytest.mark.parametrize("n, m", [(6, 2), (5, 3), (4, 0)])
def test_neumann_round_trip(n, m):
    target = CoefficientAggregate.basis(m, n)
    f = -laplacian(target)
    psi = boundary_normal_derivative(target)
    sol = solve_neumann(f, psi, n - 2)
    assert sol.piston_free
    diff = (sol.phi - target).as_dict()
    diff.pop((0, 0), None)
    assert max((abs(v) for v in diff.values()), default=0.0) <= 1e-12


@pytest.mark.criterion(10, "Neumann round trip and compatibility error")
def test_neumann_incompatible_data():
    with pytest.raises(NeumannCompatibilityError) as info:
        solve_neumann(CoefficientAggregate.zeros(2), FourierBoundary({0: 1}), 2)
    assert info.value.defect == pytest.approx(1.0)
