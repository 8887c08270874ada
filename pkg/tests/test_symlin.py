import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from momquad.config import Tolerances
from momquad.errors import (
    IndefinitePencilError,
    NotPositiveDefiniteError,
    SingularDeflationError,
    SingularSystemError,
)
from momquad.symlin import (
    GenEigResult,
    SymPencil,
    canonical_sign,
    cholesky,
    determinant,
    gen_eigen_definite,
    gen_eigen_semidefinite,
    kernel_dimension,
    kernel_vector,
    least_squares,
    solve_linear,
    sym_eigen,
    symmetrize,
)


def random_spd(rng, n, spread=1.0):
    """Random symmetric positive definite matrix with eigenvalues in
    roughly [10^-spread, 10^spread]."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    vals = 10.0 ** rng.uniform(-spread, spread, size=n)
    return (q * vals) @ q.T


def random_sym(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


def test_symmetrize_averages_roundoff():
    a = np.array([[1.0, 2.0 + 1e-14], [2.0, 3.0]])
    s = symmetrize(a)
    assert np.array_equal(s, s.T)
    assert s[0, 1] == pytest.approx(2.0, abs=1e-13)


def test_symmetrize_rejects_genuine_asymmetry():
    with pytest.raises(ValueError):
        symmetrize(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        symmetrize(np.zeros((2, 3)))


def test_canonical_sign():
    assert np.array_equal(canonical_sign(np.array([1.0, -3.0])), [-1.0, 3.0])
    assert np.array_equal(canonical_sign(np.array([1.0, 3.0])), [1.0, 3.0])
    # tie: first largest-magnitude entry decides
    assert np.array_equal(canonical_sign(np.array([-2.0, 2.0])), [2.0, -2.0])


def test_pencil_validation():
    p = SymPencil(np.eye(3), np.zeros((3, 3)))
    assert p.dimension == 3
    assert p.scale == pytest.approx(np.sqrt(3.0))
    with pytest.raises(ValueError):
        SymPencil(np.eye(2), np.zeros((3, 3)))
    with pytest.raises(ValueError):
        SymPencil(np.eye(2), np.eye(2), definiteness_hint="mostly_positive")


def test_cholesky_matches_numpy():
    rng = np.random.default_rng(7)
    for n in (1, 2, 5, 8):
        a = random_spd(rng, n)
        ours = cholesky(a)
        ref = np.linalg.cholesky(a)
        assert np.allclose(ours, ref, rtol=1e-10, atol=1e-12)


def test_cholesky_survives_wild_diagonal_scaling():
    # diagonally dominant, SPD, diagonals across sixteen orders of magnitude;
    # a global pivot threshold would reject this
    a = np.diag([1e-8, 1.0, 1e8])
    a[0, 1] = a[1, 0] = 1e-5
    low = cholesky(a)
    assert np.allclose(low @ low.T, a, rtol=1e-12)


def test_cholesky_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(np.diag([1.0, 0.0]))


@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_sym_eigen_reconstructs(n, seed):
    a = random_sym(np.random.default_rng(seed), n)
    vals, vecs = sym_eigen(a)
    assert np.all(np.diff(vals) >= 0)
    assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-10)
    assert np.allclose(vecs @ np.diag(vals) @ vecs.T, a, atol=1e-9 * (1 + np.abs(a).max()))
    for i in range(n):
        v = vecs[:, i]
        assert v[int(np.argmax(np.abs(v)))] > 0


def test_definite_pencil_recovers_planted_spectrum():
    """Build a pencil with a known spectrum: A = L L^T and
    B = L Q diag(lams) Q^T L^T, so det(lam*A - B) vanishes exactly at the
    planted lams."""
    rng = np.random.default_rng(23)
    for n in (2, 4, 7):
        low = np.tril(rng.standard_normal((n, n)))
        np.fill_diagonal(low, np.abs(np.diag(low)) + 0.5)
        a = low @ low.T
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        planted = np.sort(rng.uniform(-5, 5, size=n))
        b = low @ (q * planted) @ q.T @ low.T
        result = gen_eigen_definite(SymPencil(a, b))
        assert result.infinite_count == 0
        assert np.allclose(result.finite_eigenvalues, planted, rtol=1e-7, atol=1e-7)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_definite_pencil_residuals(n, seed):
    rng = np.random.default_rng(seed)
    pencil = SymPencil(random_spd(rng, n), random_sym(rng, n))
    result = gen_eigen_definite(pencil)
    assert len(result.finite_eigenvalues) == n
    for lam, v, res in zip(
        result.finite_eigenvalues, result.eigenvectors, result.residuals
    ):
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert res <= 1e-8 * (1.0 + abs(lam))
        direct = np.linalg.norm((lam * pencil.A - pencil.B) @ v) / pencil.scale
        assert direct == pytest.approx(res, abs=1e-12)


def test_eigenvalues_sorted_ascending():
    rng = np.random.default_rng(5)
    pencil = SymPencil(random_spd(rng, 6), random_sym(rng, 6))
    vals = gen_eigen_definite(pencil).finite_eigenvalues
    assert list(vals) == sorted(vals)


def test_semidefinite_agrees_with_definite_when_it_can():
    rng = np.random.default_rng(41)
    for n in (2, 3, 5):
        pencil = SymPencil(random_spd(rng, n), random_sym(rng, n))
        d = gen_eigen_definite(pencil)
        s = gen_eigen_semidefinite(pencil)
        assert s.infinite_count == 0
        assert np.allclose(s.finite_eigenvalues, d.finite_eigenvalues, atol=1e-9)
        for u, v in zip(s.eigenvectors, d.eigenvectors):
            assert np.allclose(u, v, atol=1e-8)


def test_semidefinite_deflation_hand_case():
    # A kills e2; the pencil det(lam*A - B) = -3(lam - 2) + ... works out to
    # a single finite eigenvalue 5/3 with eigenvector (3, -1)/sqrt(10),
    # plus one eigenvalue at infinity.
    a = np.diag([1.0, 0.0])
    b = np.array([[2.0, 1.0], [1.0, 3.0]])
    result = gen_eigen_semidefinite(SymPencil(a, b))
    assert result.infinite_count == 1
    assert result.finite_eigenvalues == pytest.approx([5.0 / 3.0])
    expected = np.array([3.0, -1.0]) / np.sqrt(10.0)
    assert np.allclose(result.eigenvectors[0], expected, atol=1e-12)


def test_semidefinite_deflation_random_nullity():
    # plant a rank-deficient A with known nullity and check the finite
    # eigenvalues really solve det(lam*A - B) = 0
    rng = np.random.default_rng(77)
    n, nullity = 5, 2
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    vals = np.concatenate([np.zeros(nullity), rng.uniform(0.5, 2.0, n - nullity)])
    a = (q * vals) @ q.T
    b = random_spd(rng, n)  # definite B is invertible on any null space
    result = gen_eigen_semidefinite(SymPencil(a, b))
    assert result.infinite_count == nullity
    assert len(result.finite_eigenvalues) == n - nullity
    for lam in result.finite_eigenvalues:
        sv = np.linalg.svd(lam * a - b, compute_uv=False)
        assert sv[-1] <= 1e-7 * sv[0]


def test_semidefinite_rejects_indefinite_leading_matrix():
    with pytest.raises(IndefinitePencilError):
        gen_eigen_semidefinite(SymPencil(np.diag([1.0, -1.0]), np.eye(2)))


def test_semidefinite_singular_deflation_is_loud():
    # B vanishes on null(A): deflation cannot decide what happens there
    a = np.diag([1.0, 0.0])
    b = np.array([[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(SingularDeflationError):
        gen_eigen_semidefinite(SymPencil(a, b))


def test_zero_leading_matrix_is_all_infinite():
    b = np.array([[2.0, 1.0], [1.0, 3.0]])
    result = gen_eigen_semidefinite(SymPencil(np.zeros((2, 2)), b))
    assert result.finite_eigenvalues == ()
    assert result.infinite_count == 2


def test_gen_eig_result_requires_matching_lengths():
    with pytest.raises(ValueError):
        GenEigResult((1.0,), (), infinite_count=0)


def test_kernel_vector_finds_planted_direction():
    v = canonical_sign(np.array([1.0, -2.0, 2.0]) / 3.0)
    a = 5.0 * (np.eye(3) - np.outer(v, v))  # kernel is exactly span(v)
    found = kernel_vector(a, 1e-10)
    assert found is not None
    assert np.allclose(found, v, atol=1e-10)
    assert kernel_vector(np.eye(3), 1e-10) is None
    assert kernel_dimension(a, 1e-10) == 1
    assert kernel_dimension(np.zeros((3, 3)), 1e-10) == 3


def test_solve_linear_and_failure():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    x = solve_linear(a, np.array([3.0, 4.0]))
    assert np.allclose(a @ x, [3.0, 4.0], atol=1e-12)
    with pytest.raises(SingularSystemError):
        solve_linear(np.ones((2, 2)), np.array([1.0, 0.0]))


def test_least_squares_reports_residual():
    a = np.array([[1.0], [1.0]])
    x, res = least_squares(a, np.array([0.0, 2.0]))
    assert x == pytest.approx([1.0])
    assert res == pytest.approx(np.sqrt(2.0))
    _, exact = least_squares(np.eye(2), np.array([1.0, 2.0]))
    assert exact == pytest.approx(0.0, abs=1e-14)


def test_determinant_sanity():
    assert determinant(np.diag([2.0, 3.0])) == pytest.approx(6.0)


def test_definite_solver_handles_hankel_style_conditioning():
    """Moment matrices have diagonals spanning many orders of magnitude;
    diagonal balancing inside the definite solver keeps residuals tight."""
    rng = np.random.default_rng(3)
    d = np.array([1.0, 1e3, 1e6, 1e9, 1e12])
    a = random_spd(rng, 5, spread=0.3) * np.outer(np.sqrt(d), np.sqrt(d))
    b = random_sym(rng, 5) * np.outer(np.sqrt(d), np.sqrt(d))
    pencil = SymPencil(a, b)
    result = gen_eigen_definite(pencil)
    for lam, v in zip(result.finite_eigenvalues, result.eigenvectors):
        res = np.linalg.norm((lam * pencil.A - pencil.B) @ v) / pencil.scale
        assert res <= 1e-8 * (1.0 + abs(lam))
