"""Dense symmetric linear algebra used by every node computation.

The two workhorses are the generalized eigensolvers for a symmetric pencil
(A, B), meaning the roots of det(lambda*A - B):

* `gen_eigen_definite` requires A positive definite and reduces to an
  ordinary symmetric problem by congruence with the Cholesky factor.
* `gen_eigen_semidefinite` allows A singular.  It splits space into
  range(A) and null(A); on the null part the pencil has no lambda left, so
  those directions carry eigenvalues "at infinity" and are eliminated by a
  Schur complement, leaving a definite problem on the range.  This requires
  B to be invertible on null(A); when it is not, the pencil is genuinely
  degenerate and the caller must handle it.

Factorizations and eigensolves are backed by numpy (LAPACK).  The contracts
here are residual-based: every returned eigenpair is checked against the
original pencil and rejected loudly rather than returned inaccurate.

Eigenvector conventions, for reproducible output: unit Euclidean norm, the
largest-magnitude component made positive, and ties in the eigenvalue order
broken lexicographically by eigenvector.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConvergenceError,
    IndefinitePencilError,
    NotPositiveDefiniteError,
    SingularDeflationError,
    SingularSystemError,
)

__all__ = [
    "SymPencil",
    "GenEigResult",
    "cholesky",
    "sym_eigen",
    "gen_eigen_definite",
    "gen_eigen_semidefinite",
    "determinant",
    "kernel_vector",
    "kernel_dimension",
    "solve_linear",
    "least_squares",
    "symmetrize",
    "canonical_sign",
]


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Force exact symmetry; rejects matrices that are not nearly symmetric."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        return a.copy()
    scale = float(np.max(np.abs(a)))
    if float(np.max(np.abs(a - a.T))) > 1e-10 * (1.0 + scale):
        raise ValueError("matrix is not symmetric")
    return (a + a.T) / 2.0


def canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip so the largest-magnitude component is positive (first on ties)."""
    idx = int(np.argmax(np.abs(v)))
    return -v if v[idx] < 0 else v.copy()


@dataclass(frozen=True, eq=False)
class SymPencil:
    """The family lambda*A - B of symmetric matrices of one dimension."""

    A: np.ndarray
    B: np.ndarray
    definiteness_hint: str = "unknown"

    def __post_init__(self):
        object.__setattr__(self, "A", symmetrize(self.A))
        object.__setattr__(self, "B", symmetrize(self.B))
        if self.A.shape != self.B.shape:
            raise ValueError(
                f"pencil matrices differ in shape: {self.A.shape} vs {self.B.shape}"
            )
        if self.definiteness_hint not in (
            "positive_definite",
            "positive_semidefinite",
            "indefinite",
            "unknown",
        ):
            raise ValueError(f"bad definiteness hint {self.definiteness_hint!r}")

    @property
    def dimension(self) -> int:
        return self.A.shape[0]

    @property
    def scale(self) -> float:
        """Normalizer for residuals: Frobenius norms of both matrices."""
        return float(np.linalg.norm(self.A) + np.linalg.norm(self.B))


@dataclass(frozen=True, eq=False)
class GenEigResult:
    """Finite spectrum of a pencil plus the count of infinite eigenvalues.

    residuals[i] = ||(lambda_i A - B) v_i|| / (||A|| + ||B||), checked at
    construction time against the residual tolerance.
    """

    finite_eigenvalues: tuple[float, ...]
    eigenvectors: tuple[np.ndarray, ...]
    infinite_count: int
    residuals: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if len(self.finite_eigenvalues) != len(self.eigenvectors):
            raise ValueError("one eigenvector per finite eigenvalue required")


def cholesky(a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Lower-triangular L with L@L.T == A, or NotPositiveDefiniteError.

    Written out by hand rather than delegated so that the failure mode is a
    classification with a quantified pivot, not an opaque library error:
    callers use "not positive definite" as a legitimate branch.  A pivot
    counts as nonpositive below tol.rank * (1 + its own diagonal entry);
    the comparison is per column because Hankel moment matrices are badly
    scaled (diagonals spanning many orders of magnitude) and a global
    threshold would condemn the small-but-healthy early pivots.
    """
    a = symmetrize(a)
    n = a.shape[0]
    if n == 0:
        return a.copy()
    low = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - float(low[j, :j] @ low[j, :j])
        threshold = tol.rank * (1.0 + abs(a[j, j]))
        if pivot <= threshold:
            raise NotPositiveDefiniteError(
                f"pivot {pivot:.3e} at index {j} is below threshold {threshold:.3e}"
            )
        low[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def sym_eigen(
    a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ascending and orthonormal eigenvectors (as columns)."""
    a = symmetrize(a)
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolve failed: {exc}") from None
    scale = 1.0 + float(np.linalg.norm(a))
    residual = float(np.max(np.abs(a @ vecs - vecs * vals))) if a.size else 0.0
    if residual > tol.residual * scale:
        raise ConvergenceError(
            f"eigensolve residual {residual:.3e} exceeds {tol.residual * scale:.3e}"
        )
    for i in range(vecs.shape[1]):
        vecs[:, i] = canonical_sign(vecs[:, i])
    return vals, vecs


def _assemble(
    pairs: list[tuple[float, np.ndarray]],
    pencil: SymPencil,
    infinite_count: int,
    tol: Tolerances,
) -> GenEigResult:
    """Order, sign-fix, and residual-check raw eigenpairs of a pencil.

    Stored residuals are ||(lambda*A - B)v|| / (||A|| + ||B||); the
    acceptance gate allows an extra factor (1 + |lambda|) because the
    residual of an exact eigenpair perturbed at machine level grows with
    the eigenvalue magnitude.
    """
    scale = pencil.scale + 1e-300
    finished = []
    for lam, v in pairs:
        v = v / np.linalg.norm(v)
        v = canonical_sign(v)
        res = float(np.linalg.norm((lam * pencil.A - pencil.B) @ v)) / scale
        finished.append((float(lam), v, res))
    finished.sort(key=lambda t: (t[0], tuple(t[1])))
    worst = max((t[2] / (1.0 + abs(t[0])) for t in finished), default=0.0)
    if worst > tol.residual:
        raise ConvergenceError(
            f"pencil eigenpair residual {worst:.3e} exceeds {tol.residual:.3e}"
        )
    return GenEigResult(
        finite_eigenvalues=tuple(t[0] for t in finished),
        eigenvectors=tuple(t[1] for t in finished),
        infinite_count=infinite_count,
        residuals=tuple(t[2] for t in finished),
    )


def gen_eigen_definite(
    pencil: SymPencil, tol: Tolerances = DEFAULT_TOLERANCES
) -> GenEigResult:
    """Solve det(lambda*A - B) = 0 for positive definite A.

    Congruence by the Cholesky factor of A turns the pencil into the
    ordinary symmetric problem for L^-1 B L^-T; eigenvalues carry over,
    eigenvectors return through L^-T.

    Both matrices are first rescaled by diag(A)^(-1/2) on each side, which
    leaves the pencil eigenvalues untouched (it is a congruence applied to
    the whole pencil) but takes the condition number of Hankel moment
    matrices down by many orders of magnitude; without it the exponential
    preset is unusable past d = 5 or so.
    """
    diag = np.diag(pencil.A)
    if float(np.min(diag)) > 0.0:
        scale = 1.0 / np.sqrt(diag)
    else:
        scale = np.ones_like(diag)
    balance = np.outer(scale, scale)
    low = cholesky(pencil.A * balance, tol)
    b2 = pencil.B * balance
    c = np.linalg.solve(low, np.linalg.solve(low, b2).T)
    vals, vecs = sym_eigen((c + c.T) / 2.0, tol)
    pairs = []
    for i in range(len(vals)):
        v = scale * np.linalg.solve(low.T, vecs[:, i])
        pairs.append((float(vals[i]), v))
    return _assemble(pairs, pencil, infinite_count=0, tol=tol)


def gen_eigen_semidefinite(
    pencil: SymPencil, tol: Tolerances = DEFAULT_TOLERANCES
) -> GenEigResult:
    """Solve det(lambda*A - B) = 0 for positive semidefinite A.

    The null space of A is deflated explicitly: in the eigenbasis of A the
    pencil splits into blocks, the null-null block of B is inverted away by
    a Schur complement, and what remains is a definite pencil on range(A).
    Each deflated direction is one infinite eigenvalue.

    Raises IndefinitePencilError when A has a genuinely negative eigenvalue
    and SingularDeflationError when B is singular on null(A) (the pencil
    then has higher-order structure at infinity that plain deflation cannot
    resolve; for the pencils built here that singularity has meaning the
    caller knows how to interpret).

    As in the definite solver, both matrices pass through a diagonal
    balancing congruence first.  This matters for the rank decision, not
    just accuracy: the bordered representation matrices mix entries of
    order 1e7 with moment blocks whose honest small eigenvalues sit near
    1e-7, and against the unbalanced maximum those directions would be
    misread as null space.  Zero diagonal entries keep scale one; for a
    semidefinite matrix those rows are entirely zero anyway.
    """
    diag = np.diag(pencil.A)
    positive = diag > 0.0
    scale = np.where(positive, 1.0 / np.sqrt(np.where(positive, diag, 1.0)), 1.0)
    balance = np.outer(scale, scale)
    a2 = symmetrize(pencil.A * balance)
    b2 = symmetrize(pencil.B * balance)
    a_vals, a_vecs = sym_eigen(a2, tol)
    vals_scale = 1.0 + float(np.max(np.abs(a_vals))) if a_vals.size else 1.0
    cut = tol.rank * vals_scale
    if a_vals.size and float(a_vals[0]) < -cut:
        raise IndefinitePencilError(
            f"leading matrix has negative eigenvalue {float(a_vals[0]):.3e}"
        )
    keep = a_vals > cut
    nullity = int(np.count_nonzero(~keep))
    if nullity == 0:
        return gen_eigen_definite(pencil, tol)

    null_basis = a_vecs[:, ~keep]
    range_basis = a_vecs[:, keep]
    b_nn = symmetrize(null_basis.T @ b2 @ null_basis)
    nn_vals = np.linalg.eigvalsh(b_nn)
    nn_scale = 1.0 + float(np.max(np.abs(nn_vals)))
    if float(np.min(np.abs(nn_vals))) <= tol.rank * nn_scale:
        raise SingularDeflationError(
            "trailing matrix is singular on the null space of the leading one"
        )
    if nullity == pencil.dimension:
        return GenEigResult((), (), infinite_count=nullity)

    b_rn = range_basis.T @ b2 @ null_basis
    a_red = symmetrize(range_basis.T @ a2 @ range_basis)
    b_red = symmetrize(
        range_basis.T @ b2 @ range_basis - b_rn @ np.linalg.solve(b_nn, b_rn.T)
    )
    reduced = gen_eigen_definite(SymPencil(a_red, b_red, "positive_definite"), tol)
    pairs = []
    for lam, u in zip(reduced.finite_eigenvalues, reduced.eigenvectors):
        w = -np.linalg.solve(b_nn, b_rn.T @ u)
        pairs.append((lam, scale * (range_basis @ u + null_basis @ w)))
    return _assemble(pairs, pencil, infinite_count=nullity, tol=tol)


def determinant(a: np.ndarray) -> float:
    return float(np.linalg.det(np.asarray(a, dtype=float)))


def kernel_vector(a: np.ndarray, tol_value: float) -> np.ndarray | None:
    """Unit vector v with A@v near zero, or None when A is comfortably
    invertible.  v is the eigenvector of the smallest-magnitude eigenvalue,
    accepted iff |eigenvalue| <= tol_value * (1 + largest |eigenvalue|)."""
    vals, vecs = sym_eigen(a)
    idx = int(np.argmin(np.abs(vals)))
    scale = 1.0 + float(np.max(np.abs(vals)))
    if abs(float(vals[idx])) > tol_value * scale:
        return None
    return canonical_sign(vecs[:, idx])


def kernel_dimension(a: np.ndarray, tol_value: float) -> int:
    """Number of eigenvalues within tol_value * (1 + largest |eigenvalue|)."""
    vals = np.linalg.eigvalsh(symmetrize(a))
    scale = 1.0 + float(np.max(np.abs(vals)))
    return int(np.count_nonzero(np.abs(vals) <= tol_value * scale))


def solve_linear(
    a: np.ndarray, b: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES
) -> np.ndarray:
    """Solve the square system A x = b with a residual acceptance check."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"square solve failed: {exc}") from None
    scale = 1.0 + float(np.linalg.norm(a)) * float(np.linalg.norm(x)) + float(
        np.linalg.norm(b)
    )
    residual = float(np.linalg.norm(a @ x - b))
    if residual > tol.residual * scale:
        raise SingularSystemError(
            f"solve residual {residual:.3e} exceeds {tol.residual * scale:.3e}"
        )
    return x


def least_squares(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Minimize ||A x - b||; returns the minimizer and the residual norm."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ x - b))
    return x, residual
