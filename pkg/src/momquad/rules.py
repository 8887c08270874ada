"""Quadrature rule construction from moment sequences.

A rule of degree D integrates every polynomial of degree at most D exactly:
sum of w_i * (value of f at node i) = m-weighted integral, where a node at
infinity contributes the coefficient of t^D instead of a value.

Constructions implemented here, all reducing node-finding to symmetric
eigenvalue problems built from Hankel moment matrices:

* odd degree 2d+1: the classical minimal rule; nodes are the eigenvalues of
  the pencil (M_d, M_d') of the plain and once-shifted moment matrices.
* even degree 2d through a prescribed node y: the minimal rules of even
  degree form a one-parameter family, one rule through every point of the
  extended real line.  Two routes to the same node set are provided:
  - the bilinear route, via the d x d matrix
        M(x, y) = xy*M - (x+y)*M' + M''
    whose determinant F(x, y) vanishes exactly when x and y are nodes of a
    common rule.  Fixing y and shifting by x = y - 1/lambda turns the node
    condition into a definite eigenproblem with leading matrix M(y, y).
  - the linear-representation route, via a (2d+1) x (2d+1) symmetric matrix
    pencil linear in x whose determinant equals (x - y) * F(x, y) up to a
    constant; its x-coefficient is positive semidefinite of rank d+1, so a
    deflating eigensolver returns the d+1 nodes directly.
* even degree 2d with a node at infinity: the unique member of the family
  through infinity; finite nodes are the roots of
        F_inf(x) = det(x*M - M')
  and the infinite node's weight is the determinant ratio det(M_d)/det(M_{d-1}).

Every constructor ends with weight recovery by least squares over the full
moment system, which doubles as an exactness check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances, format_number
from .errors import (
    ConditioningWarning,
    CrossCheckError,
    DegenerateMomentsError,
    NonPositiveWeightError,
    RepeatedInfinityError,
    RepeatedRootError,
    ResidualTooLargeError,
    SingularDeflationError,
)
from .moments import MomentSequence, hankel_shifted, nondegeneracy_check
from .poly import (
    INFINITY,
    Node,
    Polynomial,
    determinant_polynomial,
    merge_close,
    node_sort_key,
    poly_from_roots,
    roots_to_nodes,
)
from .symlin import SymPencil, determinant, gen_eigen_definite, gen_eigen_semidefinite

__all__ = [
    "QuadratureRule",
    "EvenFamily",
    "VerificationReport",
    "CurvePoint",
    "even_family",
    "gaussian_odd",
    "bilinear_matrix",
    "bilinear_det",
    "even_rule_through",
    "linear_rep_matrix",
    "linear_rep_x_coefficient",
    "even_rule_linear",
    "infinity_polynomial",
    "infinity_rule",
    "weights_for_nodes",
    "rule_for_nodes",
    "verify_rule",
    "curve_sample",
    "rule_to_text",
    "rule_from_text",
    "nodes_agree",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes with positive weights, exact for polynomials up to `degree`.

    max_residual records the worst moment-matching error measured when the
    rule was built (or parsed); it is data, not a promise, and verify_rule
    recomputes the real thing.
    """

    degree: int
    nodes: tuple[Node, ...]
    weights: tuple[float, ...]
    max_residual: float

    def __post_init__(self):
        if len(self.nodes) != len(self.weights):
            raise ValueError("need exactly one weight per node")
        if len(self.nodes) == 0:
            raise ValueError("a rule needs at least one node")
        if any(w <= 0.0 for w in self.weights):
            raise ValueError("rule weights must be positive")
        if sum(1 for n in self.nodes if n.is_infinite) > 1:
            raise RepeatedInfinityError("a rule holds at most one infinite node")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("rule nodes must be distinct")

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def has_infinity(self) -> bool:
        return any(n.is_infinite for n in self.nodes)

    def finite_values(self) -> list[float]:
        return [n.value for n in self.nodes if not n.is_infinite]


@dataclass(frozen=True, eq=False)
class EvenFamily:
    """Shared data of the degree-2d family: the three d x d Hankel windows
    and the determinants entering the linear representation.

    rep_scale is the constant c with (x - y) * F(x, y) = c * det of the
    linear-representation matrix; c = (-1)^d det(M_d) / det(M_{d-1})^2.
    """

    d: int
    base: np.ndarray
    shifted: np.ndarray
    shifted2: np.ndarray
    det_full: float
    det_base: float
    rep_scale: float


def _refuse_degenerate(seq: MomentSequence, degree: int, tol: Tolerances) -> None:
    check = nondegeneracy_check(seq, degree, tol)
    if not check.nondegenerate:
        raise DegenerateMomentsError(
            f"moment matrix of degree {degree} is singular "
            f"(det {check.det_value:.3e}, threshold {check.threshold:.3e})"
        )


def _warn_if_ill_conditioned(matrix: np.ndarray, tol: Tolerances, label: str) -> None:
    cond = float(np.linalg.cond(matrix))
    if cond > tol.conditioning:
        warnings.warn(
            f"{label} has condition number {cond:.3e}; results may be inaccurate",
            ConditioningWarning,
            stacklevel=3,
        )


def even_family(
    seq: MomentSequence, d: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> EvenFamily:
    """Assemble the degree-2d family data; refuses degenerate sequences."""
    if d < 1:
        raise ValueError("d must be >= 1")
    seq.require(2 * d)
    _refuse_degenerate(seq, d, tol)
    _refuse_degenerate(seq, d - 1, tol)
    full = hankel_shifted(seq, d + 1, 0)
    base = hankel_shifted(seq, d, 0)
    _warn_if_ill_conditioned(full, tol, f"moment matrix of degree {d}")
    det_full = determinant(full)
    det_base = determinant(base)
    return EvenFamily(
        d=d,
        base=base,
        shifted=hankel_shifted(seq, d, 1),
        shifted2=hankel_shifted(seq, d, 2),
        det_full=det_full,
        det_base=det_base,
        rep_scale=(-1.0) ** d * det_full / det_base**2,
    )


def _scaled_lstsq(system: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Least squares after equilibration: rows divided by the moment size,
    columns by their norms.

    The raw evaluation matrix mixes magnitudes across fifteen orders for
    heavy-tailed sequences (node powers up to x^16 against m_16), and a
    plain lstsq then truncates exactly the columns carrying the small tail
    weights.  Scaling makes the solve minimize per-degree relative error.
    """
    row = 1.0 / (1.0 + np.abs(target))
    scaled = system * row[:, None]
    col = 1.0 / np.maximum(np.linalg.norm(scaled, axis=0), 1e-300)
    solution, *_ = np.linalg.lstsq(scaled * col[None, :], target * row, rcond=None)
    return solution * col


def _check_node_set(degree: int, nodes) -> None:
    if len(nodes) == 0:
        raise ValueError("need at least one node")
    if len(set(nodes)) != len(nodes):
        raise ValueError("nodes must be distinct")
    if len(nodes) > degree + 1:
        raise ValueError(f"{len(nodes)} nodes exceed degree {degree} + 1 equations")


def _gate_weights(
    system: np.ndarray, target: np.ndarray, solution: np.ndarray, tol: Tolerances
) -> list[float]:
    """Shared acceptance gates for recovered weights."""
    residual = float(np.linalg.norm(system @ solution - target))
    allowed = tol.residual * (1.0 + float(np.linalg.norm(target)))
    if residual > allowed:
        raise ResidualTooLargeError(
            f"moment-match residual {residual:.3e} exceeds {allowed:.3e}; "
            "the node set cannot reproduce the moments"
        )
    # The floor scales with the total mass m_0, not with the largest moment:
    # weights at extreme nodes are legitimately tiny (they carry the measure's
    # tail), while high moments can be huge.  With the default positivity of
    # zero this is a strict w > 0 test.
    floor = tol.positivity * (1.0 + abs(float(target[0])))
    for i, w in enumerate(solution):
        if w <= floor:
            raise NonPositiveWeightError(i, float(w))
    return [float(w) for w in solution]


def weights_for_nodes(
    seq: MomentSequence,
    degree: int,
    nodes: list[Node] | tuple[Node, ...],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[float]:
    """Weights making the node set a rule of the given degree, by least
    squares over all degree+1 moment equations.

    Raises ResidualTooLargeError when no weights can match the moments
    (the node set is simply wrong) and NonPositiveWeightError when the
    best match needs a nonpositive weight (the node set admits no rule).
    """
    _check_node_set(degree, nodes)
    seq.require(degree)
    system = _evaluation_matrix(degree, nodes)
    target = seq.as_array()[: degree + 1]
    return _gate_weights(system, target, _scaled_lstsq(system, target), tol)


def _evaluation_matrix(degree: int, nodes: list[Node] | tuple[Node, ...]) -> np.ndarray:
    """Rows k = 0..degree, one column per node, entries ev_node(t^k)."""
    out = np.zeros((degree + 1, len(nodes)))
    for j, node in enumerate(nodes):
        if node.is_infinite:
            out[degree, j] = 1.0
        else:
            out[:, j] = np.power(node.value, np.arange(degree + 1))
    return out


def _moment_residuals(
    seq: MomentSequence, degree: int, nodes, weights
) -> np.ndarray:
    system = _evaluation_matrix(degree, list(nodes))
    target = seq.as_array()[: degree + 1]
    return np.abs(system @ np.asarray(weights, dtype=float) - target)


def _refined(
    degree: int,
    nodes: list[Node],
    weights: np.ndarray,
    target: np.ndarray,
    pinned: frozenset[float],
    max_steps: int = 6,
) -> tuple[list[Node], np.ndarray]:
    """Damped Gauss-Newton polish of node positions and weights against the
    moment equations.

    Eigenvalue-based node estimates carry the conditioning of the Hankel
    pencil; a few Newton corrections on the (well-posed near the solution)
    moment system recover the digits the pencil lost.  Positions in `pinned`
    and the infinite node never move.  A step is accepted only when it
    lowers the residual and keeps the nodes separated, so on already
    converged inputs this is a no-op and it can never invent a rule where
    the start was not essentially one.
    """
    powers = np.arange(degree + 1, dtype=float)
    values = np.array([0.0 if n.is_infinite else n.value for n in nodes])
    free = np.array(
        [not n.is_infinite and n.value not in pinned for n in nodes], dtype=bool
    )
    row = 1.0 / (1.0 + np.abs(target))

    def build(vals: np.ndarray) -> np.ndarray:
        out = np.zeros((degree + 1, len(nodes)))
        for j, node in enumerate(nodes):
            if node.is_infinite:
                out[degree, j] = 1.0
            else:
                out[:, j] = vals[j] ** powers
        return out

    def residual_norm(vals: np.ndarray, w: np.ndarray) -> float:
        return float(np.linalg.norm((build(vals) @ w - target) * row))

    def separated(vals: np.ndarray) -> bool:
        finite = np.sort(vals[[not n.is_infinite for n in nodes]])
        if finite.size < 2:
            return True
        gap = float(np.min(np.diff(finite)))
        return gap > 1e-12 * (1.0 + float(np.max(np.abs(finite))))

    vals = values.copy()
    w = np.asarray(weights, dtype=float).copy()
    best = residual_norm(vals, w)
    n_free = int(np.count_nonzero(free))
    for _ in range(max_steps):
        system = build(vals)
        r = system @ w - target
        deriv = np.zeros_like(system)
        for j, node in enumerate(nodes):
            if free[j]:
                deriv[1:, j] = powers[1:] * vals[j] ** (powers[1:] - 1.0)
        jac = np.hstack([(deriv * w[None, :])[:, free], system]) * row[:, None]
        col = 1.0 / np.maximum(np.linalg.norm(jac, axis=0), 1e-300)
        step, *_ = np.linalg.lstsq(jac * col[None, :], -(r * row), rcond=None)
        step *= col
        damping = 1.0
        accepted = False
        for _ in range(8):
            trial_vals = vals.copy()
            trial_vals[free] += damping * step[:n_free]
            trial_w = w + damping * step[n_free:]
            if separated(trial_vals):
                trial_res = residual_norm(trial_vals, trial_w)
                # Demand real progress: micro-improvements at the round-off
                # floor would otherwise smear nodes that start out exact
                # (an eigenvalue of 0.0 drifting to 5e-17).
                if trial_res < 0.9 * best:
                    vals, w, best = trial_vals, trial_w, trial_res
                    accepted = True
                    break
            damping *= 0.5
        if not accepted:
            break
    polished = [
        n if n.is_infinite or not f else Node(float(v))
        for n, v, f in zip(nodes, vals, free)
    ]
    return polished, w


def rule_for_nodes(
    seq: MomentSequence,
    degree: int,
    nodes: list[Node] | tuple[Node, ...],
    tol: Tolerances = DEFAULT_TOLERANCES,
    pinned: tuple[float, ...] = (),
) -> QuadratureRule:
    """Complete a node set into a rule: sort, recover weights by scaled
    least squares, polish with a Gauss-Newton pass over the moment
    equations, and measure the worst residual.

    Node positions listed in `pinned` are held fixed during the polish
    (a prescribed node of an even rule stays exactly where it was asked
    for); everything else may move by the little the polish wants.
    """
    ordered = sorted(nodes, key=node_sort_key)
    _check_node_set(degree, ordered)
    seq.require(degree)
    target = seq.as_array()[: degree + 1]
    initial = _scaled_lstsq(_evaluation_matrix(degree, ordered), target)
    polished, raw_weights = _refined(
        degree, ordered, initial, target, frozenset(pinned)
    )
    system = _evaluation_matrix(degree, polished)
    weights = _gate_weights(system, target, raw_weights, tol)
    residual = float(np.max(np.abs(system @ np.asarray(weights) - target)))
    return QuadratureRule(degree, tuple(polished), tuple(weights), residual)


def gaussian_odd(
    seq: MomentSequence, d: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> QuadratureRule:
    """Minimal rule of odd degree 2d+1: d+1 real nodes, no infinite node.

    The nodes are the solutions of det(x*M_d - M_d') = 0, a definite
    generalized eigenproblem since M_d is positive definite for a
    non-degenerate sequence.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    seq.require(2 * d + 1)
    _refuse_degenerate(seq, d, tol)
    full = hankel_shifted(seq, d + 1, 0)
    _warn_if_ill_conditioned(full, tol, f"moment matrix of degree {d}")
    pencil = SymPencil(full, hankel_shifted(seq, d + 1, 1), "positive_definite")
    eig = gen_eigen_definite(pencil, tol)
    nodes = [Node(v) for v in merge_close(list(eig.finite_eigenvalues), tol)]
    return rule_for_nodes(seq, 2 * d + 1, nodes, tol)


def bilinear_matrix(fam: EvenFamily, x: float, y: float) -> np.ndarray:
    """The d x d matrix M(x, y) = xy*M - (x+y)*M' + M''. Symmetric in x, y."""
    return x * y * fam.base - (x + y) * fam.shifted + fam.shifted2


def bilinear_det(fam: EvenFamily, x: float, y: float) -> float:
    """F(x, y): zero exactly when x and y are nodes of a common degree-2d
    rule; positive on the diagonal."""
    return determinant(bilinear_matrix(fam, x, y))


def even_rule_through(
    seq: MomentSequence, d: int, y: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> QuadratureRule:
    """The unique degree-2d rule with d+1 nodes one of which is y.

    Works in the shifted variable lambda = 1/(y - x): lambda solves the
    definite problem det(lambda*M(y,y) - (y*M - M')) = 0, and each solution
    gives the node x = y - 1/lambda, with lambda near zero meaning the node
    escaped to infinity.  The shift is what makes the leading matrix M(y,y)
    positive definite regardless of y.
    """
    fam = even_family(seq, d, tol)
    lead = bilinear_matrix(fam, y, y)
    trail = y * fam.base - fam.shifted
    pencil = SymPencil(lead, trail, "positive_definite")
    eig = gen_eigen_definite(pencil, tol)
    cutoff = tol.infinity * (
        1.0 + float(np.linalg.norm(trail)) / (1.0 + float(np.linalg.norm(lead)))
    )
    finite = [y - 1.0 / lam for lam in eig.finite_eigenvalues if abs(lam) > cutoff]
    escaped = len(eig.finite_eigenvalues) - len(finite)
    if escaped > 1:
        raise RepeatedInfinityError(
            f"{escaped} eigenvalues vanish; more than one node at infinity"
        )
    nodes = [Node(v) for v in merge_close(finite + [y], tol)]
    if escaped:
        nodes.append(INFINITY)
    return rule_for_nodes(seq, 2 * d, nodes, tol, pinned=(y,))


def linear_rep_matrix(fam: EvenFamily, x: float, y: float) -> np.ndarray:
    """The (2d+1) x (2d+1) symmetric matrix whose determinant represents
    (x - y) * F(x, y) / rep_scale.

    Layout: scalar corner (det M_{d-1} / det M_d)(x - y), bordered by two
    copies of the last standard basis vector, then diagonal blocks
    x*M - M' and -(y*M - M')."""
    d = fam.d
    out = np.zeros((2 * d + 1, 2 * d + 1))
    out[0, 0] = fam.det_base / fam.det_full * (x - y)
    out[0, d] = out[d, 0] = 1.0
    out[0, 2 * d] = out[2 * d, 0] = 1.0
    out[1 : d + 1, 1 : d + 1] = x * fam.base - fam.shifted
    out[d + 1 :, d + 1 :] = fam.shifted - y * fam.base
    return out


def linear_rep_x_coefficient(fam: EvenFamily) -> np.ndarray:
    """Coefficient of x in the linear-representation matrix: a positive
    semidefinite matrix of rank d+1 (the corner scalar plus one M block)."""
    d = fam.d
    out = np.zeros((2 * d + 1, 2 * d + 1))
    out[0, 0] = fam.det_base / fam.det_full
    out[1 : d + 1, 1 : d + 1] = fam.base
    return out


def even_rule_linear(
    seq: MomentSequence, d: int, y: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[Node]:
    """Nodes of the degree-2d rule through y, via the linear representation.

    Splits the representation matrix as x*A - B and hands the semidefinite
    pencil to the deflating eigensolver; the d+1 finite eigenvalues are the
    nodes (y itself among them, through the x - y factor).  When the
    deflation is blocked (exactly the case where the rule has a node at
    infinity) the determinant polynomial is expanded by interpolation
    instead and its degree drop supplies the infinite node.
    """
    fam = even_family(seq, d, tol)
    lead = linear_rep_x_coefficient(fam)
    trail = -linear_rep_matrix(fam, 0.0, y)
    pencil = SymPencil(lead, trail, "positive_semidefinite")
    try:
        eig = gen_eigen_semidefinite(pencil, tol)
    except SingularDeflationError:
        poly = determinant_polynomial(lead, trail, degree=d + 1)
        return sorted(roots_to_nodes(poly, d + 1, tol), key=node_sort_key)
    finite = merge_close(list(eig.finite_eigenvalues), tol)
    nodes = sorted((Node(v) for v in finite), key=node_sort_key)
    missing = d + 1 - len(nodes)
    if missing > 1:
        raise RepeatedInfinityError(
            f"representation lost {missing} nodes; at most one may be infinite"
        )
    if missing == 1:
        nodes.append(INFINITY)
    return nodes


def infinity_polynomial(
    seq: MomentSequence, d: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> Polynomial:
    """F_inf(x) = det(x*M_{d-1} - M_{d-1}'), normalized so its leading
    coefficient is det(M_{d-1}); its roots are the finite nodes of the
    degree-2d rule through infinity."""
    if d < 1:
        raise ValueError("d must be >= 1")
    seq.require(2 * d - 1)
    _refuse_degenerate(seq, d - 1, tol)
    base = hankel_shifted(seq, d, 0)
    pencil = SymPencil(base, hankel_shifted(seq, d, 1), "positive_definite")
    eig = gen_eigen_definite(pencil, tol)
    monic = poly_from_roots(list(eig.finite_eigenvalues), d)
    det_base = determinant(base)
    return Polynomial(tuple(det_base * c for c in monic.coefficients))


def infinity_rule(
    seq: MomentSequence, d: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> QuadratureRule:
    """The degree-2d rule with a node at infinity.

    The infinite node's weight has a closed form, det(M_d)/det(M_{d-1});
    it is computed both ways (determinant ratio and least squares) and the
    two must agree.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    seq.require(2 * d)
    _refuse_degenerate(seq, d, tol)
    _refuse_degenerate(seq, d - 1, tol)
    base = hankel_shifted(seq, d, 0)
    _warn_if_ill_conditioned(hankel_shifted(seq, d + 1, 0), tol, f"moment matrix of degree {d}")
    pencil = SymPencil(base, hankel_shifted(seq, d, 1), "positive_definite")
    eig = gen_eigen_definite(pencil, tol)
    roots = list(eig.finite_eigenvalues)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        try:
            merged = merge_close(roots, tol)
        except Warning:
            raise RepeatedRootError(
                "finite nodes of the infinity rule are not simple; "
                "the sequence sits too close to degeneracy"
            ) from None
    nodes = [Node(v) for v in merged] + [INFINITY]
    rule = rule_for_nodes(seq, 2 * d, nodes, tol)
    w_det = determinant(hankel_shifted(seq, d + 1, 0)) / determinant(base)
    w_lsq = rule.weights[-1]
    if abs(w_det - w_lsq) > 1e-8 * (1.0 + abs(w_det)):
        raise CrossCheckError(
            f"infinite-node weight disagrees: determinant ratio {w_det!r} "
            f"vs least squares {w_lsq!r}"
        )
    return rule


@dataclass(frozen=True)
class VerificationReport:
    """Per-degree exactness residuals for a rule against a sequence."""

    residuals: tuple[float, ...]
    max_residual: float
    threshold: float
    passed: bool
    first_failure: int | None

    def __str__(self) -> str:
        status = "pass" if self.passed else f"FAIL at degree {self.first_failure}"
        return (
            f"{status}: max residual {format_number(self.max_residual)} "
            f"(threshold {format_number(self.threshold)})"
        )


def verify_rule(
    seq: MomentSequence, rule: QuadratureRule, tol: Tolerances = DEFAULT_TOLERANCES
) -> VerificationReport:
    """Recompute every moment-matching residual of the rule from scratch."""
    seq.require(rule.degree)
    residuals = _moment_residuals(seq, rule.degree, rule.nodes, rule.weights)
    target = seq.as_array()[: rule.degree + 1]
    threshold = tol.verify * (1.0 + float(np.max(np.abs(target))))
    failing = np.nonzero(residuals > threshold)[0]
    return VerificationReport(
        residuals=tuple(float(r) for r in residuals),
        max_residual=float(np.max(residuals)),
        threshold=threshold,
        passed=failing.size == 0,
        first_failure=int(failing[0]) if failing.size else None,
    )


@dataclass(frozen=True)
class CurvePoint:
    """One grid sample: both determinants and the bilinear matrix inertia."""

    x: float
    y: float
    f_value: float
    rep_det: float
    inertia: tuple[int, int, int]


def curve_sample(
    fam: EvenFamily,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    steps: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[CurvePoint]:
    """Evaluate F, the representation determinant, and the inertia of
    M(x, y) on a steps x steps grid, row-major with x as the outer loop."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    xs = np.linspace(x_range[0], x_range[1], steps)
    ys = np.linspace(y_range[0], y_range[1], steps)
    out = []
    for x in xs:
        for y in ys:
            m = bilinear_matrix(fam, float(x), float(y))
            vals = np.linalg.eigvalsh(m)
            cut = tol.rank * (1.0 + float(np.max(np.abs(vals))))
            pos = int(np.count_nonzero(vals > cut))
            neg = int(np.count_nonzero(vals < -cut))
            out.append(
                CurvePoint(
                    x=float(x),
                    y=float(y),
                    f_value=float(np.linalg.det(m)),
                    rep_det=determinant(linear_rep_matrix(fam, float(x), float(y))),
                    inertia=(pos, neg, len(vals) - pos - neg),
                )
            )
    return out


def nodes_agree(
    a: list[Node] | tuple[Node, ...],
    b: list[Node] | tuple[Node, ...],
    tol_value: float,
) -> bool:
    """Same node multiset up to tol_value*(1+|node|) on the finite part."""
    if len(a) != len(b):
        return False
    sa = sorted(a, key=node_sort_key)
    sb = sorted(b, key=node_sort_key)
    for na, nb in zip(sa, sb):
        if na.is_infinite != nb.is_infinite:
            return False
        if not na.is_infinite:
            scale = 1.0 + max(abs(na.value), abs(nb.value))
            if abs(na.value - nb.value) > tol_value * scale:
                return False
    return True


def rule_to_text(rule: QuadratureRule) -> str:
    """Stable text form: degree line, one `real,<node>,<weight>` or
    `infinity,,<weight>` line per node, then the construction residual."""
    lines = [f"degree,{rule.degree}"]
    for node, weight in zip(rule.nodes, rule.weights):
        if node.is_infinite:
            lines.append(f"infinity,,{format_number(weight)}")
        else:
            lines.append(f"real,{format_number(node.value)},{format_number(weight)}")
    lines.append(f"max_residual,{format_number(rule.max_residual)}")
    return "\n".join(lines) + "\n"


def rule_from_text(text: str) -> QuadratureRule:
    """Parse the rule_to_text format; `#` lines are comments."""
    degree: int | None = None
    max_residual = 0.0
    nodes: list[Node] = []
    weights: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        try:
            if parts[0] == "degree" and len(parts) == 2:
                degree = int(parts[1])
            elif parts[0] == "max_residual" and len(parts) == 2:
                max_residual = float(parts[1])
            elif parts[0] == "real" and len(parts) == 3:
                nodes.append(Node(float(parts[1])))
                weights.append(float(parts[2]))
            elif parts[0] == "infinity" and len(parts) == 3 and parts[1] == "":
                nodes.append(INFINITY)
                weights.append(float(parts[2]))
            else:
                raise ValueError(f"unrecognized record {parts[0]!r}")
        except ValueError as exc:
            raise ValueError(f"rule line {lineno}: {exc}") from None
    if degree is None:
        raise ValueError("rule text is missing the degree line")
    if not nodes:
        raise ValueError("rule text has no node lines")
    return QuadratureRule(degree, tuple(nodes), tuple(weights), max_residual)
