"""Feasibility of rules with several prescribed nodes.

Given n-1 prescribed real nodes and moments through degree n+2*l, does a
rule of degree n+2*l with n+l nodes containing the prescription exist?

The necessary condition: writing e_k for the elementary symmetric
polynomials of all n node candidates (the prescribed ones plus one free
node x), the (l+1) x (l+1) matrix

    sum over k of (+/-) e_k * H_k,   H_k the Hankel window of shift n-k,

must be singular.  Since e_k of the full set is linear in x, the condition
is a symmetric matrix pencil in x and its determinant a polynomial of
degree at most l+1: the free node must be one of finitely many real roots.

The condition is not sufficient for n > 2, so each candidate is completed
and checked: a kernel vector of the singular matrix, read as a polynomial
in the basis 1, t, ..., t^l, supplies the remaining l nodes (degree
deficiency meaning a node at infinity), and weight recovery over the full
moment system either produces a verified rule or fails in a way that rules
the candidate out.  The verdict is "feasible" when some candidate yields a
rule, "infeasible" when every candidate dies a definite death with clean
numerics, and "inconclusive" when numerical warnings tainted the search.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances, format_number
from .errors import (
    ComplexRootsError,
    DegenerateMomentsError,
    NonPositiveWeightError,
    NotPositiveDefiniteError,
    NumericalWarning,
    RepeatedInfinityError,
    ResidualTooLargeError,
    ZeroPolynomialError,
)
from .moments import MomentSequence, hankel_shifted, nondegeneracy_check
from .poly import (
    INFINITY,
    Node,
    Polynomial,
    determinant_polynomial,
    elementary_symmetric,
    merge_close,
    node_sort_key,
    real_roots,
    roots_to_nodes,
)
from .rules import QuadratureRule, rule_for_nodes, verify_rule
from .symlin import (
    SymPencil,
    gen_eigen_definite,
    kernel_dimension,
    kernel_vector,
    symmetrize,
)

__all__ = [
    "MultiNodeProblem",
    "CandidateOutcome",
    "FeasibilityReport",
    "multinode_matrix",
    "multinode_pencil",
    "multinode_candidates",
    "multinode_solve",
    "report_to_text",
    "DEFINITE_FAILURES",
]

# Outcome codes that certify "this candidate admits no rule" (as opposed to
# outcomes that merely mean the numerics could not decide).
DEFINITE_FAILURES = frozenset(
    {
        "non_positive_weight",
        "residual_too_large",
        "complex_kernel_roots",
        "repeated_infinity",
        "no_kernel",
    }
)


@dataclass(frozen=True)
class MultiNodeProblem:
    """n-1 prescribed nodes, seeking an (n+l)-node rule of degree n+2*l."""

    n: int
    l: int
    fixed_nodes: tuple[float, ...]
    seq: MomentSequence
    separation: float = 1e-8

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if len(self.fixed_nodes) != self.n - 1:
            raise ValueError(
                f"expected {self.n - 1} prescribed nodes, got {len(self.fixed_nodes)}"
            )
        ordered = sorted(self.fixed_nodes)
        for a, b in zip(ordered, ordered[1:]):
            if abs(b - a) <= self.separation * (1.0 + max(abs(a), abs(b))):
                raise ValueError(f"prescribed nodes {a!r} and {b!r} coincide")
        self.seq.require(self.degree)

    @property
    def degree(self) -> int:
        return self.n + 2 * self.l


def multinode_matrix(
    prob: MultiNodeProblem, all_nodes: list[float] | tuple[float, ...]
) -> np.ndarray:
    """The singularity-test matrix at a full set of n nodes.

    Signs are arranged so that n=1 gives x*M - M' (the odd-degree Gaussian
    pencil) and n=2 gives the bilinear matrix of the even family; this is
    the alternating elementary-symmetric sum up to an overall sign that the
    vanishing condition does not see.
    """
    if len(all_nodes) != prob.n:
        raise ValueError(f"expected {prob.n} nodes, got {len(all_nodes)}")
    e = elementary_symmetric(all_nodes)
    out = np.zeros((prob.l + 1, prob.l + 1))
    for k in range(prob.n + 1):
        sign = (-1.0) ** (prob.n - k)
        out += sign * e[k] * hankel_shifted(prob.seq, prob.l + 1, prob.n - k)
    return symmetrize(out)


def multinode_pencil(prob: MultiNodeProblem) -> SymPencil:
    """The same matrix as a pencil x*A - B in the one free node.

    Uses e_k(all) = e_k(prescribed) + x * e_{k-1}(prescribed) to split the
    sum; A collects the x-linear part, B the rest.
    """
    e = elementary_symmetric(prob.fixed_nodes)
    size = prob.l + 1
    a = np.zeros((size, size))
    b = np.zeros((size, size))
    for k in range(1, prob.n + 1):
        a += (-1.0) ** (prob.n - k) * e[k - 1] * hankel_shifted(
            prob.seq, size, prob.n - k
        )
    for k in range(prob.n):
        b -= (-1.0) ** (prob.n - k) * e[k] * hankel_shifted(prob.seq, size, prob.n - k)
    return SymPencil(a, b, "unknown")


def multinode_candidates(
    prob: MultiNodeProblem, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[float]:
    """Real values of the free node satisfying the necessary condition,
    ascending.

    Definite pencils go through the symmetric eigensolver; indefinite ones
    (the usual case for n >= 2) through explicit expansion of the
    determinant polynomial.
    """
    pencil = multinode_pencil(prob)
    try:
        return [float(v) for v in gen_eigen_definite(pencil, tol).finite_eigenvalues]
    except NotPositiveDefiniteError:
        pass
    # An identically-singular pencil (vacuous necessary condition) is
    # detected by rank probes at generic points rather than by the size of
    # the expanded coefficients: determinants of near-singular Hankel
    # pencils are legitimately many orders below norm**dim, so no
    # coefficient-magnitude threshold separates the two cases.
    probes = (0.3183098861837907, -1.618033988749895, 2.718281828459045)
    vacuous = True
    for x0 in probes:
        sv = np.linalg.svd(x0 * pencil.A - pencil.B, compute_uv=False)
        if sv[0] > 0.0 and sv[-1] > tol.rank * pencil.dimension * sv[0]:
            vacuous = False
            break
    if vacuous:
        raise ZeroPolynomialError(
            "pencil determinant vanishes identically; the prescribed nodes "
            "make the necessary condition vacuous"
        )
    poly = determinant_polynomial(pencil.A, pencil.B, degree=prob.l + 1)
    return real_roots(poly, tol)


@dataclass(frozen=True)
class CandidateOutcome:
    """What happened when one candidate free node was completed."""

    x: float
    kernel_nodes: tuple[Node, ...]
    outcome: str
    margin: float
    detail: str = ""
    rule: QuadratureRule | None = None


@dataclass(frozen=True)
class FeasibilityReport:
    verdict: str
    candidates: tuple[CandidateOutcome, ...]
    rules_found: tuple[QuadratureRule, ...]
    warnings_seen: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if (self.verdict == "feasible") != bool(self.rules_found):
            raise ValueError("verdict 'feasible' must come with found rules")


def _complete_candidate(
    prob: MultiNodeProblem, x: float, tol: Tolerances
) -> CandidateOutcome:
    matrix = multinode_matrix(prob, list(prob.fixed_nodes) + [x])
    dim = kernel_dimension(matrix, tol.kernel)
    if dim == 0:
        return CandidateOutcome(
            x, (), "no_kernel", 0.0, "test matrix is not singular at the root"
        )
    if dim > 1:
        return CandidateOutcome(
            x,
            (),
            "kernel_ambiguous",
            float(dim),
            f"{dim} independent kernel directions; completion is not unique",
        )
    vec = kernel_vector(matrix, tol.kernel)
    assert vec is not None
    vec = vec / vec[int(np.argmax(np.abs(vec)))]
    poly = Polynomial(tuple(float(c) for c in vec))
    try:
        kernel_nodes = roots_to_nodes(poly, prob.l, tol)
    except ComplexRootsError as exc:
        return CandidateOutcome(x, (), "complex_kernel_roots", 0.0, str(exc))
    except RepeatedInfinityError as exc:
        return CandidateOutcome(x, (), "repeated_infinity", 0.0, str(exc))

    finite = [n.value for n in kernel_nodes if not n.is_infinite]
    merged = merge_close(list(prob.fixed_nodes) + [x] + finite, tol)
    nodes = sorted((Node(v) for v in merged), key=node_sort_key)
    if any(n.is_infinite for n in kernel_nodes):
        nodes.append(INFINITY)
    try:
        rule = rule_for_nodes(
            prob.seq,
            prob.degree,
            nodes,
            tol,
            pinned=tuple(prob.fixed_nodes) + (x,),
        )
    except NonPositiveWeightError as exc:
        # A weight that is only microscopically negative cannot certify
        # infeasibility: its sign is below what the solve resolves.  The
        # warning taints the run and the verdict falls back to inconclusive.
        if abs(exc.weight) <= 1e-12 * (1.0 + float(prob.seq.values[0])):
            warnings.warn(
                f"weight sign unresolved at working precision ({exc.weight!r})",
                NumericalWarning,
                stacklevel=2,
            )
        return CandidateOutcome(
            x, tuple(kernel_nodes), "non_positive_weight", exc.weight, str(exc)
        )
    except ResidualTooLargeError as exc:
        return CandidateOutcome(
            x, tuple(kernel_nodes), "residual_too_large", 0.0, str(exc)
        )
    report = verify_rule(prob.seq, rule, tol)
    if not report.passed:
        return CandidateOutcome(
            x,
            tuple(kernel_nodes),
            "residual_too_large",
            report.max_residual,
            f"completed rule fails verification at degree {report.first_failure}",
        )
    return CandidateOutcome(
        x, tuple(kernel_nodes), "rule", report.max_residual, "verified rule", rule
    )


def multinode_solve(
    prob: MultiNodeProblem, tol: Tolerances = DEFAULT_TOLERANCES
) -> FeasibilityReport:
    """Decide feasibility by completing every candidate free node.

    Floating point cannot certify nonexistence, so "infeasible" is only
    reported when every completion failed for a reason that is a theorem at
    the achieved accuracy (wrong moments, nonpositive weight, complex
    nodes) and no numerical warning fired anywhere along the way;
    otherwise a failed search is "inconclusive".
    """
    top = (prob.degree + 1) // 2
    if 2 * top > prob.seq.max_degree:
        top = prob.degree // 2
    check = nondegeneracy_check(prob.seq, top, tol)
    if not check.nondegenerate:
        raise DegenerateMomentsError(
            f"moment matrix of degree {top} is singular (det {check.det_value:.3e})"
        )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        candidates = multinode_candidates(prob, tol)
        outcomes = [_complete_candidate(prob, x, tol) for x in candidates]
    seen = tuple(
        str(w.message) for w in caught if issubclass(w.category, NumericalWarning)
    )
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)

    rules = tuple(o.rule for o in outcomes if o.rule is not None)
    if rules:
        verdict = "feasible"
    elif not seen and all(o.outcome in DEFINITE_FAILURES for o in outcomes):
        verdict = "infeasible"
    else:
        verdict = "inconclusive"
    return FeasibilityReport(verdict, tuple(outcomes), rules, seen)


def _node_text(node: Node) -> str:
    return "infinity" if node.is_infinite else format_number(node.value)


def report_to_text(report: FeasibilityReport) -> str:
    """Structured text: verdict line, then one line per candidate with the
    free node, outcome code, margin, and the completed node set."""
    lines = [f"verdict,{report.verdict}"]
    for cand in report.candidates:
        nodes = ";".join(_node_text(n) for n in cand.kernel_nodes)
        lines.append(
            f"candidate,{format_number(cand.x)},{cand.outcome},"
            f"{format_number(cand.margin)},{nodes}"
        )
    return "\n".join(lines) + "\n"
