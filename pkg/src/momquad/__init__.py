"""Minimal quadrature rules on the real line from finite moment sequences.

The package turns a list of moments m_0, ..., m_D into quadrature rules
with the fewest possible nodes (one of which may sit at infinity, where
evaluation means reading the top-degree coefficient), by reducing every
node computation to a symmetric generalized eigenvalue problem on Hankel
moment matrices.  It also decides whether a rule through several
prescribed nodes exists at all.

Modules: `moments` (sequences and Hankel windows), `symlin` (symmetric
pencils and eigensolvers), `poly` (polynomials, nodes, roots), `rules`
(rule construction and verification), `multinode` (prescribed-node
feasibility), `cli` (command-line front end).
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ComplexRootsError,
    ConditioningWarning,
    ConvergenceError,
    CrossCheckError,
    DegenerateMomentsError,
    IndefinitePencilError,
    InsufficientMomentsError,
    MergedRootsWarning,
    MomentOverflowError,
    MomquadError,
    NonPositiveWeightError,
    NotPositiveDefiniteError,
    NumericalWarning,
    RepeatedInfinityError,
    RepeatedRootError,
    ResidualTooLargeError,
    SingularDeflationError,
    SingularSystemError,
    ZeroPolynomialError,
)
from .moments import (
    AtomicMeasure,
    MomentSequence,
    hankel_shifted,
    moments_exponential,
    moments_from_atoms,
    moments_from_csv,
    moments_normal,
    moments_to_csv,
    moments_uniform,
    nondegeneracy_check,
)
from .multinode import (
    FeasibilityReport,
    MultiNodeProblem,
    multinode_candidates,
    multinode_matrix,
    multinode_pencil,
    multinode_solve,
    report_to_text,
)
from .poly import INFINITY, Node, Polynomial, evaluate
from .rules import (
    EvenFamily,
    QuadratureRule,
    VerificationReport,
    bilinear_det,
    bilinear_matrix,
    curve_sample,
    even_family,
    even_rule_linear,
    even_rule_through,
    gaussian_odd,
    infinity_polynomial,
    infinity_rule,
    linear_rep_matrix,
    nodes_agree,
    rule_for_nodes,
    rule_from_text,
    rule_to_text,
    verify_rule,
    weights_for_nodes,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "MomentSequence",
    "AtomicMeasure",
    "moments_normal",
    "moments_exponential",
    "moments_uniform",
    "moments_from_atoms",
    "moments_from_csv",
    "moments_to_csv",
    "hankel_shifted",
    "nondegeneracy_check",
    "Node",
    "INFINITY",
    "Polynomial",
    "evaluate",
    "QuadratureRule",
    "EvenFamily",
    "VerificationReport",
    "even_family",
    "gaussian_odd",
    "even_rule_through",
    "even_rule_linear",
    "bilinear_matrix",
    "bilinear_det",
    "linear_rep_matrix",
    "infinity_polynomial",
    "infinity_rule",
    "weights_for_nodes",
    "rule_for_nodes",
    "nodes_agree",
    "verify_rule",
    "curve_sample",
    "rule_to_text",
    "rule_from_text",
    "MultiNodeProblem",
    "FeasibilityReport",
    "multinode_matrix",
    "multinode_pencil",
    "multinode_candidates",
    "multinode_solve",
    "report_to_text",
    "MomquadError",
    "InsufficientMomentsError",
    "MomentOverflowError",
    "DegenerateMomentsError",
    "NotPositiveDefiniteError",
    "IndefinitePencilError",
    "SingularDeflationError",
    "ConvergenceError",
    "SingularSystemError",
    "ZeroPolynomialError",
    "ComplexRootsError",
    "RepeatedInfinityError",
    "RepeatedRootError",
    "NonPositiveWeightError",
    "ResidualTooLargeError",
    "CrossCheckError",
    "NumericalWarning",
    "ConditioningWarning",
    "MergedRootsWarning",
]
