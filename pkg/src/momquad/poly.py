"""Univariate polynomials, evaluation at real points and at infinity, roots.

Polynomials carry an explicit degree bound (trailing zeros allowed) because
evaluation at the infinite node reads the coefficient at the bound, not at
the actual degree: the same cubic bounded at degree 3 and at degree 6 gives
different answers at infinity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ComplexRootsError,
    MergedRootsWarning,
    RepeatedInfinityError,
    ZeroPolynomialError,
)

__all__ = [
    "Node",
    "INFINITY",
    "Polynomial",
    "evaluate",
    "real_roots",
    "elementary_symmetric",
    "poly_from_roots",
    "roots_to_nodes",
    "merge_close",
    "node_sort_key",
    "determinant_polynomial",
]


@dataclass(frozen=True, order=True)
class Node:
    """A point of the extended real line: Node(x) or the INFINITY sentinel.

    Ordering places infinity after every real node, which is the order used
    everywhere nodes are listed.
    """

    sort_group: int
    value: float

    def __init__(self, value: float | None):
        if value is None:
            object.__setattr__(self, "sort_group", 1)
            object.__setattr__(self, "value", math.inf)
        else:
            v = float(value)
            if not math.isfinite(v):
                raise ValueError(f"real node must be finite, got {value!r}")
            object.__setattr__(self, "sort_group", 0)
            object.__setattr__(self, "value", v)

    @property
    def is_infinite(self) -> bool:
        return self.sort_group == 1

    def __repr__(self) -> str:
        return "Node(infinity)" if self.is_infinite else f"Node({self.value!r})"


INFINITY = Node(None)


def node_sort_key(node: Node) -> tuple[int, float]:
    return (node.sort_group, node.value)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ascending by degree; index k holds the t^k coefficient."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValueError("polynomial coefficients must be finite")

    @property
    def degree_bound(self) -> int:
        return len(self.coefficients) - 1

    def padded(self, degree_bound: int) -> "Polynomial":
        """Same polynomial under a (weakly) larger degree bound."""
        if degree_bound < self.degree_bound:
            raise ValueError(
                f"cannot shrink degree bound {self.degree_bound} to {degree_bound}"
            )
        extra = degree_bound - self.degree_bound
        return Polynomial(self.coefficients + (0.0,) * extra)

    def effective_degree(self, rel_tol: float) -> int:
        """Largest k whose coefficient exceeds rel_tol * max|c|, or -1."""
        top = max(abs(c) for c in self.coefficients)
        if top == 0.0:
            return -1
        for k in range(self.degree_bound, -1, -1):
            if abs(self.coefficients[k]) > rel_tol * top:
                return k
        return -1


def evaluate(node: Node, f: Polynomial) -> float:
    """Value of f at a real node (Horner), or its top-bound coefficient at
    infinity."""
    if node.is_infinite:
        return f.coefficients[-1]
    acc = 0.0
    for c in reversed(f.coefficients):
        acc = acc * node.value + c
    return acc


def real_roots(
    f: Polynomial, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[float]:
    """All real roots, ascending, multiplicities kept.

    Companion-matrix eigenvalues via numpy; a root counts as real when its
    imaginary part is below tol.imaginary * (1 + max|monic coefficient|).
    The monic normalization matters: it makes the classification invariant
    under scaling of the polynomial, which the determinant polynomials
    arriving here need (their overall scale is arbitrary).  Leading
    coefficients below tol.infinity * max|c| are discarded first so that a
    numerically degenerate top does not poison the companion matrix.
    """
    deg = f.effective_degree(tol.infinity)
    if deg < 0:
        raise ZeroPolynomialError("cannot extract roots of the zero polynomial")
    if deg == 0:
        return []
    coeffs = np.array(f.coefficients[: deg + 1], dtype=float)
    raw = np.roots(coeffs[::-1])
    monic_top = float(np.max(np.abs(coeffs))) / abs(float(coeffs[deg]))
    threshold = tol.imaginary * (1.0 + monic_top)
    out = [float(z.real) for z in raw if abs(z.imag) <= threshold]
    out.sort()
    return out


def complex_root_count(f: Polynomial, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Number of roots real_roots would discard as genuinely complex."""
    deg = f.effective_degree(tol.infinity)
    if deg < 0:
        raise ZeroPolynomialError("cannot extract roots of the zero polynomial")
    return deg - len(real_roots(f, tol))


def elementary_symmetric(xs: list[float] | tuple[float, ...]) -> tuple[float, ...]:
    """e_0 .. e_n of the inputs: prod(t - x_i) = sum (-1)^k e_k t^(n-k)."""
    e = [1.0]
    for x in xs:
        e.append(0.0)
        for k in range(len(e) - 1, 0, -1):
            e[k] += x * e[k - 1]
    return tuple(e)


def poly_from_roots(
    roots: list[float] | tuple[float, ...], degree_bound: int
) -> Polynomial:
    """Monic product of (t - r) over the roots, zero-padded to the bound."""
    if len(roots) > degree_bound:
        raise ValueError(
            f"{len(roots)} roots do not fit under degree bound {degree_bound}"
        )
    coeffs = np.zeros(degree_bound + 1)
    e = elementary_symmetric(roots)
    n = len(roots)
    for k in range(n + 1):
        coeffs[n - k] = (-1.0) ** k * e[k]
    return Polynomial(tuple(float(c) for c in coeffs))


def merge_close(values: list[float], tol: Tolerances = DEFAULT_TOLERANCES) -> list[float]:
    """Collapse clusters of nearly equal values to their means.

    Values within tol.merge * (1 + |value|) of their neighbor belong to one
    cluster.  Any actual merging raises MergedRootsWarning: the theory
    guarantees simple roots, so coincidence signals conditioning trouble.
    """
    if not values:
        return []
    ordered = sorted(values)
    clusters: list[list[float]] = [[ordered[0]]]
    for v in ordered[1:]:
        prev = clusters[-1][-1]
        if abs(v - prev) <= tol.merge * (1.0 + max(abs(v), abs(prev))):
            clusters[-1].append(v)
        else:
            clusters.append([v])
    if len(clusters) < len(ordered):
        warnings.warn(
            f"merged {len(ordered) - len(clusters)} nearly coincident roots",
            MergedRootsWarning,
            stacklevel=2,
        )
    return [sum(c) / len(c) for c in clusters]


def roots_to_nodes(
    f: Polynomial,
    expected_count: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[Node]:
    """Roots of f as nodes, padding degree deficiency with the infinite node.

    A polynomial expected to have `expected_count` roots but whose effective
    degree is lower has sent the missing roots to infinity; exactly one such
    escape is representable (a node list holds at most one infinite node).
    Complex roots are an error here: every polynomial routed through this
    function is real-rooted in exact arithmetic.
    """
    deg = f.effective_degree(tol.infinity)
    if deg < 0:
        raise ZeroPolynomialError("cannot extract nodes from the zero polynomial")
    if deg > expected_count:
        raise ValueError(
            f"polynomial degree {deg} exceeds expected node count {expected_count}"
        )
    infinite_count = expected_count - deg
    if infinite_count > 1:
        raise RepeatedInfinityError(
            f"degree drops by {infinite_count}; at most one node at infinity "
            "is representable"
        )
    roots = real_roots(f, tol)
    if len(roots) < deg:
        raise ComplexRootsError(
            f"{deg - len(roots)} of {deg} roots are complex; expected all real"
        )
    nodes = [Node(r) for r in merge_close(roots, tol)]
    if infinite_count:
        nodes.append(INFINITY)
    return nodes


def determinant_polynomial(a: np.ndarray, b: np.ndarray, degree: int) -> Polynomial:
    """det(x*a - b) as an explicit polynomial, by sampling and interpolation.

    Works for any symmetric pencil, definite or not.  The determinant is a
    polynomial of degree at most the matrix dimension (here capped by the
    caller's `degree`), so evaluating it at degree+1 Chebyshev-spread points
    and solving the Vandermonde system recovers it exactly up to round-off.
    The sampling radius tracks ||b||/||a|| so the points sit near the root
    scale of the pencil.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if degree < 0:
        raise ValueError("degree must be >= 0")
    count = degree + 1
    radius = 1.0 + float(np.linalg.norm(b)) / (1.0 + float(np.linalg.norm(a)))
    angles = (2.0 * np.arange(count) + 1.0) * np.pi / (2.0 * count)
    points = radius * np.cos(angles)
    values = np.array([float(np.linalg.det(x * a - b)) for x in points])
    vander = np.vander(points, N=count, increasing=True)
    coeffs = np.linalg.solve(vander, values)
    return Polynomial(tuple(float(c) for c in coeffs))
