"""Numerical tolerances and output formatting conventions.

Every threshold in the package is relative to a problem-dependent scale
(matrix magnitude, moment magnitude, eigenvalue magnitude); the fields here
are the dimensionless prefactors.  A single frozen instance is threaded
through all operations so a run is reproducible and overridable as a unit.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # |det| <= degeneracy * (1 + max|entry|)**dim  classifies a moment matrix
    # as degenerate.
    degeneracy: float = 1e-10
    # eigenvalue ratio of the moment matrix above which results carry a
    # conditioning warning (operations still proceed).
    conditioning: float = 1e12
    # eigenvalue or Cholesky pivot <= rank * (largest magnitude + 1) counts
    # as zero.
    rank: float = 1e-12
    # generalized-eigenpair residual and least-squares acceptance prefactor.
    residual: float = 1e-8
    # pencil eigenvalue below this (scale-aware) threshold maps to the node
    # at infinity; also the leading-coefficient truncation prefactor.
    infinity: float = 1e-9
    # roots closer than merge * (1 + |root|) are merged with a warning.
    merge: float = 1e-7
    # relative tolerance for rule verification against the moments.
    verify: float = 1e-9
    # weights <= positivity * (1 + total mass) count as non-positive.  The
    # default of zero means "strictly positive": genuine rules can carry
    # weights down at machine scale (a prescribed node sitting next to a
    # root of the infinity polynomial pushes a node far out with a weight
    # of order 1e-15), so any fixed positive floor rejects real rules.
    positivity: float = 0.0
    # kernel-vector acceptance: smallest |eigenvalue| <= kernel * scale.
    kernel: float = 1e-7
    # imaginary parts <= imaginary * (1 + max|coeff|) are discarded in root
    # extraction.
    imaginary: float = 1e-9


DEFAULT_TOLERANCES = Tolerances()


def format_number(value: float) -> str:
    """Render a float with 12 significant digits, locale-independent."""
    if value == 0.0:
        value = 0.0  # canonicalize -0.0
    return format(float(value), ".12g")
