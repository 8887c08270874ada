"""Moment sequences and the shifted Hankel matrices built from them.

A measure on the real line enters the package only through its moments
m_k = integral of t^k.  Everything downstream is assembled from square
windows of the sequence arranged as Hankel matrices

    entry(i, j) = m_{i+j+shift-2}   (1-based i, j)

whose shift-0 instance represents the quadratic form p -> integral of p^2
on polynomials up to the matrix size minus one.  Non-degeneracy (that form
being definite) is exactly invertibility of the shift-0 matrix.

All matrices returned here are exactly symmetric by construction: entries
are copied from the sequence, never symmetrized after the fact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances, format_number
from .errors import (
    InsufficientMomentsError,
    MomentOverflowError,
    NotPositiveDefiniteError,
)
from .symlin import cholesky

__all__ = [
    "MomentSequence",
    "AtomicMeasure",
    "NondegeneracyResult",
    "moments_normal",
    "moments_exponential",
    "moments_uniform",
    "moments_from_atoms",
    "hankel_shifted",
    "nondegeneracy_check",
    "moments_to_csv",
    "moments_from_csv",
]


@dataclass(frozen=True)
class MomentSequence:
    """Moments m_0 .. m_D of a measure, with a provenance tag."""

    values: tuple[float, ...]
    source: str = ""

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("a moment sequence needs at least m_0")
        for k, v in enumerate(self.values):
            if not math.isfinite(v):
                raise ValueError(f"moment m_{k} is not finite: {v!r}")

    @property
    def max_degree(self) -> int:
        return len(self.values) - 1

    def require(self, degree: int) -> None:
        """Raise if the sequence does not reach the given degree."""
        if degree > self.max_degree:
            raise InsufficientMomentsError(
                f"need moment m_{degree} but the sequence ends at m_{self.max_degree}"
            )

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def scaled(self, factor: float) -> "MomentSequence":
        return MomentSequence(
            tuple(factor * v for v in self.values),
            source=f"{self.source}*{factor:g}" if self.source else f"*{factor:g}",
        )


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely supported measure: (position, weight) pairs with positive weights.

    Serves as the brute-force oracle: its moments are plain finite sums, and a
    measure with n atoms is its own minimal quadrature rule.
    """

    atoms: tuple[tuple[float, float], ...]
    separation: float = 1e-8

    def __post_init__(self):
        for pos, w in self.atoms:
            if not (math.isfinite(pos) and math.isfinite(w)):
                raise ValueError("atom positions and weights must be finite")
            if w <= 0.0:
                raise ValueError(f"atom weight must be positive, got {w!r} at {pos!r}")
        positions = sorted(pos for pos, _ in self.atoms)
        for a, b in zip(positions, positions[1:]):
            if abs(b - a) <= self.separation * (1.0 + max(abs(a), abs(b))):
                raise ValueError(f"atom positions {a!r} and {b!r} are not separated")

    @property
    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms)

    def rescaled(self, mass: float = 1.0) -> "AtomicMeasure":
        """Scale all weights so the total mass equals `mass`."""
        current = self.total_mass
        if current <= 0.0:
            raise ValueError("cannot rescale an empty measure")
        f = mass / current
        return AtomicMeasure(tuple((p, w * f) for p, w in self.atoms), self.separation)


def moments_normal(max_degree: int) -> MomentSequence:
    """Moments of the standard normal distribution: odd ones vanish, even
    ones are the double factorials 1, 1, 3, 15, ..."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    values = []
    odd_product = 1  # (2i-1)!! accumulated over even degrees
    for k in range(max_degree + 1):
        if k % 2 == 1:
            values.append(0.0)
            continue
        if k >= 2:
            odd_product *= k - 1
        values.append(_to_float(odd_product, k))
    return MomentSequence(tuple(values), source="normal")


def moments_exponential(max_degree: int) -> MomentSequence:
    """Moments of the unit exponential distribution: m_k = k!."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    values = []
    acc = 1
    for k in range(max_degree + 1):
        if k > 0:
            acc *= k
        values.append(_to_float(acc, k))
    return MomentSequence(tuple(values), source="exponential")


def moments_uniform(a: float, b: float, max_degree: int) -> MomentSequence:
    """Moments of the uniform distribution on [a, b]."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if not (a < b):
        raise ValueError(f"invalid interval: need a < b, got a={a!r}, b={b!r}")
    values = []
    for k in range(max_degree + 1):
        try:
            m = (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a))
        except OverflowError:
            m = math.inf
        if not math.isfinite(m):
            raise MomentOverflowError(f"uniform moment m_{k} overflows for [{a}, {b}]")
        values.append(m)
    return MomentSequence(tuple(values), source=f"uniform[{a:g},{b:g}]")


def moments_from_atoms(measure: AtomicMeasure, max_degree: int) -> MomentSequence:
    """m_k = sum of w_i * x_i^k over the atoms (zero sequence for no atoms)."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    values = np.zeros(max_degree + 1)
    with np.errstate(over="ignore"):
        for pos, w in measure.atoms:
            powers = np.power(pos, np.arange(max_degree + 1))
            values += w * powers
    if not np.all(np.isfinite(values)):
        raise MomentOverflowError("atomic moments overflow the double range")
    return MomentSequence(tuple(float(v) for v in values), source="atoms")


def hankel_shifted(seq: MomentSequence, size: int, shift: int) -> np.ndarray:
    """The size x size matrix with entry (i, j) = m_{i+j+shift-2}, 1-based.

    shift=0 is the plain moment matrix, shift=1 and shift=2 the versions
    weighted by t and t^2.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    if shift < 0:
        raise ValueError("shift must be >= 0")
    seq.require(2 * (size - 1) + shift)
    vals = seq.as_array()
    idx = np.add.outer(np.arange(size), np.arange(size)) + shift
    return vals[idx]


@dataclass(frozen=True)
class NondegeneracyResult:
    nondegenerate: bool
    det_value: float
    threshold: float

    @property
    def verdict(self) -> str:
        return "nondegenerate" if self.nondegenerate else "degenerate"


def nondegeneracy_check(
    seq: MomentSequence, d: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> NondegeneracyResult:
    """Classify the degree-d moment matrix as singular or not.

    No single determinant-magnitude threshold works here: Hankel matrices
    of honest measures can have determinants that are astronomically small
    (uniform on [-1,1], all eigenvalues below 1) or astronomically large
    (exponential, entries to 16 digits) while being perfectly invertible.
    The check therefore accepts a matrix as nondegenerate when either

    * a Cholesky factorization with per-column relative pivot thresholds
      succeeds (the matrix is usably positive definite, however scaled), or
    * the smallest eigenvalue magnitude exceeds
      tol.degeneracy * (1 + largest eigenvalue magnitude)
      (the matrix is invertible at working precision, definite or not).

    An exactly singular matrix fails both.  The reported threshold is the
    eigenvalue cutoff of the second test; det_value is informational.
    """
    matrix = hankel_shifted(seq, d + 1, 0)
    det = float(np.linalg.det(matrix))
    eigenvalues = np.linalg.eigvalsh(matrix)
    threshold = tol.degeneracy * (1.0 + float(np.max(np.abs(eigenvalues))))
    clearly_invertible = float(np.min(np.abs(eigenvalues))) > threshold
    if not clearly_invertible:
        try:
            cholesky(matrix, tol)
            clearly_invertible = True
        except NotPositiveDefiniteError:
            pass
    return NondegeneracyResult(clearly_invertible, det, threshold)


def moments_to_csv(seq: MomentSequence) -> str:
    """Serialize as `k,m_k` lines with indices ascending from 0."""
    lines = []
    if seq.source:
        lines.append(f"# moments: {seq.source}")
    for k, v in enumerate(seq.values):
        lines.append(f"{k},{format_number(v)}")
    return "\n".join(lines) + "\n"


def moments_from_csv(text: str, source: str = "csv") -> MomentSequence:
    """Parse `k,m_k` lines; `#` starts a comment; indices must be 0..D
    contiguous and ascending, no gaps or duplicates."""
    entries: list[tuple[int, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected `k,m_k`, got {raw!r}")
        try:
            k = int(parts[0].strip())
            v = float(parts[1].strip())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        entries.append((k, v))
    if not entries:
        raise ValueError("no moments found")
    expected = 0
    values = []
    for k, v in entries:
        if k < expected:
            raise ValueError(f"duplicate or out-of-order index {k}")
        if k > expected:
            raise ValueError(f"gap in moment indices: missing {expected}")
        values.append(v)
        expected += 1
    return MomentSequence(tuple(values), source=source)


def _to_float(value: int, k: int) -> float:
    try:
        return float(value)
    except OverflowError:
        raise MomentOverflowError(
            f"moment m_{k} = {str(value)[:24]}... exceeds the double range"
        ) from None
