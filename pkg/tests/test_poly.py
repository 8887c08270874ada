import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from momquad import INFINITY, Node, Polynomial, evaluate
from momquad.config import Tolerances
from momquad.errors import (
    ComplexRootsError,
    MergedRootsWarning,
    RepeatedInfinityError,
)
from momquad.poly import (
    complex_root_count,
    determinant_polynomial,
    elementary_symmetric,
    merge_close,
    node_sort_key,
    poly_from_roots,
    real_roots,
    roots_to_nodes,
)

finite_floats = st.floats(-100, 100, allow_nan=False)


def test_node_basics():
    n = Node(2.5)
    assert not n.is_infinite
    assert n.value == 2.5
    assert INFINITY.is_infinite
    assert Node(None).is_infinite
    assert Node(None) == INFINITY


def test_node_rejects_nonfinite_values():
    with pytest.raises(ValueError):
        Node(float("nan"))
    with pytest.raises(ValueError):
        Node(float("inf"))


def test_node_ordering_puts_infinity_last():
    nodes = [INFINITY, Node(3.0), Node(-1.0), Node(0.0)]
    ordered = sorted(nodes, key=node_sort_key)
    assert [n.value for n in ordered[:3]] == [-1.0, 0.0, 3.0]
    assert ordered[3].is_infinite


@given(st.lists(finite_floats, min_size=1, max_size=6), finite_floats)
def test_evaluate_matches_polyval(coeffs, x):
    p = Polynomial(tuple(coeffs))
    expected = float(np.polyval(list(reversed(coeffs)), x))
    assert evaluate(Node(x), p) == pytest.approx(expected, rel=1e-9, abs=1e-6)


def test_evaluate_at_infinity_reads_top_coefficient():
    p = Polynomial((5.0, -1.0, 3.0))
    assert evaluate(INFINITY, p) == 3.0
    # degree bound counts trailing zeros: top coefficient of the BOUND degree
    q = Polynomial((5.0, -1.0, 0.0))
    assert evaluate(INFINITY, q) == 0.0


def test_effective_degree_ignores_tiny_leads():
    p = Polynomial((1.0, 2.0, 1e-18))
    assert p.degree_bound == 2
    assert p.effective_degree(1e-9) == 1


def test_real_roots_cubic():
    # (t-1)(t+2)(t-3) = t^3 - 2t^2 - 5t + 6
    p = Polynomial((6.0, -5.0, -2.0, 1.0))
    assert real_roots(p) == pytest.approx([-2.0, 1.0, 3.0])


def test_real_roots_drops_complex_pair():
    # (t^2+1)(t-2): only the real root comes back
    p = Polynomial((-2.0, 1.0, -2.0, 1.0))
    assert real_roots(p) == pytest.approx([2.0])
    assert complex_root_count(p) == 2


@given(st.floats(1e-3, 1e3), st.lists(st.floats(-3, 3), min_size=2, max_size=4))
def test_real_roots_scale_invariant(scale, roots):
    """Multiplying the polynomial by a constant must not change the roots
    it reports, including the real/complex classification.

    Simple roots only: at a double root the real/complex split is genuinely
    unstable under any rounding, so scale invariance cannot be promised.
    """
    roots = sorted(roots)
    assume(all(b - a > 0.05 for a, b in zip(roots, roots[1:])))
    p = poly_from_roots(sorted(roots), len(roots))
    scaled = Polynomial(tuple(scale * c for c in p.coefficients))
    a = real_roots(p)
    b = real_roots(scaled)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert x == pytest.approx(y, rel=1e-7, abs=1e-7)


def test_elementary_symmetric_hand_case():
    e = elementary_symmetric([1.0, 2.0, 3.0])
    assert e == (1.0, 6.0, 11.0, 6.0)


@given(st.lists(st.floats(-4, 4), min_size=1, max_size=5), st.floats(-4, 4))
def test_elementary_symmetric_append_recursion(xs, t):
    base = elementary_symmetric(xs)
    grown = elementary_symmetric(xs + [t])
    for k in range(1, len(xs) + 1):
        assert grown[k] == pytest.approx(base[k] + t * base[k - 1], rel=1e-9, abs=1e-9)


def test_poly_from_roots_round_trip():
    p = poly_from_roots([-1.5, 0.5, 2.0], 3)
    assert p.coefficients[-1] == 1.0  # monic
    assert sorted(real_roots(p)) == pytest.approx([-1.5, 0.5, 2.0])


def test_poly_from_roots_pads_to_degree():
    p = poly_from_roots([2.0], 3)
    assert p.degree_bound == 3
    assert p.coefficients == (-2.0, 1.0, 0.0, 0.0)


def test_merge_close_warns_and_averages():
    with pytest.warns(MergedRootsWarning):
        out = merge_close([1.0, 1.0 + 1e-9, 5.0])
    assert out == pytest.approx([1.0 + 5e-10, 5.0])


def test_merge_close_leaves_separated_alone():
    assert merge_close([3.0, -1.0]) == [-1.0, 3.0]


def test_roots_to_nodes_degree_drop_is_infinity():
    # coefficient vector of degree bound 2 whose top coefficient vanished:
    # one finite root plus the node at infinity
    p = Polynomial((-2.0, 1.0, 0.0))
    nodes = roots_to_nodes(p, 2)
    assert nodes[0].value == pytest.approx(2.0)
    assert nodes[1].is_infinite


def test_roots_to_nodes_double_drop_rejected():
    p = Polynomial((-2.0, 1.0, 0.0, 0.0))
    with pytest.raises(RepeatedInfinityError):
        roots_to_nodes(p, 3)


def test_roots_to_nodes_complex_rejected():
    p = Polynomial((1.0, 0.0, 1.0))  # t^2 + 1
    with pytest.raises(ComplexRootsError):
        roots_to_nodes(p, 2)


def test_determinant_polynomial_two_by_two():
    a = np.array([[2.0, 0.0], [0.0, 1.0]])
    b = np.array([[1.0, 1.0], [1.0, -1.0]])
    # det(xA - B) = (2x-1)(x+1) - 1 = 2x^2 + x - 2
    p = determinant_polynomial(a, b, degree=2)
    assert np.allclose(p.coefficients, (-2.0, 1.0, 2.0), atol=1e-9)


def test_determinant_polynomial_matches_point_samples():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((4, 4))
    a = a + a.T
    b = rng.standard_normal((4, 4))
    b = b + b.T
    p = determinant_polynomial(a, b, degree=4)
    for x in (-2.0, -0.3, 0.9, 3.7):
        direct = float(np.linalg.det(x * a - b))
        assert evaluate(Node(x), p) == pytest.approx(direct, rel=1e-8, abs=1e-8)


def test_merge_tolerance_is_configurable():
    loose = Tolerances(merge=0.5)
    with pytest.warns(MergedRootsWarning):
        out = merge_close([1.0, 1.4], loose)
    assert out == pytest.approx([1.2])
