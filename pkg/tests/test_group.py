import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affharm import (
    IDENTITY,
    GroupElement,
    compose,
    haar_weights,
    inverse,
)

scales = st.floats(min_value=1e-6, max_value=1e6)
shifts = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
elements = st.builds(GroupElement, a=scales, b=shifts)


def test_compose_example():
    g = compose(GroupElement(2, 1), GroupElement(3, 4))
    assert g == GroupElement(6, 9)


def test_identity_left():
    g = GroupElement(1.7, -0.3)
    assert compose(IDENTITY, g) == g


def test_inverse_pair():
    assert compose(GroupElement(0.5, -2), GroupElement(2, 4)) == GroupElement(1, 0)
    assert inverse(GroupElement(2, 4)) == GroupElement(0.5, -2)
    assert inverse(GroupElement(1, 3)) == GroupElement(1, -3)
    assert inverse(GroupElement(4, 0)) == GroupElement(0.25, 0)


def test_invalid_elements_rejected():
    with pytest.raises(ValueError):
        GroupElement(0.0, 1.0)
    with pytest.raises(ValueError):
        GroupElement(-1.0, 0.0)
    with pytest.raises(ValueError):
        GroupElement(math.inf, 0.0)


def test_haar_weights_examples():
    w = haar_weights(GroupElement(1, 5))
    assert (w.left, w.right) == pytest.approx((1, 1))
    w = haar_weights(GroupElement(2, 0))
    assert (w.left, w.right) == pytest.approx((0.25, 0.5))
    w = haar_weights(GroupElement(0.5, 3))
    assert (w.left, w.right) == pytest.approx((4, 2))


@given(elements, elements, elements)
@settings(max_examples=80, deadline=None)
def test_associativity(g, h, k):
    lhs = compose(compose(g, h), k)
    rhs = compose(g, compose(h, k))
    assert lhs.a == pytest.approx(rhs.a, rel=1e-12)
    assert lhs.b == pytest.approx(rhs.b, rel=1e-12, abs=1e-12 * max(1.0, abs(rhs.b)))


@given(elements)
@settings(max_examples=80, deadline=None)
def test_inverse_roundtrip(g):
    e = compose(g, inverse(g))
    assert e.a == pytest.approx(1.0, rel=1e-12)
    assert abs(e.b) <= 1e-9 * max(1.0, abs(g.b))


@given(elements)
@settings(max_examples=50, deadline=None)
def test_weight_consistency(g):
    w = haar_weights(g)
    assert w.left * g.a == pytest.approx(w.right, rel=1e-12)


def test_subgroups_closed():
    # A = {(a, 0)} and N = {(1, b)} close under compose and inverse
    a1, a2 = GroupElement(2.5, 0), GroupElement(0.3, 0)
    c = compose(a1, a2)
    assert c.b == 0 and inverse(c).b == 0
    n1, n2 = GroupElement(1, 2.5), GroupElement(1, -7)
    c = compose(n1, n2)
    assert c.a == 1 and inverse(c).a == 1


def test_left_invariance_of_left_measure_quadrature():
    # discretized substitution: sum f(g0^-1 g) a^-2 da db is shift invariant
    # when the grid covers both supports
    g0 = GroupElement(1.25, 0.4)
    a = np.linspace(0.05, 12.0, 1200)
    b = np.linspace(-14.0, 14.0, 1200)
    da, db = a[1] - a[0], b[1] - b[0]
    A, B = np.meshgrid(a, b, indexing="ij")

    def f(avals, bvals):
        # smooth bump well inside the grid in both original and shifted form
        return np.exp(-((np.log(avals)) ** 2) - (bvals - 1.0) ** 2)

    s1 = np.sum(f(A, B) * A ** -2.0) * da * db
    # g0^-1 g = (a/a0, (b-b0)/a0)
    s2 = np.sum(f(A / g0.a, (B - g0.b) / g0.a) * A ** -2.0) * da * db
    assert s2 == pytest.approx(s1, rel=2e-3)
