import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactsurgery.errors import Indeterminate, NonCoprime, SlopeNotAbove
from contactsurgery.farey import INFINITY, Slope, is_neighbor, mediant, slam_dunk, surgery_path


def S(text):
    return Slope.parse(text)


# Slope


def test_slope_normalization():
    assert Slope.reduced(4, -6) == Slope(-2, 3)
    assert Slope.reduced(-1, 0) == INFINITY
    with pytest.raises(NonCoprime):
        Slope(4, 2)
    with pytest.raises(ValueError):
        Slope(2, 0)


def test_slope_order_and_text():
    assert S("3/2") < S("5/3") < S("2") < INFINITY
    assert str(S("12/7")) == "12/7"
    assert str(S("3")) == "3/1"


# mediant and neighbours


@pytest.mark.parametrize(
    "s,t,expected", [("1/1", "2/1", "3/2"), ("5/3", "7/4", "12/7")]
)
def test_mediant_examples(s, t, expected):
    assert mediant(S(s), S(t)) == S(expected)


@pytest.mark.parametrize("n", range(-3, 20))
def test_mediant_with_infinity(n):
    assert mediant(Slope(n), INFINITY) == Slope(n + 1)


@pytest.mark.parametrize("s,t,expected", [("1/1", "2/1", True), ("5/3", "7/4", True), ("1/1", "3/1", False)])
def test_is_neighbor(s, t, expected):
    assert is_neighbor(S(s), S(t)) is expected


# surgery paths


def test_path_twelve_sevenths():
    path = surgery_path(1, S("12/7"))
    assert [str(s) for s in path.back_slopes] == ["1/1", "3/2", "5/3", "12/7"]
    assert [str(s) for s in path.surgeries] == ["2/1", "2/1", "7/4"]
    path.check()


@pytest.mark.parametrize("n", range(1, 21))
def test_integer_hop(n):
    path = surgery_path(n, Slope(n + 1))
    assert path.surgeries == (INFINITY,)


def test_path_five_halves():
    path = surgery_path(2, S("5/2"))
    assert path.back_slopes == (S("2/1"), S("5/2"))
    assert path.surgeries == (S("3/1"),)


@pytest.mark.parametrize("target", ["1/1", "1/2", "12/7"])
def test_path_needs_larger_target(target):
    with pytest.raises(SlopeNotAbove):
        surgery_path(2, S(target))


def test_path_rejects_infinity():
    with pytest.raises(SlopeNotAbove):
        surgery_path(2, INFINITY)


coprime_targets = (
    st.tuples(st.integers(1, 10_000), st.integers(1, 10_000)).filter(lambda pq: math.gcd(*pq) == 1)
)


@settings(max_examples=300, deadline=None)
@given(coprime_targets, st.integers(1, 50))
def test_path_invariants(pq, n):
    p, q = pq
    target = Slope(p, q)
    if target <= Slope(n):
        with pytest.raises(SlopeNotAbove):
            surgery_path(n, target)
        return
    path = surgery_path(n, target)
    path.check()
    assert path.back_slopes[0] == Slope(n) and path.back_slopes[-1] == target
    assert path.bracket_updates <= p + q
    # advances of the lower bracket are exactly the surgeries
    assert len(path.surgeries) == len(path.back_slopes) - 1
    assert all(a < b for a, b in zip(path.back_slopes, path.back_slopes[1:]))


@given(coprime_targets, coprime_targets)
def test_mediant_neighbours(a, b):
    s, t = Slope(*a), Slope(*b)
    if is_neighbor(s, t):
        m = mediant(s, t)
        assert is_neighbor(m, s) and is_neighbor(m, t)


# slam dunk


@pytest.mark.parametrize("target,n,expected", [("12/7", 1, "-7/5"), ("5/2", 2, "-2/1"), ("3/1", 5, "1/2")])
def test_slam_dunk_examples(target, n, expected):
    assert slam_dunk(S(target), n) == S(expected)


def test_slam_dunk_indeterminate():
    with pytest.raises(Indeterminate):
        slam_dunk(Slope(3), 3)


@given(st.tuples(st.integers(-10_000, 10_000), st.integers(1, 10_000)).filter(lambda pq: math.gcd(*pq) == 1), st.integers(1, 100))
def test_slam_dunk_sign(pq, n):
    target = Slope(*pq)
    if Fraction(*pq) == n:
        return
    r = slam_dunk(target, n)
    assert (r.p < 0) == (target > Slope(n))
    assert Fraction(r.p, r.q) == Fraction(pq[1], pq[1] * n - pq[0])
