import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactsurgery.errors import ParseError, UnknownGenerator, ValidationError
from contactsurgery.heegaard import (
    PeriodicDomainModel,
    WindingParams,
    alexander_difference,
    cable_arithmetic,
    format_domain,
    parse_domain,
    point_measure,
    scaled_measure,
    winding_distinct,
)

CORNER = PeriodicDomainModel(
    (("a", 0), ("b", 0), ("c", 1), ("d", 1)),
    (("x", (("a", "b", "c", "d"),)),),
)

TWO = PeriodicDomainModel(
    (("z", 0), ("o", 1), ("t", 2)),
    (
        ("x", (("o", "o", "o", "o"), ("z", "o", "o", "t"))),
        ("y", (("z", "z", "z", "z"), ("z", "z", "z", "z"))),
        ("w", (("o", "z", "z", "z"), ("t", "t", "o", "z"))),
    ),
)


def test_measure_zero():
    d = PeriodicDomainModel((("a", 0),), (("x", (("a", "a", "a", "a"),)),))
    assert point_measure(d, "x") == 0


def test_measure_half():
    assert point_measure(CORNER, "x") == Fraction(1, 2)


def test_measure_sum_of_means():
    assert point_measure(TWO, "x") == 2


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        point_measure(TWO, "nope")


def test_difference_examples():
    d = PeriodicDomainModel(
        (("z", 0), ("o", 1)),
        (("x", (("o", "o", "o", "o"),)), ("y", (("z", "z", "z", "z"),))),
    )
    assert alexander_difference(d, "x", "x") == 0
    assert alexander_difference(d, "x", "y") == 1
    assert alexander_difference(d, "y", "x") == -1


def test_difference_additive_along_chain():
    assert alexander_difference(TWO, "x", "y") + alexander_difference(TWO, "y", "w") == alexander_difference(TWO, "x", "w")


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3), st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_measure_linear(m1, m2):
    def model(ms):
        return PeriodicDomainModel(tuple(zip(("z", "o", "t"), ms)), TWO.generators)

    for x in ("x", "y", "w"):
        total = model([a + b for a, b in zip(m1, m2)])
        assert point_measure(total, x) == point_measure(model(m1), x) + point_measure(model(m2), x)


def test_model_validation():
    with pytest.raises(ValidationError):
        PeriodicDomainModel((("a", 0),), (("x", (("a", "a", "a", "b"),)),))
    with pytest.raises(ValidationError):
        PeriodicDomainModel((("a", 0),), (("x", (("a",) * 4,)), ("y", (("a",) * 4, ("a",) * 4))))
    with pytest.raises(ValidationError):
        PeriodicDomainModel((("a", 0), ("a", 1)), ())


def test_parse_round_trip():
    text = format_domain(TWO)
    assert parse_domain(text) == TWO
    assert text.startswith("domain v1\n")


@pytest.mark.parametrize(
    "text",
    ["", "domain v2\n", "domain v1\nregion a\n", "domain v1\nregion a mult=x\n", "domain v1\ngenerator x corners=a,b\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_domain(text)


# winding regions


def test_winding_examples():
    assert winding_distinct(3, 5)
    check = winding_distinct(4, 6)
    assert not check and check.witness == (2, 3)
    assert winding_distinct(1, 7)


def test_winding_params():
    WindingParams(a=2, q=3, p=1, b=1).check()
    with pytest.raises(ValueError):
        WindingParams(a=2, q=3, p=1, b=2).check()


@given(st.integers(1, 300), st.integers(1, 300))
def test_winding_is_gcd(a, q):
    assert bool(winding_distinct(a, q)) == (math.gcd(a, q) == 1)


# cables and scaling


@pytest.mark.parametrize("p,P,expected", [(1, 3, (1, 3)), (6, 4, (3, 2)), (5, 5, (1, 1))])
def test_cable_examples(p, P, expected):
    assert cable_arithmetic(p, P) == expected


def test_scaled_measure():
    assert scaled_measure(CORNER, 1) == CORNER
    assert point_measure(scaled_measure(CORNER, 3), "x") == Fraction(3, 2)
    assert alexander_difference(scaled_measure(TWO, 4), "x", "w") == 4 * alexander_difference(TWO, "x", "w")


@given(st.integers(1, 20), st.integers(1, 20))
def test_scaling_composes(r1, r2):
    assert scaled_measure(TWO, r1 * r2) == scaled_measure(scaled_measure(TWO, r1), r2)
