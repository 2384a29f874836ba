"""Expression language: parsing, elaboration, printing, round trips."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpdd.dsl import (
    ClassSpec,
    Concat,
    Literal,
    Named,
    ParseError,
    Projection,
    elaborate,
    parse,
    to_text,
)
from cpdd.pauli import PauliAxis
from cpdd.sequence import CPDDClass, concat, cpdd_from_order, equivalent, projection

X, Y, Z = PauliAxis.X, PauliAxis.Y, PauliAxis.Z


# -------------------------------------------------------------------- parse

def test_parse_nested_projections():
    expr = parse("px[py[pz]]")
    assert expr == Concat(Projection(X), Concat(Projection(Y), Projection(Z)))


def test_parse_literal():
    assert parse("ZZ") == Literal("ZZ")
    assert parse("IZXZIZXZ") == Literal("IZXZIZXZ")


def test_parse_named_forms():
    assert parse("cdd(2)") == Named("cdd", 2)
    assert parse("CDD(2)") == Named("cdd", 2)  # keywords case-insensitive
    assert parse("pdd") == Named("pdd")
    assert parse("ga8b") == Named("ga8b")
    assert parse("oudd(3)") == Named("oudd", 3)


def test_parse_classspec():
    assert parse("cpdd{0,1,2}") == ClassSpec(0, 1, 2)
    assert parse("cpdd{ 1 , 1 , 1 }") == ClassSpec(1, 1, 1)


def test_parse_chained_brackets_associate_left():
    expr = parse("px[py][pz]")
    assert expr == Concat(Concat(Projection(X), Projection(Y)), Projection(Z))


@pytest.mark.parametrize(
    "text, offset_at",
    [
        ("px[py", 5),      # unclosed bracket -> end of input
        ("bogus", 0),      # unknown name
        ("px]", 2),        # trailing token
        ("px[py]z@", 7),   # junk character (lowercase z is not a literal)
        ("cdd", 0),        # missing level
        ("cdd(99)", 4),    # out of range
        ("pdd(2)", 4),     # parameterless scheme given a parameter
        ("cpdd{0,0,0}", 0),  # empty class
        ("cpdd{0,1", 8),   # truncated braces
    ],
)
def test_parse_errors_carry_offsets(text, offset_at):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.offset == offset_at
    assert "offset" in str(err.value)


def test_parse_never_panics_on_junk():
    rng = random.Random(99)
    alphabet = "pxyzIXYZcdago1258[](){}, "
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
        try:
            parse(text)
        except ParseError as err:
            assert 0 <= err.offset <= len(text)


# ---------------------------------------------------------------- elaborate

def test_elaborate_worked_examples():
    assert to_text(elaborate(parse("px[py]"))) == "ZYZY"
    assert to_text(elaborate(parse("px[py[pz]]"))) == "IZXZIZXZ"


def test_elaborate_literal_axes():
    seq = elaborate(parse("ZZ"))
    assert seq.axes == (Z, Z)
    assert seq.provenance is None


def test_elaborate_named_schemes():
    assert equivalent(elaborate(parse("cdd(1)")), elaborate(parse("px[py]")))
    assert elaborate(parse("cdd(2)")).K == 16
    assert elaborate(parse("oudd(2)")).cpdd_class == CPDDClass(1, 1, 1)
    assert elaborate(parse("oudd(2)")).K == 8
    ga8b = elaborate(parse("ga8b"))
    assert ga8b.cpdd_class == CPDDClass(0, 1, 2)
    assert ga8b.K == 8
    assert ga8b.cpdd_class.N == 1


def test_elaborate_ga8b_structure():
    # published structure: two z projections wrapped around one y projection
    want = concat(projection(Z), concat(projection(Z), projection(Y)))
    assert elaborate(parse("ga8b")).axes == want.axes


def test_elaborate_classspec_canonical_pick():
    seq = elaborate(parse("cpdd{0,1,2}"))
    assert seq.cpdd_class == CPDDClass(0, 1, 2)
    assert seq.cpdd_class.N == 1
    # canonical representative nests z innermost, x outermost
    assert seq.provenance == (Z, Z, Y)


def test_elaborate_ga8_levels():
    assert elaborate(parse("ga8(1)")).K == 8
    assert elaborate(parse("ga8(2)")).cpdd_class == CPDDClass(2, 2, 2)


# -------------------------------------------------------------------- print

def test_to_text_examples():
    assert to_text(projection(Z)) == "ZZ"
    assert to_text(cpdd_from_order([Z, Y, X])) == "IZXZIZXZ"
    assert to_text(concat(projection(X), projection(Y))) == "ZYZY"


def test_round_trip_fixed_batch():
    rng = random.Random(0)
    axes = [X, Y, Z]
    for _ in range(200):
        order = [rng.choice(axes) for _ in range(rng.randint(1, 6))]
        seq = cpdd_from_order(order)
        again = elaborate(parse(to_text(seq)))
        assert again.axes == seq.axes


@settings(max_examples=100)
@given(st.lists(st.sampled_from([X, Y, Z]), min_size=1, max_size=6))
def test_round_trip_property(order):
    seq = cpdd_from_order(order)
    assert elaborate(parse(to_text(seq))).axes == seq.axes


@settings(max_examples=100)
@given(st.text(alphabet="IXYZ", min_size=1, max_size=12))
def test_round_trip_literals(text):
    seq = elaborate(parse(text))
    assert to_text(seq) == text
