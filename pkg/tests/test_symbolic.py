"""Exact average-Hamiltonian engine: frozen worked examples and identities.

The first-order coefficients asserted for the ZZ sequence were frozen from
the matrix-logarithm oracle (see test_numsim for the numeric cross-check):
per tau_d, the x component is (-i/2)[B0,Bx] - (1/2){By,Bz}, the y component
is (-i/2)[B0,By] + (1/2){Bx,Bz}, and the z and identity components vanish.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpdd.pauli import PauliAxis
from cpdd.sequence import PulseSequence, concat, cpdd_from_order, projection
from cpdd.symbolic import (
    BathPoly,
    BathSymbol,
    GaussianRational,
    SBOperator,
    avg_h0,
    avg_h1,
    h0_generic,
    interval_hamiltonians,
    poly_commutator,
    project0,
    toggling_frames,
    verify_lemma1,
)
from cpdd.pauli import PhasedPauli

X, Y, Z, I = PauliAxis.X, PauliAxis.Y, PauliAxis.Z, PauliAxis.I
B0, BX, BY, BZ = BathSymbol.B0, BathSymbol.BX, BathSymbol.BY, BathSymbol.BZ


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def poly(terms):
    """terms: {(grade, word): (re, im) or int}"""
    out = {}
    for (grade, word), coef in terms.items():
        if isinstance(coef, tuple):
            coef = gr(*coef)
        else:
            coef = gr(coef)
        out[(grade, tuple(word))] = coef
    return BathPoly(out)


def literal(axes_time_order):
    return PulseSequence(tuple(PhasedPauli(0, a) for a in axes_time_order))


# --------------------------------------------------------------- h0_generic

def test_h0_generic_components():
    h = h0_generic()
    assert h.component(I) == poly({(0, (B0,)): 1})
    assert h.component(X) == poly({(0, (BX,)): 1})
    assert h.component(Y) == poly({(0, (BY,)): 1})
    assert h.component(Z) == poly({(0, (BZ,)): 1})


# ---------------------------------------------------------- toggling frames

def test_frames_of_zz():
    frames = toggling_frames(projection(Z), h0_generic())
    assert len(frames) == 2
    flipped = SBOperator(
        {
            I: poly({(0, (B0,)): 1}),
            X: poly({(0, (BX,)): -1}),
            Y: poly({(0, (BY,)): -1}),
            Z: poly({(0, (BZ,)): 1}),
        }
    )
    assert frames[0] == flipped
    assert frames[1] == h0_generic()


def test_frames_of_identity_pulses():
    seq = literal([I, I])
    frames = toggling_frames(seq, h0_generic())
    assert frames == [h0_generic(), h0_generic()]


def test_frame_count_matches_length():
    seq = cpdd_from_order([Z, Y, X])
    assert len(toggling_frames(seq, h0_generic())) == seq.K


def test_interval_hamiltonians_shifted():
    seq = projection(Z)
    frames = toggling_frames(seq, h0_generic())
    intervals = interval_hamiltonians(seq, h0_generic())
    assert intervals[0] == h0_generic()
    assert intervals[1] == frames[0]


# ------------------------------------------------------------------- avg_h0

def test_avg_h0_of_zz():
    out = avg_h0(toggling_frames(projection(Z), h0_generic()))
    want = SBOperator(
        {I: poly({(0, (B0,)): 1}), Z: poly({(0, (BZ,)): 1})}
    )
    assert out == want


def test_avg_h0_of_xy4_kills_everything():
    seq = literal([Y, X, Y, X])  # paper order XYXY
    out = avg_h0(toggling_frames(seq, h0_generic()))
    assert out == SBOperator({I: poly({(0, (B0,)): 1})})


def test_avg_h0_single_frame():
    h = h0_generic()
    assert avg_h0([h]) == h


def test_avg_h0_empty_rejected():
    with pytest.raises(ValueError):
        avg_h0([])


@settings(max_examples=60)
@given(st.lists(st.sampled_from([X, Y, Z]), min_size=1, max_size=5))
def test_avg_h0_linear_in_components(order):
    seq = cpdd_from_order(order)
    h1 = h0_generic()
    h2 = h0_generic().scale(gr(3, 2))
    lhs = avg_h0(toggling_frames(seq, h1 + h2))
    rhs = avg_h0(toggling_frames(seq, h1)) + avg_h0(toggling_frames(seq, h2))
    assert lhs == rhs


@settings(max_examples=80)
@given(st.lists(st.sampled_from([X, Y, Z]), min_size=1, max_size=6))
def test_avg_h0_matches_projection_chain(order):
    # zeroth order of a provenance sequence equals composing the kill maps
    seq = cpdd_from_order(order)
    out = avg_h0(toggling_frames(seq, h0_generic()))
    predicted = h0_generic()
    for axis in order:
        predicted = project0(axis, predicted)
    assert out == predicted
    cls = seq.cpdd_class
    for axis in (X, Y, Z):
        killed = out.component(axis).is_zero
        assert killed == (cls.d(axis) >= 1)


# ------------------------------------------------------------------- avg_h1

def test_avg_h1_of_zz_frozen():
    out = avg_h1(interval_hamiltonians(projection(Z), h0_generic()))
    want = SBOperator(
        {
            X: poly(
                {
                    (1, (B0, BX)): (0, Fraction(-1, 2)),
                    (1, (BX, B0)): (0, Fraction(1, 2)),
                    (1, (BY, BZ)): Fraction(-1, 2),
                    (1, (BZ, BY)): Fraction(-1, 2),
                }
            ),
            Y: poly(
                {
                    (1, (B0, BY)): (0, Fraction(-1, 2)),
                    (1, (BY, B0)): (0, Fraction(1, 2)),
                    (1, (BX, BZ)): Fraction(1, 2),
                    (1, (BZ, BX)): Fraction(1, 2),
                }
            ),
        }
    )
    assert out == want


def test_avg_h1_identical_frames_vanishes():
    h = h0_generic()
    assert avg_h1([h, h, h]).is_zero


def test_avg_h1_of_identity_sequence_vanishes():
    seq = literal([I, I])
    assert avg_h1(interval_hamiltonians(seq, h0_generic())).is_zero


def test_avg_h1_grades():
    out = avg_h1(interval_hamiltonians(projection(X), h0_generic()))
    for axis in PauliAxis:
        for (grade, _word), _coef in out.component(axis).items():
            assert grade == 1


# ----------------------------------------------------------------- project0

def test_project0_theorem_form():
    out = project0(Z, h0_generic())
    want = SBOperator({I: poly({(0, (B0,)): 1}), Z: poly({(0, (BZ,)): 1})})
    assert out == want


def test_project0_idempotent():
    h = h0_generic()
    assert project0(X, project0(X, h)) == project0(X, h)


def test_project0_chain_kills_all():
    h = h0_generic()
    out = project0(X, project0(Y, project0(Z, h)))
    assert out == SBOperator({I: poly({(0, (B0,)): 1})})
    # cross-check through the actual eight-pulse sequence
    seq = cpdd_from_order([Z, Y, X])
    assert avg_h0(toggling_frames(seq, h)) == out


def test_project0_equals_projection_average():
    h = h0_generic()
    for axis in (X, Y, Z):
        assert project0(axis, h) == avg_h0(toggling_frames(projection(axis), h))


def test_project0_rejects_identity():
    with pytest.raises(ValueError):
        project0(I, h0_generic())


# ---------------------------------------------------------------- bath poly

words = st.lists(st.sampled_from(list(BathSymbol)), min_size=0, max_size=3).map(tuple)
coefs = st.tuples(
    st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4)
).map(lambda t: GaussianRational(Fraction(t[0], t[2]), Fraction(t[1], t[2])))
polys = st.dictionaries(
    st.tuples(st.integers(0, 2), words), coefs, max_size=4
).map(BathPoly)


@settings(max_examples=100)
@given(polys, polys)
def test_poly_commutator_antisymmetric(p, q):
    assert poly_commutator(p, q) == -poly_commutator(q, p)


@settings(max_examples=60)
@given(polys)
def test_poly_self_commutator_zero(p):
    assert poly_commutator(p, p).is_zero


def test_poly_noncommutative_words():
    p = BathPoly.symbol(B0)
    q = BathPoly.symbol(BX)
    c = poly_commutator(p, q)
    assert c == poly({(0, (B0, BX)): 1, (0, (BX, B0)): -1})


def test_gaussian_rational_arithmetic():
    a = gr(Fraction(1, 2), Fraction(-1, 3))
    b = gr(0, 1)
    assert a * b == gr(Fraction(1, 3), Fraction(1, 2))
    assert a.times_i_pow(2) == -a
    assert a.times_i_pow(1) == a * b
    assert not gr(0, 0)


# ------------------------------------------------------------------ lemma 1

def test_lemma1_projection_pair():
    assert verify_lemma1(projection(X), projection(Y))


def test_lemma1_concatenated_inner():
    assert verify_lemma1(projection(Z), cpdd_from_order([Z, Y]))


def test_lemma1_rejects_noncyclic_inner():
    fragment = literal([Y, X])  # paper order XY, product not identity
    with pytest.raises(ValueError):
        verify_lemma1(projection(X), fragment)


def test_lemma1_rejects_nonprojection_outer():
    with pytest.raises(ValueError):
        verify_lemma1(cpdd_from_order([X, Y]), projection(Z))


def test_lemma1_holds_for_cyclic_literal_inner():
    # cyclicity, not provenance, is what the composition needs
    inner = literal([Y, X, Y, X])
    assert verify_lemma1(projection(Z), inner)


# ------------------------------------------------------------ serialization

def test_sboperator_json_roundtrip_structure():
    out = avg_h0(toggling_frames(projection(Z), h0_generic()))
    data = out.to_json()
    assert data["I"] == [{"grade": 0, "word": ["B0"], "re": "1", "im": "0"}]
    assert data["X"] == []
    assert data["Z"] == [{"grade": 0, "word": ["Bz"], "re": "1", "im": "0"}]


def test_pretty_printer_mentions_components():
    text = avg_h0(toggling_frames(projection(Z), h0_generic())).pretty()
    assert "sigma_z" in text and "B0" in text
