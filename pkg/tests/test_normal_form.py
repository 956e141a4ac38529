"""
Tests for normal forms, the rewriting engine and the diamond check
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    SMALL_SMOOTH_FIXTURES,
    base_polys,
    element,
    elements,
    kt_presentation,
    kt_presentations,
    load_fixture,
)
from skewpbw.algebra.base_ring import divided_difference, substitute
from skewpbw.algebra.normal_form import (
    Monomial,
    NormalElement,
    check_pbw_diamond,
    commrel_closed_form,
    get_engine,
    mul_gen_base,
    mul_gen_gen,
    multiply,
    reduce_word,
)
from skewpbw.error_handler import ShapeError, UnsupportedOperationError

KT_I = load_fixture("kt_n2_i")
KTT_P1 = load_fixture("ktt_n2_p1")


# ============= NormalElement =============

def test_zero_coefficients_are_dropped():
    """Test the canonical representation."""
    f = NormalElement(1, 2, {Monomial((1,), (0, 0)): 0, Monomial((0,), (1, 0)): Fraction(2, 4)})
    assert f.terms == {Monomial((0,), (1, 0)): Fraction(1, 2)}
    assert (f - f).is_zero


def test_shape_errors():
    """Test monomials that do not fit the presentation."""
    with pytest.raises(ShapeError):
        NormalElement(1, 2, {Monomial((1, 0), (0, 0)): 1})
    with pytest.raises(ShapeError):
        NormalElement(1, 1, {Monomial((-1,), (0,)): 1})
    with pytest.raises(ShapeError):
        NormalElement.one(1, 2) + NormalElement.one(1, 3)


# ============= commutation rules =============

def test_generator_past_base():
    """Test x1 t = (a t + b) x1 + p."""
    pres = kt_presentation((2,), (3,), ((5,),))
    assert str(mul_gen_base(pres, 1, 1)) == "2*t*x1 + 3*x1 + 5"


def test_generator_past_base_squared():
    """Test x1 t^2 = t^2 x1 + 2 t^3 for the Jordan-type derivation p = t^2."""
    pres = kt_presentation((1,), (0,), ((0, 0, 1),))
    assert mul_gen_base(pres, 1, 2) == element(pres, {((2,), (1,)): 1, ((3,), (0,)): 2})


def test_generator_past_generator():
    """Test x2 x1 = c x1 x2 + q."""
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0,)), c=[1], q=[[5, 0, 0]])
    assert str(mul_gen_gen(pres, 2, 1)) == "x1*x2 + 5"
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0,)), c=[3], q=[[0, 1, 2]])
    assert str(mul_gen_gen(pres, 2, 1)) == "3*x1*x2 + x1 + 2*x2"


def test_mul_gen_gen_needs_descending_pair():
    """Test shape error for j <= i."""
    with pytest.raises(ShapeError):
        mul_gen_gen(KT_I, 1, 2)


def test_two_variable_base_twist():
    """Test x1 t1 t2 over k[t1,t2]."""
    pres = load_fixture("ktt_n2_a1")
    result = mul_gen_base(pres, 1, (1, 1))
    # sigma_1 = (t1 + 1/2, t2 + 1/2), p_1 = 2
    expected = element(
        pres,
        {
            ((1, 1), (1, 0)): 1,
            ((1, 0), (1, 0)): Fraction(1, 2),
            ((0, 1), (1, 0)): Fraction(1, 2),
            ((0, 0), (1, 0)): Fraction(1, 4),
            ((1, 0), (0, 0)): 2,
            ((0, 1), (0, 0)): 2,
            ((0, 0), (0, 0)): 1,
        },
    )
    assert result == expected


@given(kt_presentations(), st.integers(min_value=1, max_value=2))
@settings(max_examples=100, deadline=None)
def test_engine_matches_closed_commutation_formula(pres, i):
    """Test the engine against the explicit x_i t^e expansion for every e <= 12."""
    for e in range(13):
        assert mul_gen_base(pres, i, e) == commrel_closed_form(pres, i, e)


@given(kt_presentations(), base_polys(max_degree=5), st.integers(min_value=1, max_value=2))
@settings(max_examples=100, deadline=None)
def test_twist_is_the_divided_difference(pres, f, i):
    """Test that x_i f = sigma_i(f) x_i + delta_p(f) with the divided difference."""
    sigma_f, delta_f = get_engine(pres).twist(i, f)
    assert sigma_f == substitute(f, pres.sigma[i - 1])
    assert delta_f == divided_difference(f, pres.sigma[i - 1], pres.p(i))


def test_closed_formula_is_univariate_only():
    """Test the k[t1,t2] refusal."""
    with pytest.raises(UnsupportedOperationError):
        commrel_closed_form(KTT_P1, 1, 2)


# ============= products =============

@given(elements(KT_I, max_degree=3), elements(KT_I, max_degree=3), elements(KT_I, max_degree=3))
@settings(max_examples=40, deadline=None)
def test_multiplication_is_associative(f, g, h):
    """Test (fg)h = f(gh) on an associative presentation."""
    engine = get_engine(KT_I)
    assert engine.multiply(engine.multiply(f, g), h) == engine.multiply(f, engine.multiply(g, h))


@given(elements(KTT_P1, max_degree=3), elements(KTT_P1, max_degree=3))
@settings(max_examples=40, deadline=None)
def test_multiplication_distributes(f, g):
    """Test f(g + 1) = fg + f over k[t1,t2]."""
    one = NormalElement.one(2, KTT_P1.n)
    assert multiply(KTT_P1, f, g + one) == multiply(KTT_P1, f, g) + f


def test_reduce_word_matches_left_fold():
    """Test that reduce_word multiplies letters left to right."""
    engine = get_engine(KT_I)
    word = (2, 1, 0, 2)
    expected = engine.multiply(
        engine.multiply(engine.multiply(engine.letter(2), engine.letter(1)), engine.letter(0)),
        engine.letter(2),
    )
    assert reduce_word(KT_I, word) == expected
    assert engine.word_text(word) == "x2*x1*t*x2"


def test_normal_words_are_fixed():
    """Test that a word already in normal order reduces to itself."""
    assert reduce_word(KT_I, (0, 0, 1, 2, 2)) == element(KT_I, {((2,), (1, 2)): 1})


def test_engine_memoises_products():
    """Test that repeated products hit the cache."""
    engine = get_engine(KT_I)
    f = element(KT_I, {((0,), (3, 1)): 1})
    g = element(KT_I, {((2,), (0, 1)): 1})
    engine.multiply(f, g)
    engine.multiply(f, g)
    monomial_stats = next(stats for stats in engine.cache_stats() if stats["name"] == "monomial")
    assert monomial_stats["hits"] >= 1


# ============= diamond check =============

@pytest.mark.parametrize("name", SMALL_SMOOTH_FIXTURES)
def test_diamond_is_clean_on_smooth_presentations(name):
    """Test that no bracketing disagrees up to degree 4."""
    assert check_pbw_diamond(load_fixture(name), 4) == []


def test_diamond_detects_non_confluent_three_generators():
    """Test the broken n=3 relations residual on x3 x2 x1."""
    residuals = check_pbw_diamond(load_fixture("kt_n3_broken"), 3)
    assert residuals
    on_word = [r for r in residuals if r.word == (3, 2, 1)]
    assert on_word
    square = element(load_fixture("kt_n3_broken"), {((0,), (0, 0, 2)): 1})
    assert all(r.residual in (square, -square) for r in on_word)
    assert str(on_word[0]).startswith("x3*x2*x1 split at 1")


def test_diamond_detects_non_associative_table_row():
    """Test that c = a1^-1 with a constant p2 is not associative."""
    assert check_pbw_diamond(load_fixture("kt_n2_g2_verbatim"), 3)
    assert check_pbw_diamond(load_fixture("kt_n2_g2_corrected"), 3) == []
