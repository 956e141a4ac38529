"""
Tests for presentation conventions, shape validation and case classification
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import SMOOTH_FIXTURES, kt_presentation, kt_presentations, load_fixture, univariate
from skewpbw.algebra.base_ring import AffineMap, BasePoly
from skewpbw.algebra.presentation import (
    ExtensionPresentation,
    classify_case,
    generator_pairs,
    matched_labels,
    residual_summary,
    validate_shape,
)
from skewpbw.error_handler import ShapeError


def _label_ids(pres):
    return [label.label_id for label in matched_labels(classify_case(pres))]


# ============= conventions =============

def test_generator_pairs_order():
    """Test the (1,2), (1,3), (2,3) storage order."""
    assert generator_pairs(3) == [(1, 2), (1, 3), (2, 3)]
    assert generator_pairs(1) == []


def test_c_and_q_conventions():
    """Test c_ji = c_ij^-1 and q_ji = -c_ij^-1 q_ij."""
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0,)), c=[4], q=[[2, 6, 8]])
    assert pres.c_of(1, 2) == 4
    assert pres.c_of(2, 1) == Fraction(1, 4)
    assert pres.c_of(2, 2) == 1
    assert pres.q_of(1, 2, 1) == 6
    assert pres.q_of(2, 1, 1) == Fraction(-3, 2)
    assert pres.q_of(2, 1, 0) == Fraction(-1, 2)
    assert pres.q_of(1, 1, 2) == 0


def test_build_defaults():
    """Test that omitted c is 1 and omitted q is 0."""
    pres = kt_presentation((2, 3, 5), (0, 0, 0), ((0,), (0,), (0,)))
    assert pres.c == (1, 1, 1)
    assert all(row == (0, 0, 0, 0) for row in pres.q)
    assert pres.letter_names == ("t", "x1", "x2", "x3")
    assert pres.generator_letter(3) == 3


def test_pair_index_rejects_bad_pair():
    """Test shape error for out-of-range pairs."""
    pres = load_fixture("kt_n2_i")
    with pytest.raises(ShapeError):
        pres.pair_index(2, 1)


# ============= validate_shape =============

@pytest.mark.parametrize("name", SMOOTH_FIXTURES)
def test_fixtures_are_well_formed(name):
    """Test that every shipped fixture passes shape validation."""
    assert validate_shape(load_fixture(name)) == []


def test_zero_scale_and_zero_c_are_reported():
    """Test that each broken invariant is named by field."""
    pres = ExtensionPresentation.build(
        1,
        [AffineMap.univariate(0, 1), AffineMap.univariate(2, 0)],
        [BasePoly.zero(1), BasePoly.zero(1)],
        c=[0],
    )
    fields = [violation.field for violation in validate_shape(pres)]
    assert fields == ["sigma[1]", "c[1,2]"]


def test_count_mismatches_are_reported():
    """Test missing delta_p entries and short q rows."""
    pres = ExtensionPresentation(
        base_arity=1,
        n=2,
        sigma=(AffineMap.identity(1), AffineMap.identity(1)),
        delta_p=(BasePoly.zero(1),),
        c=(Fraction(1),),
        q=((Fraction(0),),),
    )
    messages = [str(violation) for violation in validate_shape(pres)]
    assert "delta_p: expected 2 polynomials, got 1" in messages
    assert "q[1,2]: expected 3 values, got 1" in messages


def test_nonconstant_p_over_two_variables():
    """Test that p must be constant over k[t1,t2]."""
    pres = ExtensionPresentation.build(
        2,
        [AffineMap.identity(2)],
        [BasePoly.variable(2, 1)],
    )
    assert [v.field for v in validate_shape(pres)] == ["delta_p[1]"]


def test_classify_rejects_malformed_presentation():
    """Test that classification refuses shape violations."""
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0,)), c=[0])
    with pytest.raises(ShapeError):
        classify_case(pres)


# ============= classify_case =============

def test_classify_two_generator_rows():
    """Test matched rows of the k[t] two-generator table."""
    assert _label_ids(load_fixture("kt_n2_a1"))[0] == "k[t]:n=2/(a).1"
    assert "k[t]:n=2/(i)" in _label_ids(load_fixture("kt_n2_i"))
    assert "k[t]:n=2/(g).2" in _label_ids(load_fixture("kt_n2_g2_verbatim"))
    assert "k[t]:n=2/(g).2" not in _label_ids(load_fixture("kt_n2_g2_corrected"))


def test_sigma_derivation_label():
    """Test the linear-p condition system."""
    assert "k[t]:sigma-derivation/(all)" in _label_ids(load_fixture("kt_n2_i"))
    pres = kt_presentation((2, 3), (0, 0), ((0, 0, 1), (0,)))
    assert "k[t]:sigma-derivation/(all)" not in _label_ids(pres)


def test_obstruction_rows_never_match():
    """Test that the (f) and (h) rows report their obstruction."""
    for name, label_id in (("kt_n2_f", "k[t]:n=2/(f)"), ("kt_n2_h", "k[t]:n=2/(h)")):
        labels = {label.label_id: label for label in classify_case(load_fixture(name))}
        assert not labels[label_id].matched
        summary = residual_summary(labels.values())
        assert summary[label_id]


def test_classify_two_variable_base():
    """Test that k[t1,t2] presentations evaluate the condition system."""
    labels = {label.label_id: label for label in classify_case(load_fixture("ktt_n2_a1"))}
    assert labels["k[t1,t2]:conditions/(all)"].matched
    perturbed = {label.label_id: label for label in classify_case(load_fixture("ktt_n3_perturbed"))}
    assert "k[t1,t2]:conditions/(all)" in perturbed


def test_general_table_for_three_generators():
    """Test that n=3 uses its own table id."""
    labels = classify_case(load_fixture("kt_n3_a1"))
    assert any(label.table == "k[t]:n=3" for label in labels)


@given(kt_presentations())
@settings(max_examples=50, deadline=None)
def test_matched_labels_have_zero_residuals(pres):
    """Test that a matched label carries only zero residuals."""
    for label in matched_labels(classify_case(pres)):
        assert label.nonzero_residuals() == []


def test_unmatched_residual_is_a_polynomial():
    """Test that residual values are base polynomials."""
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0, 0, 1)), c=[3])
    labels = {label.label_id: label for label in classify_case(pres)}
    residuals = dict(labels["k[t]:n=2/(a).1"].nonzero_residuals())
    assert residuals["p2 = 0"] == univariate(0, 0, 1)
