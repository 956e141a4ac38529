"""
Tests for the standard automorphisms nu_t, nu_x and their residual checks
"""

from fractions import Fraction

import pytest

from conftest import PERTURBED_FIXTURES, SMALL_SMOOTH_FIXTURES, element, kt_presentation, load_fixture
from skewpbw.algebra.automorphisms import (
    GeneratorImages,
    apply_auto,
    build_standard_autos,
    cached_standard_autos,
    check_automorphism,
    check_pairwise_commute,
    check_respects_relations,
    compose,
    defining_relations,
    identity_images,
    inverse_images,
)
from skewpbw.algebra.normal_form import NormalElement


def _auto(pres, name):
    return next(nu for nu in cached_standard_autos(pres) if nu.name == name)


def test_standard_auto_names():
    """Test nu_t's first, then nu_x's."""
    assert [nu.name for nu in build_standard_autos(load_fixture("kt_n2_i"))] == ["nu_t", "nu_x1", "nu_x2"]
    assert [nu.name for nu in build_standard_autos(load_fixture("ktt_n2_a1"))] == [
        "nu_t1",
        "nu_t2",
        "nu_x1",
        "nu_x2",
    ]


def test_nu_x_inverts_sigma_on_base():
    """Test nu_x1(t) = sigma_1^-1(t)."""
    pres = kt_presentation((2, 1), (6, 0), ((0,), (0,)))
    nu = _auto(pres, "nu_x1")
    assert str(nu.image(0)) == "1/2*t - 3"
    assert nu.describe(pres)[0] == "nu_x1(t) = 1/2*t - 3"


def test_nu_t_adds_derivative_of_p():
    """Test nu_t(x_i) = a_i x_i + p_i'."""
    nu = _auto(load_fixture("kt_n2_i"), "nu_t")
    assert [str(image) for image in nu.images] == ["t", "2*x1 + 1", "3*x2 + 2"]


def test_apply_auto_is_multiplicative_on_powers():
    """Test nu_x1(x2^2) = (c x2 + q^(1))^2."""
    pres = kt_presentation((1, 1), (0, 0), ((0,), (0,)), c=[3], q=[[0, 1, 0]])
    x2_squared = element(pres, {((0,), (0, 2)): 1})
    image = apply_auto(pres, _auto(pres, "nu_x1"), x2_squared)
    assert image == element(pres, {((0,), (0, 2)): 9, ((0,), (0, 1)): 6, ((0,), (0, 0)): 1})


def test_defining_relations_count():
    """Test m*n base relations plus one per generator pair."""
    pres = load_fixture("ktt_n3")
    assert len(defining_relations(pres)) == 2 * 3 + 3


@pytest.mark.parametrize("name", SMALL_SMOOTH_FIXTURES)
def test_standard_maps_are_commuting_automorphisms(name):
    """Test the three automorphism checks on smooth presentations."""
    pres = load_fixture(name)
    autos = cached_standard_autos(pres)
    for nu in autos:
        assert check_respects_relations(pres, nu).all_zero
        assert check_automorphism(pres, nu)
    assert check_pairwise_commute(pres, autos).all_zero


@pytest.mark.parametrize("name", PERTURBED_FIXTURES + ["kt_n2_f", "kt_n2_h"])
def test_perturbed_presentations_break_a_relation(name):
    """Test that some standard map fails to respect the relations."""
    pres = load_fixture(name)
    assert any(not check_respects_relations(pres, nu).all_zero for nu in cached_standard_autos(pres))


def test_perturbed_residual_value():
    """Test the exact residual of nu_x1 on x2 t1."""
    pres = load_fixture("ktt_n2_p1_perturbed")
    residuals = dict(check_respects_relations(pres, _auto(pres, "nu_x1")).nonzero())
    assert str(residuals["nu_x1 on x2*t1"]) == "-7/2*x2"


@pytest.mark.parametrize("a2, b1, c", [(2, 1, 1), (3, 2, 5), (-1, 1, 2)])
def test_shifted_base_obstruction(a2, b1, c):
    """Test the x2 coefficient c*b1*(a2-1) of nu_x1 on x2 t when p2 = t."""
    pres = kt_presentation((1, a2), (b1, 0), ((1,), (0, 1)), c=[c])
    residuals = dict(check_respects_relations(pres, _auto(pres, "nu_x1")).nonzero())
    expected = element(pres, {((0,), (0, 1)): c * b1 * (a2 - 1), ((1,), (0, 0)): c - 1, ((0,), (0, 0)): b1})
    assert residuals["nu_x1 on x2*t"] == expected


@pytest.mark.parametrize("a1, b2, c", [(2, 1, 1), (3, 2, 4), (-2, 1, 3)])
def test_shifted_base_obstruction_on_the_first_generator(a1, b2, c):
    """Test the x1 coefficient b2*(a1-1)/c of nu_x2 on x1 t when p1 = t."""
    pres = kt_presentation((a1, 1), (0, b2), ((0, 1), (1,)), c=[c])
    residuals = dict(check_respects_relations(pres, _auto(pres, "nu_x2")).nonzero())
    expected = element(
        pres,
        {((0,), (1, 0)): Fraction(b2 * (a1 - 1), c), ((1,), (0, 0)): Fraction(1, c) - 1, ((0,), (0, 0)): b2},
    )
    assert residuals["nu_x2 on x1*t"] == expected


def test_non_commuting_shifts():
    """Test that nu_x1 and nu_x2 disagree on t when the shifts are incompatible."""
    pres = load_fixture("non_commuting_shifts")
    report = check_pairwise_commute(pres, cached_standard_autos(pres))
    residuals = {name: str(value) for name, value in report.nonzero()}
    assert residuals["(nu_x1,nu_x2) on t"] == "-1/2"
    assert not report.all_zero


def test_inverse_composes_to_identity():
    """Test nu o nu^-1 = id on every letter."""
    pres = load_fixture("kt_n2_e1")
    for nu in cached_standard_autos(pres):
        inverse = inverse_images(pres, nu)
        assert inverse is not None
        assert compose(pres, nu, inverse).images == identity_images(pres).images


def test_singular_map_is_not_bijective():
    """Test that a map killing x1 has no inverse."""
    pres = load_fixture("kt_n2_i")
    images = list(identity_images(pres).images)
    images[1] = NormalElement.zero(1, 2)
    collapsed = GeneratorImages("collapse", tuple(images))
    assert inverse_images(pres, collapsed) is None
    assert not check_automorphism(pres, collapsed)


def test_non_affine_base_image_is_rejected():
    """Test that t -> t^2 is refused by the inverse builder."""
    pres = load_fixture("kt_n2_i")
    images = list(identity_images(pres).images)
    images[0] = element(pres, {((2,), (0, 0)): 1})
    assert inverse_images(pres, GeneratorImages("square", tuple(images))) is None
