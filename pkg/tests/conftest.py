"""
Shared fixtures and hypothesis strategies for the skewpbw test suite
"""

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from skewpbw.algebra.base_ring import AffineMap, BasePoly
from skewpbw.algebra.normal_form import Monomial, NormalElement
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.parsing.document import load_presentation

FIXTURES_DIR = Path(__file__).parent / "fixtures"

# Presentations expected to certify SMOOTH
SMOOTH_FIXTURES = [
    "kt_n2_a1",
    "kt_n2_a2",
    "kt_n2_b1",
    "kt_n2_b2",
    "kt_n2_c1",
    "kt_n2_d2",
    "kt_n2_e1",
    "kt_n2_e2",
    "kt_n2_e3",
    "kt_n2_g1",
    "kt_n2_g3",
    "kt_n2_g2_corrected",
    "kt_n2_i",
    "kt_n2_i_plain",
    "kt_n3_a1",
    "kt_n3_a2",
    "kt_n3_b1",
    "kt_n3_b2",
    "kt_n3_c",
    "kt_n3_d",
    "kt_n4_a",
    "kt_n4_b",
    "kt_n4_c",
    "kt_n4_d",
    "ktt_n2_a1",
    "ktt_n2_p1",
    "ktt_n3",
    "quantum_plane",
    "weyl",
    "enveloping_n2",
    "commutative",
]

# Small presentations used by the expensive per-fixture property tests
SMALL_SMOOTH_FIXTURES = [
    "kt_n2_a2",
    "kt_n2_c1",
    "kt_n2_e1",
    "kt_n2_g1",
    "kt_n2_i",
    "ktt_n2_a1",
    "ktt_n2_p1",
    "weyl",
]

PERTURBED_FIXTURES = ["ktt_n2_a1_perturbed", "ktt_n2_p1_perturbed", "ktt_n3_perturbed"]


def load_fixture(name: str) -> ExtensionPresentation:
    return load_presentation(FIXTURES_DIR / f"{name}.json")


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES_DIR / f"{name}.json"


@pytest.fixture
def commutative():
    return load_fixture("commutative")


def univariate(*coefficients) -> BasePoly:
    return BasePoly.from_coefficients(coefficients)


def kt_presentation(a, b, p, c=None, q=None) -> ExtensionPresentation:
    """m=1 presentation from per-generator scales, shifts and p coefficient lists."""
    sigma = [AffineMap.univariate(scale, shift) for scale, shift in zip(a, b)]
    delta_p = [univariate(*coeffs) for coeffs in p]
    return ExtensionPresentation.build(1, sigma, delta_p, c=c, q=q)


def element(pres: ExtensionPresentation, terms) -> NormalElement:
    """terms: {(base exponents, generator exponents): coefficient}."""
    return NormalElement(pres.base_arity, pres.n, {Monomial(tuple(b), tuple(g)): v for (b, g), v in terms.items()})


# ============= hypothesis strategies =============

small_ints = st.integers(min_value=-5, max_value=5)
nonzero_ints = small_ints.filter(lambda v: v != 0)


@st.composite
def rationals(draw, nonzero: bool = False):
    numerator = draw(nonzero_ints if nonzero else small_ints)
    return Fraction(numerator, draw(st.sampled_from([1, 1, 2, 3])))


@st.composite
def base_polys(draw, arity: int = 1, max_degree: int = 6):
    exponents = st.tuples(*[st.integers(0, max_degree) for _ in range(arity)]).filter(
        lambda exp: sum(exp) <= max_degree
    )
    terms = draw(st.dictionaries(exponents, rationals(), max_size=4))
    return BasePoly(arity, terms)


@st.composite
def affine_maps(draw, arity: int = 1, identity_allowed: bool = True):
    scales = tuple(draw(rationals(nonzero=True)) for _ in range(arity))
    shifts = tuple(draw(rationals()) for _ in range(arity))
    s = AffineMap(scales, shifts)
    if not identity_allowed and s.is_identity:
        return AffineMap(tuple(a + 1 for a in scales), shifts)
    return s


@st.composite
def kt_presentations(draw, n: int = 2):
    """Random m=1 presentations; not necessarily associative."""
    sigma = [draw(affine_maps()) for _ in range(n)]
    delta_p = [draw(base_polys(max_degree=3)) for _ in range(n)]
    pairs = n * (n - 1) // 2
    c = [draw(rationals(nonzero=True)) for _ in range(pairs)]
    return ExtensionPresentation.build(1, sigma, delta_p, c=c)


@st.composite
def elements(draw, pres: ExtensionPresentation, max_degree: int = 4, max_terms: int = 4):
    letters = pres.letter_count
    exponents = st.lists(st.integers(0, max_degree), min_size=letters, max_size=letters).filter(
        lambda exps: sum(exps) <= max_degree
    )
    raw = draw(st.dictionaries(exponents.map(tuple), rationals(), max_size=max_terms))
    m = pres.base_arity
    return NormalElement(m, pres.n, {Monomial(exp[:m], exp[m:]): v for exp, v in raw.items()})
