"""
Random Sampling
Seeded random algebra elements and forms for the property stages of certification.
"""

from fractions import Fraction
from itertools import combinations
from typing import List

import numpy as np

from skewpbw.algebra.normal_form import Monomial, NormalElement
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.calculus.forms import DifferentialForm
from skewpbw.config import RANDOM_MAX_TERMS

COEFFICIENT_RANGE = 7
DENOMINATORS = (1, 1, 1, 2, 3)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for one stage, so stage results do not depend on stage order."""
    return np.random.default_rng([seed, *stream])


def random_rational(rng: np.random.Generator) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = int(rng.integers(-COEFFICIENT_RANGE, COEFFICIENT_RANGE + 1))
    return Fraction(numerator, int(rng.choice(DENOMINATORS)))


def random_monomial(pres: ExtensionPresentation, rng: np.random.Generator, degree: int) -> Monomial:
    total = int(rng.integers(0, degree + 1))
    exps = [int(e) for e in rng.multinomial(total, [1 / pres.letter_count] * pres.letter_count)]
    m = pres.base_arity
    return Monomial(tuple(exps[:m]), tuple(exps[m:]))


def random_element(
    pres: ExtensionPresentation,
    rng: np.random.Generator,
    degree: int,
    max_terms: int = RANDOM_MAX_TERMS,
) -> NormalElement:
    """Up to max_terms random monomials of degree <= degree; may be zero."""
    count = int(rng.integers(1, max_terms + 1))
    terms = {}
    for _ in range(count):
        mono = random_monomial(pres, rng, degree)
        terms[mono] = terms.get(mono, Fraction(0)) + random_rational(rng)
    return NormalElement(pres.base_arity, pres.n, terms)


def random_form(
    pres: ExtensionPresentation,
    rng: np.random.Generator,
    grade: int,
    coeff_degree: int,
    max_terms: int = 2,
) -> DifferentialForm:
    wedges: List[tuple] = list(combinations(range(pres.letter_count), grade))
    picks = rng.choice(len(wedges), size=min(max_terms, len(wedges)), replace=False)
    terms = {wedges[int(k)]: random_element(pres, rng, coeff_degree) for k in picks}
    return DifferentialForm(pres.base_arity, pres.n, grade, terms)
