"""
Integral Forms Module
Dual bases omega_i^j / omega-bar_i of the exterior algebra and the reconstruction
identity  test = sum_i omega_i * pi_omega(omega-bar_i ^ test).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from skewpbw.algebra.normal_form import NormalElement
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.calculus.forms import (
    DifferentialForm,
    pi_omega,
    right_multiply,
    swap_scale,
    wedge,
)
from skewpbw.error_handler import ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegralGenerators:
    """For each grade j the basis wedges omega_i^j and their complementary partners."""

    top: int
    forms: Dict[int, Tuple[DifferentialForm, ...]]
    duals: Dict[int, Tuple[DifferentialForm, ...]]

    def pairs(self, grade: int) -> List[Tuple[DifferentialForm, DifferentialForm]]:
        if not 0 <= grade <= self.top:
            raise ShapeError(f"grade {grade} outside 0..{self.top}")
        return list(zip(self.forms[grade], self.duals[grade]))

    def count(self, grade: int) -> int:
        return len(self.forms[grade])


def dual_prefactor(pres: ExtensionPresentation, subset: Tuple[int, ...]) -> Fraction:
    """(-1)^|P| prod_{(s,r) in P} kappa(s, r)^-1 with P = {(s in S, r in complement) : s < r}."""
    complement = [r for r in range(pres.letter_count) if r not in subset]
    factor = Fraction(1)
    for s in subset:
        for r in complement:
            if s < r:
                factor /= -swap_scale(pres, s, r)
    return factor


def integral_generators(pres: ExtensionPresentation) -> IntegralGenerators:
    m, n, top = pres.base_arity, pres.n, pres.letter_count
    forms: Dict[int, Tuple[DifferentialForm, ...]] = {}
    duals: Dict[int, Tuple[DifferentialForm, ...]] = {}
    for grade in range(top + 1):
        grade_forms, grade_duals = [], []
        for subset in combinations(range(top), grade):
            complement = tuple(r for r in range(top) if r not in subset)
            grade_forms.append(DifferentialForm.basis(m, n, subset))
            scalar = NormalElement.constant(m, n, dual_prefactor(pres, subset))
            grade_duals.append(DifferentialForm.basis(m, n, complement, scalar))
        forms[grade] = tuple(grade_forms)
        duals[grade] = tuple(grade_duals)
    logger.debug(f"✓ Built integral generators for {pres.describe()}")
    return IntegralGenerators(top, forms, duals)


def reconstruct_check(pres: ExtensionPresentation, k: int, test: DifferentialForm) -> DifferentialForm:
    """sum_i omega_i^k * pi_omega(omega-bar_i ^ test) - test; zero when the identity holds."""
    if test.grade != k:
        raise ShapeError(f"test form has grade {test.grade}, expected {k}")
    generators = integral_generators(pres)
    total = DifferentialForm.zero(pres.base_arity, pres.n, k)
    for form, dual in generators.pairs(k):
        coefficient = pi_omega(pres, wedge(pres, dual, test))
        if not coefficient.is_zero:
            total = total + right_multiply(pres, form, coefficient)
    return total - test
