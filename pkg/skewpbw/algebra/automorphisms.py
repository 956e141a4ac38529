"""
Automorphisms Module
The standard maps nu_{t_l}, nu_{x_i} of a presentation, their action on normal
forms and the residual checks that certify they are commuting automorphisms.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from skewpbw.algebra.base_ring import AffineMap, BasePoly, derivative, substitute
from skewpbw.algebra.normal_form import Monomial, NormalElement, get_engine
from skewpbw.algebra.presentation import ExtensionPresentation, generator_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorImages:
    """Images of every letter (t's first, then x's) under a candidate endomorphism."""

    name: str
    images: Tuple[NormalElement, ...]

    def image(self, letter: int) -> NormalElement:
        return self.images[letter]

    def describe(self, pres: ExtensionPresentation) -> List[str]:
        return [f"{self.name}({name}) = {image}" for name, image in zip(pres.letter_names, self.images)]


@dataclass(frozen=True)
class ResidualReport:
    """LHS - RHS of every checked identity."""

    residuals: Tuple[Tuple[str, NormalElement], ...]

    @property
    def all_zero(self) -> bool:
        return all(residual.is_zero for _, residual in self.residuals)

    def nonzero(self) -> List[Tuple[str, NormalElement]]:
        return [(name, residual) for name, residual in self.residuals if not residual.is_zero]

    def lines(self) -> List[str]:
        return [f"{name}: {residual}" for name, residual in self.nonzero()]


def identity_images(pres: ExtensionPresentation, name: str = "id") -> GeneratorImages:
    return GeneratorImages(
        name,
        tuple(NormalElement.letter(pres.base_arity, pres.n, k) for k in range(pres.letter_count)),
    )


def build_standard_autos(pres: ExtensionPresentation) -> List[GeneratorImages]:
    """nu_{t_1..t_m} followed by nu_{x_1..x_n}."""
    m, n = pres.base_arity, pres.n
    letter = lambda k: NormalElement.letter(m, n, k)  # noqa: E731
    autos: List[GeneratorImages] = []

    for l in range(1, m + 1):
        images = [letter(k) for k in range(m)]
        for i in range(1, n + 1):
            x_i = letter(pres.generator_letter(i)).scale(pres.scale(i, l))
            if m == 1:
                x_i = x_i + NormalElement.from_base_poly(derivative(pres.p(i)), n)
            images.append(x_i)
        autos.append(GeneratorImages(f"nu_{pres.base_names[l - 1]}", tuple(images)))

    for i in range(1, n + 1):
        inverse = pres.sigma[i - 1].inverse()
        images = [NormalElement.from_base_poly(inverse.image(l), n) for l in range(m)]
        for j in range(1, n + 1):
            if j == i:
                images.append(letter(pres.generator_letter(j)))
                continue
            image = letter(pres.generator_letter(j)).scale(pres.c_of(i, j))
            images.append(image + NormalElement.constant(m, n, pres.q_of(i, j, i)))
        autos.append(GeneratorImages(f"nu_x{i}", tuple(images)))

    logger.debug(f"✓ Built {len(autos)} standard automorphisms for {pres.describe()}")
    return autos


def apply_auto(pres: ExtensionPresentation, nu: GeneratorImages, f: NormalElement) -> NormalElement:
    """Substitute the images into every monomial, multiply in order and reduce."""
    engine = get_engine(pres)
    result: Dict[Monomial, Fraction] = {}
    for mono, coeff in f.items():
        for image_mono, image_coeff in _monomial_image(pres, nu, mono).items():
            total = result.get(image_mono, Fraction(0)) + coeff * image_coeff
            if total:
                result[image_mono] = total
            else:
                result.pop(image_mono, None)
    return NormalElement(engine.m, engine.n, result)


def _monomial_image(pres: ExtensionPresentation, nu: GeneratorImages, mono: Monomial) -> NormalElement:
    engine = get_engine(pres)
    if mono.degree == 0:
        return NormalElement.one(engine.m, engine.n)
    key = (nu, mono)
    cached = engine.image_cache.get(key)
    if cached is not None:
        return cached
    exps = list(mono.base + mono.gens)
    last = max(k for k, e in enumerate(exps) if e)
    exps[last] -= 1
    prefix = Monomial(tuple(exps[: engine.m]), tuple(exps[engine.m:]))
    result = engine.multiply(_monomial_image(pres, nu, prefix), nu.image(last))
    engine.image_cache.set(key, result)
    return result


def compose(pres: ExtensionPresentation, outer: GeneratorImages, inner: GeneratorImages) -> GeneratorImages:
    """outer o inner, given by its images of the letters."""
    return GeneratorImages(
        f"{outer.name}o{inner.name}",
        tuple(apply_auto(pres, outer, image) for image in inner.images),
    )


def defining_relations(pres: ExtensionPresentation) -> List[Tuple[str, Tuple[int, int], NormalElement]]:
    """(relation id, letters of the left-hand word, normal right-hand side) for every relation."""
    m, n = pres.base_arity, pres.n
    relations = []
    for i in range(1, n + 1):
        x_i = NormalElement.letter(m, n, pres.generator_letter(i))
        for l in range(m):
            sigma_t = NormalElement.from_base_poly(pres.sigma[i - 1].image(l), n)
            rhs = get_engine(pres).multiply(sigma_t, x_i) + NormalElement.from_base_poly(pres.p(i), n)
            relations.append((f"x{i}*{pres.base_names[l]}", (pres.generator_letter(i), l), rhs))
    for i, j in generator_pairs(n):
        x_i = NormalElement.letter(m, n, pres.generator_letter(i))
        x_j = NormalElement.letter(m, n, pres.generator_letter(j))
        rhs = get_engine(pres).multiply(x_i, x_j).scale(pres.c_of(i, j))
        rhs = rhs + NormalElement.constant(m, n, pres.q_of(i, j, 0))
        for k in range(1, n + 1):
            rhs = rhs + NormalElement.letter(m, n, pres.generator_letter(k)).scale(pres.q_of(i, j, k))
        relations.append((f"x{j}*x{i}", (pres.generator_letter(j), pres.generator_letter(i)), rhs))
    return relations


def check_respects_relations(pres: ExtensionPresentation, nu: GeneratorImages) -> ResidualReport:
    """nu(L) - nu(R) for every defining relation L = R."""
    engine = get_engine(pres)
    residuals = []
    for relation_id, (first, second), rhs in defining_relations(pres):
        lhs_image = engine.multiply(nu.image(first), nu.image(second))
        residual = lhs_image - apply_auto(pres, nu, rhs)
        residuals.append((f"{nu.name} on {relation_id}", residual))
    report = ResidualReport(tuple(residuals))
    if report.all_zero:
        logger.debug(f"✓ {nu.name} respects every relation")
    else:
        logger.warning(f"⚠️ {nu.name} breaks {len(report.nonzero())} relation(s)")
    return report


def inverse_images(pres: ExtensionPresentation, nu: GeneratorImages) -> Optional[GeneratorImages]:
    """Explicit inverse of a map with affine base part and affine generator part, if it exists."""
    m, n = pres.base_arity, pres.n
    scales, shifts = [], []
    for l in range(m):
        image = nu.image(l)
        if image.generator_degree > 0:
            logger.debug(f"✗ {nu.name}: image of {pres.base_names[l]} leaves the base ring")
            return None
        base = image.base_part()
        unit = tuple(1 if k == l else 0 for k in range(m))
        allowed = {(0,) * m, unit}
        if any(exp not in allowed for exp in base.terms) or base.coefficient(unit) == 0:
            logger.debug(f"✗ {nu.name}: image of {pres.base_names[l]} is not an invertible affine map")
            return None
        scales.append(base.coefficient(unit))
        shifts.append(base.constant_term)
    base_inverse = AffineMap(tuple(scales), tuple(shifts)).inverse()

    linear: List[List[Fraction]] = []
    offsets: List[BasePoly] = []
    for i in range(1, n + 1):
        image = nu.image(pres.generator_letter(i))
        row = [Fraction(0)] * n
        offset: Dict[Tuple[int, ...], Fraction] = {}
        for mono, coeff in image.items():
            gen_degree = sum(mono.gens)
            if gen_degree == 0:
                offset[mono.base] = coeff
            elif gen_degree == 1 and not any(mono.base):
                row[mono.gens.index(1)] = coeff
            else:
                logger.debug(f"✗ {nu.name}: image of x{i} is not affine in the generators")
                return None
        linear.append(row)
        offsets.append(BasePoly(m, offset))

    matrix = Matrix([[Rational(v.numerator, v.denominator) for v in row] for row in linear])
    if matrix.det() == 0:
        logger.debug(f"✗ {nu.name}: linear part is singular")
        return None
    inverse_matrix = matrix.inv()

    images = [NormalElement.from_base_poly(base_inverse.image(l), n) for l in range(m)]
    shifted = [
        NormalElement.letter(m, n, pres.generator_letter(k))
        - NormalElement.from_base_poly(substitute(offsets[k - 1], base_inverse), n)
        for k in range(1, n + 1)
    ]
    for i in range(n):
        image = NormalElement.zero(m, n)
        for k in range(n):
            entry = inverse_matrix[i, k]
            if entry != 0:
                image = image + shifted[k].scale(Fraction(int(entry.p), int(entry.q)))
        images.append(image)
    return GeneratorImages(f"{nu.name}^-1", tuple(images))


def check_automorphism(pres: ExtensionPresentation, nu: GeneratorImages) -> bool:
    """Build the inverse and verify both composites fix every letter."""
    inverse = inverse_images(pres, nu)
    if inverse is None:
        logger.warning(f"⚠️ {nu.name} has no affine inverse")
        return False
    for k in range(pres.letter_count):
        letter = NormalElement.letter(pres.base_arity, pres.n, k)
        if apply_auto(pres, nu, inverse.image(k)) != letter:
            logger.warning(f"⚠️ {nu.name} o {inverse.name} moves {pres.letter_names[k]}")
            return False
        if apply_auto(pres, inverse, nu.image(k)) != letter:
            logger.warning(f"⚠️ {inverse.name} o {nu.name} moves {pres.letter_names[k]}")
            return False
    logger.debug(f"✓ {nu.name} is bijective")
    return True


def check_pairwise_commute(pres: ExtensionPresentation, nus: Sequence[GeneratorImages]) -> ResidualReport:
    """(nu o mu)(g) - (mu o nu)(g) for every unordered pair and every letter g."""
    residuals = []
    for nu, mu in combinations(nus, 2):
        for k, name in enumerate(pres.letter_names):
            residual = apply_auto(pres, nu, mu.image(k)) - apply_auto(pres, mu, nu.image(k))
            residuals.append((f"({nu.name},{mu.name}) on {name}", residual))
    report = ResidualReport(tuple(residuals))
    if not report.all_zero:
        logger.warning(f"⚠️ {len(report.nonzero())} non-commuting pair evaluation(s)")
    return report


@lru_cache(maxsize=64)
def cached_standard_autos(pres: ExtensionPresentation) -> Tuple[GeneratorImages, ...]:
    """build_standard_autos, shared per presentation; indexed by letter."""
    return tuple(build_standard_autos(pres))
