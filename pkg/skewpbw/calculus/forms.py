"""
Differential Forms Module
Right-module forms over the algebra, the twisted left action, the exterior
product, the partial derivatives, the differential d and the volume form maps.

A form monomial is a strictly increasing tuple of letter indices (dt's first,
then dx_1..dx_n); coefficients sit on the right: omega_S * f.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from skewpbw.algebra.automorphisms import GeneratorImages, apply_auto, cached_standard_autos
from skewpbw.algebra.cache import ProductCache
from skewpbw.algebra.normal_form import Monomial, NormalElement, NormalFormEngine, get_engine
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.config import PRODUCT_CACHE_MAX_SIZE
from skewpbw.error_handler import ShapeError, UnsupportedOperationError

logger = logging.getLogger(__name__)

FormMonomial = Tuple[int, ...]


class DifferentialForm:
    """Homogeneous form sum omega_S * f_S with right coefficients in normal form."""

    __slots__ = ("base_arity", "n", "grade", "_terms")

    def __init__(
        self,
        base_arity: int,
        n: int,
        grade: int,
        terms: Optional[Mapping[FormMonomial, NormalElement]] = None,
    ):
        top = base_arity + n
        if not 0 <= grade <= top + 1:
            raise ShapeError(f"grade {grade} outside 0..{top}")
        clean: Dict[FormMonomial, NormalElement] = {}
        for wedge, coeff in (terms or {}).items():
            wedge = tuple(wedge)
            if len(wedge) != grade:
                raise ShapeError(f"form monomial {wedge} does not have grade {grade}")
            if any(a >= b for a, b in zip(wedge, wedge[1:])) or any(not 0 <= k < top for k in wedge):
                raise ShapeError(f"form monomial {wedge} is not strictly increasing in 0..{top - 1}")
            if (coeff.base_arity, coeff.n) != (base_arity, n):
                raise ShapeError("coefficient belongs to another presentation")
            if not coeff.is_zero:
                clean[wedge] = coeff
        self.base_arity = base_arity
        self.n = n
        self.grade = grade
        self._terms = clean

    # ---------- constructors ----------

    @classmethod
    def zero(cls, base_arity: int, n: int, grade: int) -> "DifferentialForm":
        return cls(base_arity, n, grade)

    @classmethod
    def basis(
        cls, base_arity: int, n: int, wedge: Sequence[int], coeff: Optional[NormalElement] = None
    ) -> "DifferentialForm":
        """omega_S * coeff (coeff defaults to 1)."""
        if coeff is None:
            coeff = NormalElement.one(base_arity, n)
        return cls(base_arity, n, len(wedge), {tuple(wedge): coeff})

    @classmethod
    def scalar(cls, f: NormalElement) -> "DifferentialForm":
        """A grade-0 form."""
        return cls(f.base_arity, f.n, 0, {(): f})

    # ---------- inspection ----------

    @property
    def terms(self) -> Dict[FormMonomial, NormalElement]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, wedge: Sequence[int]) -> NormalElement:
        return self._terms.get(tuple(wedge), NormalElement.zero(self.base_arity, self.n))

    # ---------- linear structure ----------

    def _check_compatible(self, other: "DifferentialForm") -> None:
        if (self.base_arity, self.n, self.grade) != (other.base_arity, other.n, other.grade):
            raise ShapeError(f"cannot combine grade {self.grade} and grade {other.grade} forms")

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self._terms)
        for wedge, coeff in other._terms.items():
            terms[wedge] = terms[wedge] + coeff if wedge in terms else coeff
        return DifferentialForm(self.base_arity, self.n, self.grade, terms)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.base_arity, self.n, self.grade, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "DifferentialForm":
        return DifferentialForm(
            self.base_arity, self.n, self.grade, {w: c.scale(factor) for w, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.base_arity, self.n, self.grade) == (other.base_arity, other.n, other.grade) and (
            self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.base_arity, self.n, self.grade, frozenset(self._terms.items())))

    def __str__(self) -> str:
        from skewpbw.parsing.expression import format_form

        return format_form(self)

    def __repr__(self) -> str:
        return f"DifferentialForm(grade={self.grade}, {self})"


def swap_scale(pres: ExtensionPresentation, s: int, r: int) -> Fraction:
    """kappa(s, r) for letters s < r, so that dg_r ^ dg_s = -kappa(s, r) dg_s ^ dg_r.

    kappa(s, r) is the coefficient of g_r in nu_{g_s}(g_r): 1 for two base letters,
    a_i (or a_{ill}) for t_l before x_i, c_{i,j} for x_i before x_j.
    """
    if not s < r:
        raise ShapeError(f"swap_scale needs s < r, got {s}, {r}")
    m = pres.base_arity
    if r < m:
        return Fraction(1)
    if s < m:
        return pres.scale(r - m + 1, s + 1)
    return pres.c_of(s - m + 1, r - m + 1)


class DifferentialCalculus:
    """Memoised calculus operations for one presentation."""

    def __init__(self, pres: ExtensionPresentation):
        self.pres = pres
        self.engine: NormalFormEngine = get_engine(pres)
        self.autos: Tuple[GeneratorImages, ...] = cached_standard_autos(pres)
        self.m = pres.base_arity
        self.n = pres.n
        self.top = pres.letter_count
        self._partial_cache = ProductCache("partials", PRODUCT_CACHE_MAX_SIZE)

    def _split(self, exps: Sequence[int]) -> Monomial:
        return Monomial(tuple(exps[: self.m]), tuple(exps[self.m:]))

    def nu_sequence(self, letters: Iterable[int], a: NormalElement) -> NormalElement:
        """nu_{g_k} o ... o nu_{g_1} (a) for letters g_1, ..., g_k."""
        for letter in letters:
            a = apply_auto(self.pres, self.autos[letter], a)
        return a

    def partial_of_monomial(self, letter: int, mono: Monomial) -> NormalElement:
        """d_g(w) = sum over occurrences of g in w of nu_g(prefix) * suffix."""
        key = (letter, mono)
        cached = self._partial_cache.get(key)
        if cached is not None:
            return cached
        exps = list(mono.base + mono.gens)
        power = exps[letter]
        result = NormalElement.zero(self.m, self.n)
        for r in range(power):
            prefix = exps[:letter] + [r] + [0] * (self.top - letter - 1)
            suffix = [0] * letter + [power - 1 - r] + exps[letter + 1:]
            prefix_element = NormalElement.monomial(*self._split(prefix))
            suffix_element = NormalElement.monomial(*self._split(suffix))
            twisted = apply_auto(self.pres, self.autos[letter], prefix_element)
            result = result + self.engine.multiply(twisted, suffix_element)
        self._partial_cache.set(key, result)
        return result

    def partials(self, f: NormalElement) -> List[NormalElement]:
        result = [NormalElement.zero(self.m, self.n) for _ in range(self.top)]
        for mono, coeff in f.items():
            for letter in range(self.top):
                if mono.base[letter] if letter < self.m else mono.gens[letter - self.m]:
                    result[letter] = result[letter] + self.partial_of_monomial(letter, mono).scale(coeff)
        return result

    def wedge_factor(self, left: Sequence[int], right: Sequence[int]) -> Fraction:
        """Scalar picked up when sorting omega_left ^ omega_right into increasing order."""
        factor = Fraction(1)
        for s in left:
            for r in right:
                if r < s:
                    factor *= -swap_scale(self.pres, r, s)
        return factor


@lru_cache(maxsize=64)
def get_calculus(pres: ExtensionPresentation) -> DifferentialCalculus:
    """Shared calculus context (engine, standard maps, partial cache) for a presentation."""
    return DifferentialCalculus(pres)


def _check_form(pres: ExtensionPresentation, form: DifferentialForm) -> None:
    if (form.base_arity, form.n) != (pres.base_arity, pres.n):
        raise ShapeError("form does not belong to this presentation")


def left_action(pres: ExtensionPresentation, a: NormalElement, form: DifferentialForm) -> DifferentialForm:
    """a * (omega_S * f) = omega_S * nu_S(a) * f."""
    _check_form(pres, form)
    calc = get_calculus(pres)
    terms = {
        wedge: calc.engine.multiply(calc.nu_sequence(wedge, a), coeff) for wedge, coeff in form.items()
    }
    return DifferentialForm(pres.base_arity, pres.n, form.grade, terms)


def right_multiply(pres: ExtensionPresentation, form: DifferentialForm, b: NormalElement) -> DifferentialForm:
    """(omega_S * f) * b = omega_S * (f b)."""
    _check_form(pres, form)
    engine = get_engine(pres)
    terms = {wedge: engine.multiply(coeff, b) for wedge, coeff in form.items()}
    return DifferentialForm(pres.base_arity, pres.n, form.grade, terms)


def wedge(pres: ExtensionPresentation, f: DifferentialForm, g: DifferentialForm) -> DifferentialForm:
    """Exterior product; coefficients of f move right across g's differentials via nu."""
    _check_form(pres, f)
    _check_form(pres, g)
    calc = get_calculus(pres)
    grade = f.grade + g.grade
    if grade > calc.top:
        return DifferentialForm.zero(pres.base_arity, pres.n, min(grade, calc.top + 1))
    terms: Dict[FormMonomial, NormalElement] = {}
    for left, a in f.items():
        for right, b in g.items():
            if set(left) & set(right):
                continue
            factor = calc.wedge_factor(left, right)
            coeff = calc.engine.multiply(calc.nu_sequence(right, a), b).scale(factor)
            key = tuple(sorted(left + right))
            terms[key] = terms[key] + coeff if key in terms else coeff
    return DifferentialForm(pres.base_arity, pres.n, grade, terms)


def partials(pres: ExtensionPresentation, f: NormalElement) -> List[NormalElement]:
    """[d_{t_1}, ..., d_{x_n}](f), one entry per letter, with d(f) = sum dg * d_g(f)."""
    return get_calculus(pres).partials(f)


def d(pres: ExtensionPresentation, form: DifferentialForm) -> DifferentialForm:
    """Exterior derivative; d(omega_S f) = (-1)^|S| omega_S ^ df, top forms go to zero."""
    _check_form(pres, form)
    calc = get_calculus(pres)
    grade = form.grade
    if grade >= calc.top:
        return DifferentialForm.zero(pres.base_arity, pres.n, calc.top + 1)
    sign = -1 if grade % 2 else 1
    terms: Dict[FormMonomial, NormalElement] = {}
    for wedge_letters, coeff in form.items():
        for letter, partial in enumerate(calc.partials(coeff)):
            if partial.is_zero or letter in wedge_letters:
                continue
            factor = calc.wedge_factor(wedge_letters, (letter,)) * sign
            key = tuple(sorted(wedge_letters + (letter,)))
            value = partial.scale(factor)
            terms[key] = terms[key] + value if key in terms else value
    return DifferentialForm(pres.base_arity, pres.n, grade + 1, terms)


def volume_form(pres: ExtensionPresentation, a: Optional[NormalElement] = None) -> DifferentialForm:
    """omega * a with omega = dt_1 ^ ... ^ dx_n."""
    return DifferentialForm.basis(pres.base_arity, pres.n, tuple(range(pres.letter_count)), a)


def pi_omega(pres: ExtensionPresentation, top: DifferentialForm) -> NormalElement:
    """The unique a with top = omega * a."""
    _check_form(pres, top)
    if top.grade != pres.letter_count:
        raise ShapeError(f"pi_omega needs a grade-{pres.letter_count} form, got grade {top.grade}")
    return top.coefficient(tuple(range(pres.letter_count)))


def nu_omega(pres: ExtensionPresentation, a: NormalElement) -> NormalElement:
    """(nu_{t_1} o ... o nu_{x_n})(a): nu_{x_n} is applied first."""
    calc = get_calculus(pres)
    return calc.nu_sequence(reversed(range(calc.top)), a)


def partials_closed_form(pres: ExtensionPresentation, f: NormalElement) -> List[NormalElement]:
    """[d_t, d_x1, d_x2](f) from the explicit monomial formulas (m=1, n=2 only):

    d_t(t^k x1^l x2^s)  = k t^(k-1) x1^l x2^s
    d_x1(t^k x1^l x2^s) = l a_1^-k (t - b_1)^k x1^(l-1) x2^s
    d_x2(t^k x1^l x2^s) = s a_2^-k c^-l (t - b_2)^k (x1 - q^(2))^l x2^(s-1)
    """
    if (pres.base_arity, pres.n) != (1, 2):
        raise UnsupportedOperationError("closed-form partials are stated for m=1, n=2 only")
    a1, b1 = pres.scale(1), pres.shift(1)
    a2, b2 = pres.scale(2), pres.shift(2)
    c, q2 = pres.c_of(1, 2), pres.q_of(1, 2, 2)
    dt: Dict[Monomial, Fraction] = {}
    dx1: Dict[Monomial, Fraction] = {}
    dx2: Dict[Monomial, Fraction] = {}

    def add(target: Dict[Monomial, Fraction], t_exp: int, l: int, s: int, value: Fraction) -> None:
        key = Monomial((t_exp,), (l, s))
        target[key] = target.get(key, Fraction(0)) + value

    for mono, coeff in f.items():
        (k,), (l, s) = mono.base, mono.gens
        if k:
            add(dt, k - 1, l, s, coeff * k)
        if l:
            for r in range(k + 1):
                value = coeff * l * comb(k, r) * (-b1) ** (k - r) / a1 ** k
                add(dx1, r, l - 1, s, value)
        if s:
            for r in range(k + 1):
                for u in range(l + 1):
                    value = coeff * s * comb(k, r) * (-b2) ** (k - r) * comb(l, u) * (-q2) ** (l - u)
                    add(dx2, r, u, s - 1, value / (a2 ** k * c ** l))
    return [NormalElement(1, 2, terms) for terms in (dt, dx1, dx2)]
