"""
Normal Form Module
Left-normal-form elements sum r(t) x^alpha and the rewriting engine that
multiplies them, plus the closed-form commutation oracle and the diamond
(associativity) checker.
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from skewpbw.algebra.base_ring import BasePoly, Scalar, to_rational
from skewpbw.algebra.cache import ProductCache
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.config import PRODUCT_CACHE_MAX_SIZE
from skewpbw.error_handler import ShapeError, UnsupportedOperationError

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


class Monomial(NamedTuple):
    """t^base x^gens with the base coefficient written on the left."""

    base: Exponents
    gens: Exponents

    @property
    def degree(self) -> int:
        return sum(self.base) + sum(self.gens)

    @property
    def sort_key(self) -> Tuple[int, Exponents]:
        """Degree-lexicographic key: base variables first, then generators by index."""
        return self.degree, self.base + self.gens

    def letters(self) -> List[int]:
        """The monomial as a word of letter indices (t's first, then x's)."""
        word: List[int] = []
        for index, e in enumerate(self.base + self.gens):
            word.extend([index] * e)
        return word


class NormalElement:
    """An algebra element in left normal form with exact rational coefficients."""

    __slots__ = ("base_arity", "n", "_terms", "_hash")

    def __init__(self, base_arity: int, n: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            base, gens = tuple(mono[0]), tuple(mono[1])
            if len(base) != base_arity or len(gens) != n:
                raise ShapeError(f"monomial {mono} does not fit m={base_arity}, n={n}")
            if any(e < 0 for e in base + gens):
                raise ShapeError(f"negative exponent in {mono}")
            value = to_rational(coeff)
            if value:
                key = Monomial(base, gens)
                clean[key] = clean.get(key, Fraction(0)) + value
        self.base_arity = base_arity
        self.n = n
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, base_arity: int, n: int, terms: Dict[Monomial, Fraction]) -> "NormalElement":
        element = cls.__new__(cls)
        element.base_arity = base_arity
        element.n = n
        element._terms = {k: v for k, v in terms.items() if v}
        element._hash = None
        return element

    # ---------- constructors ----------

    @classmethod
    def zero(cls, base_arity: int, n: int) -> "NormalElement":
        return cls._from_clean(base_arity, n, {})

    @classmethod
    def constant(cls, base_arity: int, n: int, value: Scalar) -> "NormalElement":
        return cls._from_clean(base_arity, n, {Monomial((0,) * base_arity, (0,) * n): to_rational(value)})

    @classmethod
    def one(cls, base_arity: int, n: int) -> "NormalElement":
        return cls.constant(base_arity, n, 1)

    @classmethod
    def monomial(
        cls, base: Sequence[int], gens: Sequence[int], coeff: Scalar = 1
    ) -> "NormalElement":
        return cls(len(base), len(gens), {Monomial(tuple(base), tuple(gens)): coeff})

    @classmethod
    def from_base_poly(cls, p: BasePoly, n: int) -> "NormalElement":
        zeros = (0,) * n
        return cls._from_clean(p.arity, n, {Monomial(exp, zeros): c for exp, c in p.items()})

    @classmethod
    def letter(cls, base_arity: int, n: int, index: int) -> "NormalElement":
        """The letter t_j (index < m) or x_{index-m+1}."""
        exps = [0] * (base_arity + n)
        exps[index] = 1
        return cls._from_clean(
            base_arity, n, {Monomial(tuple(exps[:base_arity]), tuple(exps[base_arity:])): Fraction(1)}
        )

    # ---------- inspection ----------

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((mono.degree for mono in self._terms), default=-1)

    @property
    def generator_degree(self) -> int:
        return max((sum(mono.gens) for mono in self._terms), default=-1)

    @property
    def is_scalar(self) -> bool:
        return all(mono.degree == 0 for mono in self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(Monomial(tuple(mono[0]), tuple(mono[1])), Fraction(0))

    def base_part(self) -> BasePoly:
        """The generator-degree-zero part as a base polynomial."""
        return BasePoly(
            self.base_arity, {mono.base: c for mono, c in self._terms.items() if not any(mono.gens)}
        )

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending degree-lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key, reverse=True)

    # ---------- linear structure ----------

    def _check_compatible(self, other: "NormalElement") -> None:
        if (self.base_arity, self.n) != (other.base_arity, other.n):
            raise ShapeError(
                f"elements over different presentations: m={self.base_arity}, n={self.n} "
                f"vs m={other.base_arity}, n={other.n}"
            )

    def __add__(self, other: "NormalElement") -> "NormalElement":
        if not isinstance(other, NormalElement):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return NormalElement._from_clean(self.base_arity, self.n, terms)

    def __neg__(self) -> "NormalElement":
        return NormalElement._from_clean(self.base_arity, self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "NormalElement") -> "NormalElement":
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar) -> "NormalElement":
        factor = to_rational(factor)
        return NormalElement._from_clean(self.base_arity, self.n, {k: v * factor for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalElement):
            return NotImplemented
        return (self.base_arity, self.n) == (other.base_arity, other.n) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.base_arity, self.n, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        from skewpbw.parsing.expression import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"NormalElement({self})"


def _bump(exps: Exponents, index: int, delta: int = 1) -> Exponents:
    bumped = list(exps)
    bumped[index] += delta
    return tuple(bumped)


def _accumulate(target: Dict, key, value) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


@dataclass(frozen=True)
class DiamondResidual:
    """Nonzero difference between two bracketings of one word."""

    word: Tuple[int, ...]
    split: int
    residual: NormalElement
    word_text: str = ""

    def __str__(self) -> str:
        return f"{self.word_text} split at {self.split}: {self.residual}"


class NormalFormEngine:
    """Rewriting engine for one presentation.

    Products are computed by moving letters left past each other with the two
    local rules x_i t_l = sigma_i(t_l) x_i + p_i and x_k x_j = c_{j,k} x_j x_k + lower
    terms (j < k). Every intermediate result is memoised.
    """

    def __init__(self, pres: ExtensionPresentation, cache_size: int = PRODUCT_CACHE_MAX_SIZE):
        self.pres = pres
        self.m = pres.base_arity
        self.n = pres.n
        self._variables = [BasePoly.variable(self.m, l) for l in range(self.m)]
        self._sigma_images = [[s.image(l) for l in range(self.m)] for s in pres.sigma]
        self._twist_cache = ProductCache("twist", cache_size)
        self._gens_base_cache = ProductCache("gens-base", cache_size)
        self._gens_gen_cache = ProductCache("gens-gen", cache_size)
        self._gens_gens_cache = ProductCache("gens-gens", cache_size)
        self._monomial_cache = ProductCache("monomial", cache_size)
        self.image_cache = ProductCache("automorphism-images", cache_size)
        logger.debug(f"✓ Engine ready for {pres.describe()}")

    # ---------- generator past base ----------

    def twist_monomial(self, i: int, exp: Exponents) -> Tuple[BasePoly, BasePoly]:
        """(A, B) with x_i t^exp = A x_i + B."""
        key = (i, exp)
        cached = self._twist_cache.get(key)
        if cached is not None:
            return cached
        if not any(exp):
            result = (BasePoly.one(self.m), BasePoly.zero(self.m))
        else:
            last = max(l for l in range(self.m) if exp[l])
            a_prev, b_prev = self.twist_monomial(i, _bump(exp, last, -1))
            result = (
                a_prev * self._sigma_images[i - 1][last],
                a_prev * self.pres.p(i) + b_prev * self._variables[last],
            )
        self._twist_cache.set(key, result)
        return result

    def twist(self, i: int, f: BasePoly) -> Tuple[BasePoly, BasePoly]:
        """(sigma_i(f), delta_i(f)), so that x_i f = sigma_i(f) x_i + delta_i(f)."""
        sigma_f = BasePoly.zero(self.m)
        delta_f = BasePoly.zero(self.m)
        for exp, coeff in f.items():
            a, b = self.twist_monomial(i, exp)
            sigma_f = sigma_f + a.scale(coeff)
            delta_f = delta_f + b.scale(coeff)
        return sigma_f, delta_f

    def gens_times_base(self, alpha: Exponents, f: BasePoly) -> Dict[Exponents, BasePoly]:
        """x^alpha f as {beta: r_beta(t)} meaning sum r_beta(t) x^beta."""
        if f.is_zero:
            return {}
        if not any(alpha) or f.is_constant:
            return {alpha: f}
        key = (alpha, f)
        cached = self._gens_base_cache.get(key)
        if cached is not None:
            return cached
        k = max(index for index in range(self.n) if alpha[index])
        rest = _bump(alpha, k, -1)
        sigma_f, delta_f = self.twist(k + 1, f)
        result: Dict[Exponents, BasePoly] = {}
        for beta, r in self.gens_times_base(rest, sigma_f).items():
            self._add_poly(result, _bump(beta, k), r)
        for beta, r in self.gens_times_base(rest, delta_f).items():
            self._add_poly(result, beta, r)
        self._gens_base_cache.set(key, result)
        return result

    @staticmethod
    def _add_poly(target: Dict[Exponents, BasePoly], key: Exponents, value: BasePoly) -> None:
        total = target[key] + value if key in target else value
        if total.is_zero:
            target.pop(key, None)
        else:
            target[key] = total

    # ---------- generator past generator ----------

    def gens_times_gen(self, alpha: Exponents, j: int) -> Dict[Exponents, Fraction]:
        """x^alpha x_{j+1} as a scalar combination of normal generator monomials."""
        higher = [k for k in range(j + 1, self.n) if alpha[k]]
        if not higher:
            return {_bump(alpha, j): Fraction(1)}
        key = (alpha, j)
        cached = self._gens_gen_cache.get(key)
        if cached is not None:
            return cached
        k = max(higher)
        rest = _bump(alpha, k, -1)
        c = self.pres.c_of(j + 1, k + 1)
        result: Dict[Exponents, Fraction] = {}
        # x^rest x_k x_j = x^rest (c x_j x_k + q^(0) + sum_l q^(l) x_l)
        for beta, coeff in self.gens_times_gen(rest, j).items():
            for gamma, coeff2 in self.gens_times_gen(beta, k).items():
                _accumulate(result, gamma, c * coeff * coeff2)
        q0 = self.pres.q_of(j + 1, k + 1, 0)
        if q0:
            _accumulate(result, rest, q0)
        for l in range(1, self.n + 1):
            ql = self.pres.q_of(j + 1, k + 1, l)
            if ql:
                for gamma, coeff in self.gens_times_gen(rest, l - 1).items():
                    _accumulate(result, gamma, ql * coeff)
        self._gens_gen_cache.set(key, result)
        return result

    def gens_times_gens(self, alpha: Exponents, beta: Exponents) -> Dict[Exponents, Fraction]:
        """x^alpha x^beta as a scalar combination of normal generator monomials."""
        if not any(beta):
            return {alpha: Fraction(1)}
        if not any(alpha):
            return {beta: Fraction(1)}
        key = (alpha, beta)
        cached = self._gens_gens_cache.get(key)
        if cached is not None:
            return cached
        last = max(index for index in range(self.n) if beta[index])
        result: Dict[Exponents, Fraction] = {}
        for gamma, coeff in self.gens_times_gens(alpha, _bump(beta, last, -1)).items():
            for delta, coeff2 in self.gens_times_gen(gamma, last).items():
                _accumulate(result, delta, coeff * coeff2)
        self._gens_gens_cache.set(key, result)
        return result

    # ---------- products ----------

    def monomial_product(self, left: Monomial, right: Monomial) -> Dict[Monomial, Fraction]:
        """(t^k x^alpha)(t^e x^beta) = t^k [x^alpha t^e] x^beta in normal form."""
        key = (left, right)
        cached = self._monomial_cache.get(key)
        if cached is not None:
            return cached
        result: Dict[Monomial, Fraction] = {}
        if not any(left.gens) or not any(right.base):
            # nothing to reorder between the base letters
            moved = {left.gens: BasePoly.monomial(right.base)}
        else:
            moved = self.gens_times_base(left.gens, BasePoly.monomial(right.base))
        for gamma, r in moved.items():
            for delta, s in self.gens_times_gens(gamma, right.gens).items():
                for exp, coeff in r.items():
                    base = tuple(a + b for a, b in zip(left.base, exp))
                    _accumulate(result, Monomial(base, delta), coeff * s)
        self._monomial_cache.set(key, result)
        return result

    def multiply(self, f: NormalElement, g: NormalElement) -> NormalElement:
        f._check_compatible(g)
        if f.base_arity != self.m or f.n != self.n:
            raise ShapeError("element does not belong to this presentation")
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                for mono, c in self.monomial_product(m1, m2).items():
                    _accumulate(result, mono, c1 * c2 * c)
        return NormalElement._from_clean(self.m, self.n, result)

    def product(self, factors: Iterable[NormalElement]) -> NormalElement:
        result = NormalElement.one(self.m, self.n)
        for factor in factors:
            result = self.multiply(result, factor)
        return result

    def power(self, f: NormalElement, exponent: int) -> NormalElement:
        return self.product([f] * exponent)

    def letter(self, index: int) -> NormalElement:
        return NormalElement.letter(self.m, self.n, index)

    def reduce_word(self, word: Sequence[int]) -> NormalElement:
        """Normal form of a product of letters (t's are 0..m-1, x_i is m+i-1)."""
        return self.product(self.letter(index) for index in word)

    def word_text(self, word: Sequence[int]) -> str:
        names = self.pres.letter_names
        return "*".join(names[index] for index in word) or "1"

    # ---------- diamond check ----------

    def check_pbw_diamond(self, max_degree: int) -> List[DiamondResidual]:
        """Compare every bracketing u*v of every word of length <= max_degree with the left fold."""
        letters = range(self.pres.letter_count)
        normal_forms: Dict[Tuple[int, ...], NormalElement] = {(): NormalElement.one(self.m, self.n)}
        for index in letters:
            normal_forms[(index,)] = self.letter(index)
        residuals: List[DiamondResidual] = []
        for length in range(2, max_degree + 1):
            for word in itertools.product(letters, repeat=length):
                folded = self.multiply(normal_forms[word[:-1]], normal_forms[word[-1:]])
                normal_forms[word] = folded
                for split in range(1, length - 1):
                    other = self.multiply(normal_forms[word[:split]], normal_forms[word[split:]])
                    if other != folded:
                        residuals.append(
                            DiamondResidual(word, split, other - folded, self.word_text(word))
                        )
        if residuals:
            logger.warning(f"⚠️ Diamond check found {len(residuals)} ambiguity(ies) up to degree {max_degree}")
        else:
            logger.info(f"✅ Diamond check clean up to degree {max_degree} for {self.pres.describe()}")
        return residuals

    def cache_stats(self) -> List[dict]:
        return [
            cache.stats()
            for cache in (
                self._twist_cache,
                self._gens_base_cache,
                self._gens_gen_cache,
                self._gens_gens_cache,
                self._monomial_cache,
                self.image_cache,
            )
        ]


_ENGINES = ProductCache("engines", 64)
_ENGINE_LOCK = threading.Lock()


def get_engine(pres: ExtensionPresentation) -> NormalFormEngine:
    """Shared engine per presentation."""
    with _ENGINE_LOCK:
        engine = _ENGINES.get(pres)
        if engine is None:
            engine = NormalFormEngine(pres)
            _ENGINES.set(pres, engine)
        return engine


def _base_exponent(pres: ExtensionPresentation, e: Union[int, Sequence[int]]) -> Exponents:
    exp = (e,) if isinstance(e, int) else tuple(e)
    if len(exp) != pres.base_arity:
        raise ShapeError(f"base exponent {exp} does not match base arity {pres.base_arity}")
    return exp


def mul_gen_base(pres: ExtensionPresentation, i: int, e: Union[int, Sequence[int]]) -> NormalElement:
    """Normal form of x_i t^e."""
    engine = get_engine(pres)
    exp = _base_exponent(pres, e)
    x_i = NormalElement.letter(pres.base_arity, pres.n, pres.generator_letter(i))
    t_e = NormalElement.monomial(exp, (0,) * pres.n)
    return engine.multiply(x_i, t_e)


def mul_gen_gen(pres: ExtensionPresentation, j: int, i: int) -> NormalElement:
    """Normal form of x_j x_i for j > i."""
    if not 1 <= i < j <= pres.n:
        raise ShapeError(f"mul_gen_gen needs 1 <= i < j <= n, got j={j}, i={i}")
    engine = get_engine(pres)
    return engine.multiply(
        engine.letter(pres.generator_letter(j)), engine.letter(pres.generator_letter(i))
    )


def multiply(pres: ExtensionPresentation, f: NormalElement, g: NormalElement) -> NormalElement:
    return get_engine(pres).multiply(f, g)


def commrel_closed_form(pres: ExtensionPresentation, i: int, e: int) -> NormalElement:
    """x_i t^e = (a t + b)^e x_i + p(t) sum_{l<e} (a t + b)^l t^(e-1-l), evaluated directly."""
    if pres.base_arity != 1:
        raise UnsupportedOperationError("the closed commutation formula is stated for k[t] only")
    t = BasePoly.variable(1)
    image = pres.sigma[i - 1].image(0)
    leading = image ** e
    tail = BasePoly.zero(1)
    for l in range(e):
        tail = tail + (image ** l) * (t ** (e - 1 - l))
    tail = tail * pres.p(i)
    x_i = tuple(1 if k == i - 1 else 0 for k in range(pres.n))
    terms: Dict[Monomial, Fraction] = {}
    for exp, coeff in leading.items():
        terms[Monomial(exp, x_i)] = coeff
    for exp, coeff in tail.items():
        _accumulate(terms, Monomial(exp, (0,) * pres.n), coeff)
    return NormalElement(1, pres.n, terms)


def check_pbw_diamond(pres: ExtensionPresentation, max_degree: int) -> List[DiamondResidual]:
    return get_engine(pres).check_pbw_diamond(max_degree)


def reduce_word(pres: ExtensionPresentation, word: Sequence[int]) -> NormalElement:
    return get_engine(pres).reduce_word(word)
