"""
Base Ring Module
Exact polynomial arithmetic in k[t] and k[t1,t2] over the rationals, affine
substitutions and the divided-difference sigma-derivation.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from skewpbw.error_handler import InternalAlgebraError, ShapeError

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction, str]

BASE_VARIABLE_NAMES = {1: ("t",), 2: ("t1", "t2")}


def to_rational(value: Scalar) -> Fraction:
    """Coerce int / Fraction / 'p/q' strings to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use 'p/q' strings")
    return Fraction(value)


def _check_arity(arity: int) -> None:
    if arity not in (1, 2):
        raise ShapeError(f"base arity must be 1 or 2, got {arity}")


class BasePoly:
    """Sparse commutative polynomial in one or two variables with rational coefficients.

    Zero coefficients are never stored, so structural equality is equality of
    polynomials.
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        _check_arity(arity)
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity or any(e < 0 for e in exp):
                raise ShapeError(f"bad exponent {exp} for arity {arity}")
            value = to_rational(coeff)
            if value:
                clean[exp] = clean.get(exp, Fraction(0)) + value
        self.arity = arity
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash: Optional[int] = None

    # ---------- constructors ----------

    @classmethod
    def zero(cls, arity: int) -> "BasePoly":
        return cls(arity)

    @classmethod
    def one(cls, arity: int) -> "BasePoly":
        return cls.constant(arity, 1)

    @classmethod
    def constant(cls, arity: int, value: Scalar) -> "BasePoly":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int = 0) -> "BasePoly":
        """The variable t_{index+1} (or t when arity is 1)."""
        exp = [0] * arity
        exp[index] = 1
        return cls(arity, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Scalar = 1) -> "BasePoly":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[Scalar]) -> "BasePoly":
        """Univariate polynomial from a lowest-degree-first coefficient list."""
        return cls(1, {(k,): c for k, c in enumerate(coefficients)})

    # ---------- inspection ----------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.arity)

    def coefficients(self) -> list:
        """Dense lowest-degree-first coefficients of a univariate polynomial."""
        if self.arity != 1:
            raise ShapeError("coefficients() needs a univariate polynomial")
        return [self.coefficient((k,)) for k in range(self.degree + 1)]

    # ---------- arithmetic ----------

    def _coerce(self, other) -> "BasePoly":
        if isinstance(other, BasePoly):
            if other.arity != self.arity:
                raise ShapeError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return BasePoly.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return BasePoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self) -> "BasePoly":
        return BasePoly(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return BasePoly(self.arity, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "BasePoly":
        if power < 0:
            raise ShapeError("negative powers are not polynomials")
        result = BasePoly.one(self.arity)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def scale(self, factor: Scalar) -> "BasePoly":
        factor = to_rational(factor)
        return BasePoly(self.arity, {e: c * factor for e, c in self._terms.items()})

    def exact_quotient(self, divisor: "BasePoly") -> "BasePoly":
        """Univariate long division that must leave no remainder."""
        if self.arity != 1 or divisor.arity != 1:
            raise ShapeError("exact_quotient needs univariate polynomials")
        if divisor.is_zero:
            raise InternalAlgebraError("division by the zero polynomial")
        remainder = {e[0]: c for e, c in self._terms.items()}
        top_degree = divisor.degree
        lead = divisor.coefficient((top_degree,))
        quotient: Dict[Exponent, Fraction] = {}
        while remainder and max(remainder) >= top_degree:
            top = max(remainder)
            factor = remainder[top] / lead
            shift = top - top_degree
            quotient[(shift,)] = factor
            for (e,), c in divisor.items():
                k = e + shift
                value = remainder.get(k, Fraction(0)) - factor * c
                if value:
                    remainder[k] = value
                else:
                    remainder.pop(k, None)
        if remainder:
            raise InternalAlgebraError(
                f"inexact division of {self} by {divisor}: remainder {BasePoly(1, {(k,): c for k, c in remainder.items()})}"
            )
        return BasePoly(1, quotient)

    # ---------- protocol ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == BasePoly.constant(self.arity, other)
        if not isinstance(other, BasePoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self):
        """Terms in descending degree-lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self) -> str:
        from skewpbw.parsing.expression import format_base_poly

        return format_base_poly(self)

    def __repr__(self) -> str:
        return f"BasePoly({self.arity}, {self})"


@dataclass(frozen=True)
class AffineMap:
    """Diagonal affine map t_j -> a_j t_j + b_j on k[t] or k[t1,t2]."""

    scales: Tuple[Fraction, ...]
    shifts: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.scales) != len(self.shifts):
            raise ShapeError("scales and shifts must have the same length")
        _check_arity(len(self.scales))
        object.__setattr__(self, "scales", tuple(to_rational(a) for a in self.scales))
        object.__setattr__(self, "shifts", tuple(to_rational(b) for b in self.shifts))

    @property
    def arity(self) -> int:
        return len(self.scales)

    @classmethod
    def identity(cls, arity: int) -> "AffineMap":
        return cls((Fraction(1),) * arity, (Fraction(0),) * arity)

    @classmethod
    def univariate(cls, scale: Scalar, shift: Scalar = 0) -> "AffineMap":
        return cls((to_rational(scale),), (to_rational(shift),))

    @property
    def is_identity(self) -> bool:
        return all(a == 1 for a in self.scales) and all(b == 0 for b in self.shifts)

    @property
    def is_invertible(self) -> bool:
        return all(a != 0 for a in self.scales)

    def image(self, index: int) -> BasePoly:
        """Image a_j t_j + b_j of the variable t_{index+1}."""
        return BasePoly.variable(self.arity, index).scale(self.scales[index]) + self.shifts[index]

    def inverse(self) -> "AffineMap":
        if not self.is_invertible:
            raise ShapeError(f"affine map with scales {self.scales} is not invertible")
        return AffineMap(
            tuple(1 / a for a in self.scales),
            tuple(-b / a for a, b in zip(self.scales, self.shifts)),
        )

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self o inner: t -> a (a' t + b') + b."""
        if inner.arity != self.arity:
            raise ShapeError("arity mismatch in composition")
        return AffineMap(
            tuple(a * a2 for a, a2 in zip(self.scales, inner.scales)),
            tuple(a * b2 + b for a, b, b2 in zip(self.scales, self.shifts, inner.shifts)),
        )


def substitute(f: BasePoly, s: AffineMap) -> BasePoly:
    """f(a_1 t_1 + b_1, ...): replace every base variable by its affine image."""
    if f.arity != s.arity:
        raise ShapeError(f"cannot substitute an arity-{s.arity} map into an arity-{f.arity} polynomial")
    if s.is_identity or f.is_constant:
        return f
    images = [s.image(j) for j in range(s.arity)]
    powers: Dict[Tuple[int, int], BasePoly] = {}
    result = BasePoly.zero(f.arity)
    for exp, coeff in f.items():
        term = BasePoly.constant(f.arity, coeff)
        for j, e in enumerate(exp):
            if e:
                if (j, e) not in powers:
                    powers[(j, e)] = images[j] ** e
                term = term * powers[(j, e)]
        result = result + term
    return result


def derivative(f: BasePoly, index: int = 0) -> BasePoly:
    """Formal partial derivative with respect to t_{index+1}."""
    terms: Dict[Exponent, Fraction] = {}
    for exp, coeff in f.items():
        if exp[index]:
            lowered = list(exp)
            lowered[index] -= 1
            terms[tuple(lowered)] = coeff * exp[index]
    return BasePoly(f.arity, terms)


def divided_difference(f: BasePoly, s: AffineMap, p: BasePoly) -> BasePoly:
    """delta_p(f) = (f(s(t)) - f(t)) / (s(t) - t) * p(t), or f'(t) p(t) when s is the identity."""
    if f.arity != 1 or s.arity != 1 or p.arity != 1:
        raise ShapeError("divided_difference is defined on k[t] only")
    if s.is_identity:
        return derivative(f) * p
    numerator = substitute(f, s) - f
    denominator = s.image(0) - BasePoly.variable(1)
    return numerator.exact_quotient(denominator) * p
