"""
Presentation Module
Parameters of a skew PBW extension over k[t] or k[t1,t2], shape validation and
case classification.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from skewpbw.algebra.base_ring import BASE_VARIABLE_NAMES, AffineMap, BasePoly, Scalar, to_rational
from skewpbw.error_handler import ShapeError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def generator_pairs(n: int) -> List[Pair]:
    """Pairs (i, j), 1 <= i < j <= n, in the order (1,2), (1,3), ..., (2,3), ..."""
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class ExtensionPresentation:
    """All parameters of one skew PBW extension.

    Relations: x_i t_l = sigma_i(t_l) x_i + p_i and, for i < j,
    x_j x_i = c_{i,j} x_i x_j + q_{i,j}^(0) + sum_k q_{i,j}^(k) x_k.
    ``c`` and ``q`` are stored in ``generator_pairs(n)`` order; ``q`` rows hold the
    n+1 values q^(0), ..., q^(n).
    """

    base_arity: int
    n: int
    sigma: Tuple[AffineMap, ...]
    delta_p: Tuple[BasePoly, ...]
    c: Tuple[Fraction, ...]
    q: Tuple[Tuple[Fraction, ...], ...]
    name: str = field(default="", compare=False)

    @classmethod
    def build(
        cls,
        base_arity: int,
        sigma: Sequence[AffineMap],
        delta_p: Sequence[BasePoly],
        c: Optional[Union[Mapping[Pair, Scalar], Sequence[Scalar]]] = None,
        q: Optional[Union[Mapping[Pair, Sequence[Scalar]], Sequence[Sequence[Scalar]]]] = None,
        name: str = "",
    ) -> "ExtensionPresentation":
        """Assemble a presentation; omitted c entries default to 1 and omitted q to 0."""
        n = len(sigma)
        pairs = generator_pairs(n)
        if c is None:
            c_values = [Fraction(1)] * len(pairs)
        elif isinstance(c, Mapping):
            c_values = [to_rational(c.get(pair, 1)) for pair in pairs]
        else:
            c_values = [to_rational(v) for v in c]
        if q is None:
            q_values = [(Fraction(0),) * (n + 1) for _ in pairs]
        elif isinstance(q, Mapping):
            q_values = [tuple(to_rational(v) for v in q.get(pair, [0] * (n + 1))) for pair in pairs]
        else:
            q_values = [tuple(to_rational(v) for v in row) for row in q]
        return cls(
            base_arity=base_arity,
            n=n,
            sigma=tuple(sigma),
            delta_p=tuple(delta_p),
            c=tuple(c_values),
            q=tuple(q_values),
            name=name,
        )

    # ---------- letters ----------

    @property
    def letter_count(self) -> int:
        return self.base_arity + self.n

    @property
    def base_names(self) -> Tuple[str, ...]:
        return BASE_VARIABLE_NAMES[self.base_arity]

    @property
    def letter_names(self) -> Tuple[str, ...]:
        """t's first, then x1..xn: the canonical letter order."""
        return self.base_names + tuple(f"x{i}" for i in range(1, self.n + 1))

    def generator_letter(self, i: int) -> int:
        """Letter index of x_i (1-based generator index)."""
        return self.base_arity + i - 1

    # ---------- parameters with the convention table ----------

    def pair_index(self, i: int, j: int) -> int:
        if not 1 <= i < j <= self.n:
            raise ShapeError(f"no generator pair ({i}, {j}) for n={self.n}")
        return generator_pairs(self.n).index((i, j))

    def c_of(self, i: int, j: int) -> Fraction:
        """c_{i,j} with c_{j,i} = c_{i,j}^{-1} and c_{i,i} = 1."""
        if i == j:
            return Fraction(1)
        if i < j:
            return self.c[self.pair_index(i, j)]
        return 1 / self.c[self.pair_index(j, i)]

    def q_of(self, i: int, j: int, k: int) -> Fraction:
        """q_{i,j}^(k) with q_{j,i}^(k) = -c_{i,j}^{-1} q_{i,j}^(k) and q_{i,i}^(k) = 0."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.q[self.pair_index(i, j)][k]
        return -self.q[self.pair_index(j, i)][k] / self.c[self.pair_index(j, i)]

    def scale(self, i: int, l: int = 1) -> Fraction:
        """a_i (m=1) or a_{ill} (m=2)."""
        return self.sigma[i - 1].scales[l - 1]

    def shift(self, i: int, l: int = 1) -> Fraction:
        """b_i (m=1) or b_{il} (m=2)."""
        return self.sigma[i - 1].shifts[l - 1]

    def p(self, i: int) -> BasePoly:
        return self.delta_p[i - 1]

    def describe(self) -> str:
        return self.name or f"m={self.base_arity}, n={self.n}"


@dataclass(frozen=True)
class ShapeViolation:
    """One broken type invariant, naming the offending field."""

    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


@dataclass(frozen=True)
class CaseLabel:
    """Result of evaluating one table row (or condition system) on a presentation."""

    table: str
    case_id: str
    residuals: Tuple[Tuple[str, BasePoly], ...]

    @property
    def matched(self) -> bool:
        return all(residual.is_zero for _, residual in self.residuals)

    @property
    def label_id(self) -> str:
        return f"{self.table}/{self.case_id}"

    def nonzero_residuals(self) -> List[Tuple[str, BasePoly]]:
        return [(name, residual) for name, residual in self.residuals if not residual.is_zero]


def validate_shape(pres: ExtensionPresentation) -> List[ShapeViolation]:
    """Every violated type invariant of the presentation; empty when it is well formed."""
    violations: List[ShapeViolation] = []
    m, n = pres.base_arity, pres.n
    if m not in (1, 2):
        violations.append(ShapeViolation("base_arity", f"must be 1 or 2, got {m}"))
        return violations
    if n < 1:
        violations.append(ShapeViolation("generators", f"need at least one generator, got {n}"))
        return violations
    if len(pres.sigma) != n:
        violations.append(ShapeViolation("sigma", f"expected {n} maps, got {len(pres.sigma)}"))
    if len(pres.delta_p) != n:
        violations.append(ShapeViolation("delta_p", f"expected {n} polynomials, got {len(pres.delta_p)}"))
    pair_count = len(generator_pairs(n))
    if len(pres.c) != pair_count:
        violations.append(ShapeViolation("c", f"expected {pair_count} entries, got {len(pres.c)}"))
    if len(pres.q) != pair_count:
        violations.append(ShapeViolation("q", f"expected {pair_count} rows, got {len(pres.q)}"))

    for i, s in enumerate(pres.sigma, start=1):
        if s.arity != m:
            violations.append(ShapeViolation(f"sigma[{i}]", f"arity {s.arity} does not match base arity {m}"))
        for l, a in enumerate(s.scales, start=1):
            if a == 0:
                target = f"a_{i}" if m == 1 else f"a_{i}{l}{l}"
                violations.append(ShapeViolation(f"sigma[{i}]", f"scale {target} must be nonzero"))
    for i, p in enumerate(pres.delta_p, start=1):
        if p.arity != m:
            violations.append(ShapeViolation(f"delta_p[{i}]", f"arity {p.arity} does not match base arity {m}"))
        elif m == 2 and not p.is_constant:
            violations.append(ShapeViolation(f"delta_p[{i}]", "p must be constant when m=2"))
    for (i, j), value in zip(generator_pairs(n), pres.c):
        if value == 0:
            violations.append(ShapeViolation(f"c[{i},{j}]", "c must be nonzero"))
    for (i, j), row in zip(generator_pairs(n), pres.q):
        if len(row) != n + 1:
            violations.append(ShapeViolation(f"q[{i},{j}]", f"expected {n + 1} values, got {len(row)}"))

    if violations:
        logger.debug(f"✗ {pres.describe()}: {len(violations)} shape violation(s)")
    return violations


def classify_case(pres: ExtensionPresentation) -> List[CaseLabel]:
    """Evaluate every applicable table row and condition system.

    All evaluated labels are returned, matched or not; use ``matched_labels`` to
    keep the matching ones.
    """
    from skewpbw.algebra import case_tables

    if validate_shape(pres):
        raise ShapeError("classify_case needs a presentation without shape violations")
    labels = case_tables.evaluate_tables(pres)
    matched = [label.label_id for label in labels if label.matched]
    logger.info(f"✅ Classified {pres.describe()}: {len(matched)} matching row(s)")
    return labels


def matched_labels(labels: Sequence[CaseLabel]) -> List[CaseLabel]:
    return [label for label in labels if label.matched]


def residual_summary(labels: Sequence[CaseLabel]) -> Dict[str, List[str]]:
    """Names of the nonzero residuals of every unmatched label."""
    return {
        label.label_id: [name for name, _ in label.nonzero_residuals()]
        for label in labels
        if not label.matched
    }
