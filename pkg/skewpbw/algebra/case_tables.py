"""
Classification tables for the automorphism-extension problem.

Every table cell is one named condition whose residual is a base polynomial:
equalities contribute lhs - rhs, inequalities contribute 0 when they hold and the
constant 1 when they fail. A row matches exactly when all its residuals vanish.
"""

import logging
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple, Union

from skewpbw.algebra.base_ring import BasePoly, derivative
from skewpbw.algebra.presentation import CaseLabel, ExtensionPresentation, generator_pairs

logger = logging.getLogger(__name__)

Residual = Tuple[str, BasePoly]
Value = Union[BasePoly, Fraction, int]

KT_TWO_GENERATORS = "k[t]:n=2"
KT_THREE_GENERATORS = "k[t]:n=3"
KT_GENERAL = "k[t]:n"
KT_SIGMA_DERIVATION = "k[t]:sigma-derivation"
KT1T2_TWO_GENERATORS = "k[t1,t2]:n=2"
KT1T2_CONDITIONS = "k[t1,t2]:conditions"


class ConditionBuilder:
    """Turns table cells into named residuals for one presentation."""

    def __init__(self, pres: ExtensionPresentation):
        self.pres = pres
        self.arity = pres.base_arity

    def poly(self, value: Value) -> BasePoly:
        if isinstance(value, BasePoly):
            return value
        return BasePoly.constant(self.arity, value)

    @property
    def t(self) -> BasePoly:
        return BasePoly.variable(self.arity, 0)

    def eq(self, name: str, lhs: Value, rhs: Value = 0) -> Residual:
        return name, self.poly(lhs) - self.poly(rhs)

    def ne(self, name: str, value: Value, forbidden: Value) -> Residual:
        holds = self.poly(value) != self.poly(forbidden)
        return name, BasePoly.zero(self.arity) if holds else BasePoly.one(self.arity)

    def not_in(self, name: str, value: Value, forbidden: Sequence[Value]) -> Residual:
        holds = all(self.poly(value) != self.poly(f) for f in forbidden)
        return name, BasePoly.zero(self.arity) if holds else BasePoly.one(self.arity)

    def any_nonzero(self, name: str, values: Sequence[Value]) -> Residual:
        holds = any(not self.poly(v).is_zero for v in values)
        return name, BasePoly.zero(self.arity) if holds else BasePoly.one(self.arity)

    def constant(self, name: str, p: BasePoly) -> Residual:
        """p(t) = p, a constant: the residual is the non-constant part."""
        return name, p - p.constant_term

    def through_origin(self, name: str, p: BasePoly) -> Residual:
        """p(t) = p t."""
        return name, p - self.t.scale(p.coefficient((1,)))

    def through_fixed_point(self, name: str, p: BasePoly, a: Fraction, b: Fraction) -> Residual:
        """p(t) = p (t + b/(a-1)) for a scalar p."""
        if a == 1:
            return name, BasePoly.one(self.arity)
        slope = p.coefficient((1,))
        return name, p - (self.t + b / (a - 1)).scale(slope)

    def obstruction(self, name: str, value: Value) -> Residual:
        """A quantity the relations force to vanish; nonzero on every row carrying it."""
        return name, self.poly(value)


Row = Callable[[ConditionBuilder], List[Residual]]


def _rows_to_labels(
    table: str,
    builder: ConditionBuilder,
    cases: Sequence[Tuple[str, Row, Sequence[Row]]],
) -> List[CaseLabel]:
    labels = []
    for case_id, case_conditions, rows in cases:
        shared = case_conditions(builder)
        if len(rows) == 1:
            labels.append(CaseLabel(table, f"({case_id})", tuple(shared + rows[0](builder))))
            continue
        for index, row in enumerate(rows, start=1):
            labels.append(CaseLabel(table, f"({case_id}).{index}", tuple(shared + row(builder))))
    return labels


# ========== k[t], TWO GENERATORS ==========

def _two_generator_table(pres: ExtensionPresentation) -> List[CaseLabel]:
    a1, b1, a2, b2 = pres.scale(1), pres.shift(1), pres.scale(2), pres.shift(2)
    p1, p2 = pres.p(1), pres.p(2)
    c = pres.c_of(1, 2)
    q0, q1, q2 = (pres.q_of(1, 2, k) for k in range(3))

    def q_all_zero(b):
        return [b.eq("q12^(0) = 0", q0), b.eq("q12^(1) = 0", q1), b.eq("q12^(2) = 0", q2)]

    def q_lin_zero(b):
        return [b.eq("q12^(1) = 0", q1), b.eq("q12^(2) = 0", q2)]

    def shift_rows():
        return [
            lambda b: [b.constant("p1 constant", p1), b.constant("p2 constant", p2), b.eq("c12 = 1", c, 1)]
            + q_lin_zero(b),
            lambda b: [b.eq("p1 = 0", p1), b.eq("p2 = 0", p2)] + q_all_zero(b),
        ]

    cases = [
        (
            "a",
            lambda b: [b.eq("a1 = 1", a1, 1), b.eq("b1 = 0", b1), b.eq("a2 = 1", a2, 1), b.eq("b2 = 0", b2)],
            [
                lambda b: [b.eq("p1 = 0", p1), b.eq("p2 = 0", p2)] + q_all_zero(b),
                lambda b: q_lin_zero(b) + [b.eq("c12 = 1", c, 1)],
            ],
        ),
        (
            "b",
            lambda b: [b.eq("a1 = 1", a1, 1), b.eq("b1 = 0", b1), b.eq("a2 = 1", a2, 1), b.ne("b2 != 0", b2, 0)],
            shift_rows(),
        ),
        (
            "c",
            lambda b: [b.eq("a1 = 1", a1, 1), b.ne("b1 != 0", b1, 0), b.eq("a2 = 1", a2, 1), b.eq("b2 = 0", b2)],
            shift_rows(),
        ),
        (
            "d",
            lambda b: [b.eq("a1 = 1", a1, 1), b.ne("b1 != 0", b1, 0), b.eq("a2 = 1", a2, 1), b.ne("b2 != 0", b2, 0)],
            shift_rows(),
        ),
        (
            "e",
            lambda b: [b.eq("a1 = 1", a1, 1), b.eq("b1 = 0", b1), b.ne("a2 != 1", a2, 1)],
            [
                lambda b: [
                    b.eq("p1 = 0", p1),
                    b.through_fixed_point("p2 = p2 (t + b2/(a2-1))", p2, a2, b2),
                    b.eq("c12 = 1", c, 1),
                ]
                + q_all_zero(b),
                lambda b: [b.constant("p1 constant", p1), b.eq("p2 = 0", p2)]
                + q_all_zero(b)
                + [b.eq("c12 = a2^-1", c, 1 / a2)],
                lambda b: [b.eq("p1 = 0", p1), b.eq("p2 = 0", p2)]
                + q_all_zero(b)
                + [b.not_in("c12 not in {1, a2^-1}", c, [1, 1 / a2])],
            ],
        ),
        (
            "f",
            lambda b: [b.eq("a1 = 1", a1, 1), b.ne("b1 != 0", b1, 0), b.ne("a2 != 1", a2, 1)],
            [
                lambda b: [b.obstruction("c12*b1*(a2-1) = 0", c * b1 * (a2 - 1))],
            ],
        ),
        (
            "g",
            lambda b: [b.ne("a1 != 1", a1, 1), b.eq("a2 = 1", a2, 1), b.eq("b2 = 0", b2)],
            [
                lambda b: [
                    b.through_fixed_point("p1 = p1 (t + b1/(a1-1))", p1, a1, b1),
                    b.eq("p2 = 0", p2),
                    b.eq("c12 = 1", c, 1),
                ]
                + q_all_zero(b),
                lambda b: [b.eq("p1 = 0", p1), b.constant("p2 constant", p2)]
                + q_all_zero(b)
                + [b.eq("c12 = a1^-1", c, 1 / a1)],
                lambda b: [b.eq("p1 = 0", p1), b.eq("p2 = 0", p2)]
                + q_all_zero(b)
                + [b.not_in("c12 not in {1, a1^-1}", c, [1, 1 / a1])],
            ],
        ),
        (
            "h",
            lambda b: [b.ne("a1 != 1", a1, 1), b.eq("a2 = 1", a2, 1), b.ne("b2 != 0", b2, 0)],
            [
                lambda b: [b.obstruction("c12^-1*b2*(a1-1) = 0", b2 * (a1 - 1) / c)],
            ],
        ),
        (
            "i",
            lambda b: [b.ne("a1 != 1", a1, 1), b.ne("a2 != 1", a2, 1), b.eq("b1 = 0", b1), b.eq("b2 = 0", b2)],
            [
                lambda b: [
                    b.through_origin("p1 = p1 t", p1),
                    b.through_origin("p2 = p2 t", p2),
                    b.eq("c12 = 1", c, 1),
                ]
                + q_all_zero(b),
            ],
        ),
    ]
    return _rows_to_labels(KT_TWO_GENERATORS, ConditionBuilder(pres), cases)


# ========== k[t], n GENERATORS ==========

def _general_table(pres: ExtensionPresentation, table: str) -> List[CaseLabel]:
    n = pres.n
    indices = range(1, n + 1)
    pairs = generator_pairs(n)

    def all_c_one(b):
        return [b.eq(f"c{i}{j} = 1", pres.c_of(i, j), 1) for i, j in pairs]

    def q_zero(b, orders):
        return [b.eq(f"q{i}{j}^({k}) = 0", pres.q_of(i, j, k)) for i, j in pairs for k in orders]

    all_orders = range(0, n + 1)
    linear_orders = range(1, n + 1)
    moving = [i for i in indices if pres.scale(i) != 1]

    def proper_subset_rows(b):
        residuals = [
            b.ne("S nonempty", len(moving), 0),
            b.ne("S proper", len(moving), n),
        ]
        for s in indices:
            if s in moving:
                residuals.append(
                    b.through_fixed_point(
                        f"p{s} = p{s} (t + b{s}/(a{s}-1))", pres.p(s), pres.scale(s), pres.shift(s)
                    )
                )
            else:
                residuals.append(b.eq(f"b{s} = 0", pres.shift(s)))
                residuals.append(b.eq(f"p{s} = 0", pres.p(s)))
        return residuals + q_zero(b, all_orders) + all_c_one(b)

    cases = [
        (
            "a",
            lambda b: [b.eq(f"a{i} = 1", pres.scale(i), 1) for i in indices]
            + [b.eq(f"b{i} = 0", pres.shift(i)) for i in indices],
            [
                lambda b: [b.eq(f"p{i} = 0", pres.p(i)) for i in indices] + q_zero(b, all_orders),
                lambda b: q_zero(b, linear_orders) + all_c_one(b),
            ],
        ),
        (
            "b",
            lambda b: [b.eq(f"a{i} = 1", pres.scale(i), 1) for i in indices]
            + [b.any_nonzero("some b != 0", [pres.shift(i) for i in indices])],
            [
                lambda b: [b.constant(f"p{i} constant", pres.p(i)) for i in indices]
                + all_c_one(b)
                + q_zero(b, linear_orders),
                lambda b: [b.eq(f"p{i} = 0", pres.p(i)) for i in indices] + q_zero(b, all_orders),
            ],
        ),
        ("c", lambda b: [], [proper_subset_rows]),
        (
            "d",
            lambda b: [b.ne(f"a{i} != 1", pres.scale(i), 1) for i in indices]
            + [b.eq(f"b{i} = 0", pres.shift(i)) for i in indices],
            [
                lambda b: [b.through_origin(f"p{i} = p{i} t", pres.p(i)) for i in indices]
                + q_zero(b, all_orders)
                + all_c_one(b),
            ],
        ),
    ]
    return _rows_to_labels(table, ConditionBuilder(pres), cases)


def _sigma_derivation_label(pres: ExtensionPresentation) -> CaseLabel:
    """((a_i - 1) t + b_i) p_i'(t) = (a_i - 1) p_i(t) for every generator."""
    b = ConditionBuilder(pres)
    residuals = []
    for i in range(1, pres.n + 1):
        a, shift, p = pres.scale(i), pres.shift(i), pres.p(i)
        lhs = (b.t.scale(a - 1) + shift) * derivative(p)
        residuals.append(b.eq(f"((a{i}-1)t + b{i}) p{i}' = (a{i}-1) p{i}", lhs, p.scale(a - 1)))
    return CaseLabel(KT_SIGMA_DERIVATION, "(all)", tuple(residuals))


# ========== k[t1,t2], TWO GENERATORS ==========

def _two_variable_table(pres: ExtensionPresentation) -> List[CaseLabel]:
    a111, a122 = pres.scale(1, 1), pres.scale(1, 2)
    a211, a222 = pres.scale(2, 1), pres.scale(2, 2)
    b11, b12 = pres.shift(1, 1), pres.shift(1, 2)
    b21, b22 = pres.shift(2, 1), pres.shift(2, 2)
    p1, p2 = pres.p(1).constant_term, pres.p(2).constant_term
    c = pres.c_of(1, 2)
    q0, q1, q2 = (pres.q_of(1, 2, k) for k in range(3))

    def pattern(b, ones: Sequence[bool]):
        """ones[k] says whether (a111, a122, a211, a222)[k] equals 1."""
        names = ("a111", "a122", "a211", "a222")
        values = (a111, a122, a211, a222)
        return [
            b.eq(f"{name} = 1", value, 1) if one else b.ne(f"{name} != 1", value, 1)
            for name, value, one in zip(names, values, ones)
        ]

    def p_zero(b):
        return [b.eq("p1 = 0", p1), b.eq("p2 = 0", p2)]

    def q_zero(b):
        return [b.eq("q12^(0) = 0", q0), b.eq("q12^(1) = 0", q1), b.eq("q12^(2) = 0", q2)]

    cases = [
        (
            "a",
            lambda b: pattern(b, (True, True, True, True)),
            [
                lambda b: [b.eq("c12 = 1", c, 1), b.eq("q12^(1) = 0", q1), b.eq("q12^(2) = 0", q2)],
                lambda b: [
                    b.eq("c12 = 1", c, 1),
                    b.eq("q12^(1) = 0", q1),
                    b.ne("q12^(2) != 0", q2, 0),
                    b.eq("b11 = 0", b11),
                    b.eq("b12 = 0", b12),
                ],
                lambda b: [
                    b.eq("c12 = 1", c, 1),
                    b.ne("q12^(1) != 0", q1, 0),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("b21 = 0", b21),
                    b.eq("b22 = 0", b22),
                ],
                lambda b: p_zero(b) + [b.ne("c12 != 1", c, 1)] + q_zero(b),
                lambda b: [
                    b.eq("p1 = b11 q12^(2)/(c12-1)", p1 * (c - 1), b11 * q2),
                    b.eq("p2 = 0", p2),
                    b.ne("c12 != 1", c, 1),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(1) = 0", q1),
                    b.ne("q12^(2) != 0", q2, 0),
                    b.eq("b11 = b12", b11, b12),
                ],
                lambda b: [
                    b.eq("p1 = 0", p1),
                    b.eq("p2 = b22 q12^(1)/(c12-1)", p2 * (c - 1), b22 * q1),
                    b.ne("c12 != 1", c, 1),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(2) = 0", q2),
                    b.ne("q12^(1) != 0", q1, 0),
                    b.eq("b22 = b21", b22, b21),
                ],
                lambda b: [
                    b.eq("p1 = b11 q12^(2)/(c12-1)", p1 * (c - 1), b11 * q2),
                    b.eq("p2 = b22 q12^(1)/(c12-1)", p2 * (c - 1), b22 * q1),
                    b.ne("c12 != 1", c, 1),
                    b.eq("q12^(0) = q12^(1) q12^(2)/(c12-1)", q0 * (c - 1), q1 * q2),
                    b.ne("q12^(1) != 0", q1, 0),
                    b.ne("q12^(2) != 0", q2, 0),
                    b.eq("b11 = b12", b11, b12),
                    b.eq("b22 = b21", b22, b21),
                ],
            ],
        ),
        (
            "b",
            lambda b: pattern(b, (False, True, True, True)),
            [
                lambda b: p_zero(b)
                + [b.eq("b21 = 0", b21), b.eq("q12^(0) = 0", q0), b.eq("q12^(2) = 0", q2)]
                + [b.eq("b22 = 0 or q12^(1) = 0", b22 * q1)],
                lambda b: [
                    b.eq("p1 = 0", p1),
                    b.eq("p2 = b22 q12^(1)/(c12-1)", p2 * (c - 1), b22 * q1),
                    b.eq("b21 = 0", b21),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("c12 = a111", c, a111),
                ],
            ],
        ),
        (
            "c",
            lambda b: pattern(b, (True, False, True, True)),
            [
                lambda b: p_zero(b)
                + [b.eq("b22 = 0", b22), b.eq("q12^(0) = 0", q0), b.eq("q12^(2) = 0", q2)]
                + [b.eq("b21 = 0 or q12^(1) = 0", b21 * q1)],
                lambda b: [
                    b.eq("p1 = 0", p1),
                    b.eq("p2 = b21 q12^(1)/(c12-1)", p2 * (c - 1), b21 * q1),
                    b.eq("b22 = 0", b22),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("c12 = a122", c, a122),
                ],
            ],
        ),
        (
            "d",
            lambda b: pattern(b, (True, True, False, True)),
            [
                lambda b: p_zero(b)
                + [b.eq("b11 = 0", b11), b.eq("q12^(0) = 0", q0), b.eq("q12^(1) = 0", q1)]
                + [b.eq("b12 = 0 or q12^(2) = 0", b12 * q2)],
                lambda b: [
                    b.eq("p1 = b12 q12^(2)/(c12-1)", p1 * (c - 1), b12 * q2),
                    b.eq("p2 = 0", p2),
                    b.eq("b11 = 0", b11),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(1) = 0", q1),
                    b.eq("c12 = a211", c, a211),
                ],
            ],
        ),
        (
            "e",
            lambda b: pattern(b, (True, True, True, False)),
            [
                lambda b: p_zero(b)
                + [b.eq("b12 = 0", b12), b.eq("q12^(0) = 0", q0), b.eq("q12^(1) = 0", q1)]
                + [b.eq("b11 = 0 or q12^(2) = 0", b11 * q2)],
                lambda b: [
                    b.eq("p1 = b11 q12^(2)/(c12-1)", p1 * (c - 1), b11 * q2),
                    b.eq("p2 = 0", p2),
                    b.eq("b12 = 0", b12),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(1) = 0", q1),
                    b.eq("c12 = a211", c, a211),
                ],
            ],
        ),
        (
            "f",
            lambda b: pattern(b, (False, False, True, True)),
            [
                lambda b: p_zero(b)
                + [b.eq("b21 = 0", b21), b.eq("b22 = 0", b22), b.eq("q12^(0) = 0", q0), b.eq("q12^(2) = 0", q2)],
                lambda b: [
                    b.eq("p1 = 0", p1),
                    b.eq("b21 = 0", b21),
                    b.eq("b22 = 0", b22),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("a111 = a122", a111, a122),
                    b.eq("c12 = a111", c, a111),
                ],
            ],
        ),
        (
            "g",
            lambda b: pattern(b, (False, True, False, True)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [b.eq("b21 = b11 (a211-1)/(a111-1)", b21 * (a111 - 1), b11 * (a211 - 1))],
                lambda b: p_zero(b)
                + [
                    b.eq("a111 = a211^-1", a111 * a211, 1),
                    b.eq("q12^(1) = 0", q1),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("b21 = -a211^-1 b11", b21 * a211, -b11),
                    b.eq("q12^(0) = 0 or c12 = 0", q0 * c),
                ],
            ],
        ),
        (
            "h",
            lambda b: pattern(b, (False, True, True, False)),
            [lambda b: p_zero(b) + q_zero(b) + [b.eq("b21 = 0", b21), b.eq("b12 = 0", b12)]],
        ),
        (
            "i",
            lambda b: pattern(b, (True, False, False, True)),
            [lambda b: p_zero(b) + q_zero(b) + [b.eq("b11 = 0", b11), b.eq("b22 = 0", b22)]],
        ),
        (
            "j",
            lambda b: pattern(b, (True, False, True, False)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [b.eq("b12 = b22 (a122-1)/(a222-1)", b12 * (a222 - 1), b22 * (a122 - 1))],
                lambda b: p_zero(b)
                + [
                    b.eq("a222 = a122^-1", a222 * a122, 1),
                    b.eq("q12^(1) = 0", q1),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("b12 = -a122^-1 b22", b12 * a122, -b22),
                    b.eq("q12^(0) = 0 or c12 = 0", q0 * c),
                ],
            ],
        ),
        (
            "k",
            lambda b: pattern(b, (True, True, False, False)),
            [
                lambda b: p_zero(b)
                + [b.eq("b11 = 0", b11), b.eq("b12 = 0", b12), b.eq("q12^(0) = 0", q0), b.eq("q12^(1) = 0", q1)],
                lambda b: [
                    b.eq("p2 = 0", p2),
                    b.eq("b11 = 0", b11),
                    b.eq("b12 = 0", b12),
                    b.eq("q12^(0) = 0", q0),
                    b.eq("q12^(1) = 0", q1),
                    b.eq("a211 = a222", a211, a222),
                    b.eq("c12 = a222", c, a222),
                ],
            ],
        ),
        (
            "l",
            lambda b: pattern(b, (True, False, False, False)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [
                    b.eq("b11 = 0", b11),
                    b.eq("b12 = b22 (a122-1)/(a222-1)", b12 * (a222 - 1), b22 * (a122 - 1)),
                ]
            ],
        ),
        (
            "m",
            lambda b: pattern(b, (False, True, False, False)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [
                    b.eq("b12 = 0", b12),
                    b.eq("b21 = b11 (a211-1)/(a111-1)", b21 * (a111 - 1), b11 * (a211 - 1)),
                ]
            ],
        ),
        (
            "n",
            lambda b: pattern(b, (False, False, True, False)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [
                    b.eq("b21 = 0", b21),
                    b.eq("b12 = b22 (a122-1)/(a222-1)", b12 * (a222 - 1), b22 * (a122 - 1)),
                ]
            ],
        ),
        (
            "o",
            lambda b: pattern(b, (False, False, False, True)),
            [
                lambda b: p_zero(b)
                + q_zero(b)
                + [
                    b.eq("b22 = 0", b22),
                    b.eq("b21 = b11 (a211-1)/(a111-1)", b21 * (a111 - 1), b11 * (a211 - 1)),
                ]
            ],
        ),
        (
            "p",
            lambda b: pattern(b, (False, False, False, False)) + p_zero(b),
            [
                lambda b: q_zero(b)
                + [
                    b.eq("b12 = b22 (a122-1)/(a222-1)", b12 * (a222 - 1), b22 * (a122 - 1)),
                    b.eq("b21 = b11 (a211-1)/(a111-1)", b21 * (a111 - 1), b11 * (a211 - 1)),
                ],
                lambda b: q_zero(b)
                + [
                    b.eq("a211 = a111^-1", a211 * a111, 1),
                    b.eq("b12 = b22 (a122-1)/(a222-1)", b12 * (a222 - 1), b22 * (a122 - 1)),
                    b.eq("b21 = -a111^-1 b11", b21 * a111, -b11),
                ],
                lambda b: [
                    b.eq("q12^(1) = 0", q1),
                    b.eq("q12^(2) = 0", q2),
                    b.eq("a211 = a111^-1", a211 * a111, 1),
                    b.eq("a122 = a222^-1", a122 * a222, 1),
                    b.eq("b21 = -a111^-1 b11", b21 * a111, -b11),
                    b.eq("b12 = -a222^-1 b22", b12 * a222, -b22),
                    b.eq("c12 = 1 or q12^(0) = 0", (c - 1) * q0),
                ],
            ],
        ),
    ]
    return _rows_to_labels(KT1T2_TWO_GENERATORS, ConditionBuilder(pres), cases)


# ========== k[t1,t2], CONDITION SYSTEM ==========

def _two_variable_conditions(pres: ExtensionPresentation) -> CaseLabel:
    """Compatibility conditions for k[t1,t2] with any number of generators.

    Uses c_{j,i} = c_{i,j}^{-1}, q_{j,i}^(k) = -c_{i,j}^{-1} q_{i,j}^(k), c_{i,i} = 1
    and q_{i,i} = 0 for out-of-order indices.
    """
    b = ConditionBuilder(pres)
    n = pres.n
    C, Q = pres.c_of, pres.q_of
    a, shift = pres.scale, pres.shift

    def p(i):
        return pres.p(i).constant_term

    residuals: List[Residual] = []
    for l in (1, 2):
        for s in range(1, n + 1):
            for i in range(1, n + 1):
                if s < i:
                    residuals.append(
                        b.eq(
                            f"shift-compatibility[s={s},i={i},l={l}]",
                            shift(s, l) * (a(i, l) - 1),
                            shift(i, l) * (a(s, l) - 1),
                        )
                    )
                if s != i:
                    residuals.append(
                        b.eq(f"fixed-twist[s={s},i={i},l={l}]", Q(s, i, s) * (a(i, l) - 1))
                    )
                residuals.append(
                    b.eq(
                        f"derivation-twist[s={s},i={i},l={l}]",
                        p(i) * (C(s, i) - a(s, l)),
                        shift(i, l) * Q(s, i, s),
                    )
                )

    for i, j in generator_pairs(n):
        for s in range(1, n + 1):
            twist = C(s, j) * C(s, i)
            residuals.append(b.eq(f"twist-product[i={i},j={j},s={s}]", Q(i, j, s) * (twist - 1)))
            residuals.append(
                b.eq(
                    f"left-twist-balance[i={i},j={j},s={s}]",
                    Q(s, j, s) * (C(i, j) - 1),
                    Q(i, j, i) * (C(s, j) - 1),
                )
            )
            residuals.append(
                b.eq(
                    f"right-twist-balance[i={i},j={j},s={s}]",
                    Q(s, i, s) * (C(i, j) - 1),
                    Q(i, j, j) * (C(s, i) - 1),
                )
            )
            for k in range(1, n + 1):
                residuals.append(
                    b.eq(f"twist-cycle[i={i},j={j},s={s},k={k}]", Q(i, j, k) * (twist - 1 / C(k, s)))
                )
            quadratic = (
                sum((Q(i, j, k) * Q(k, s, s) / C(k, s) for k in range(1, s)), Fraction(0))
                - sum((Q(i, j, k) * Q(k, s, s) for k in range(s + 1, n + 1)), Fraction(0))
                + Q(s, i, s) * Q(s, j, s) * (1 - C(i, j))
                + (twist - 1) * Q(i, j, 0)
            )
            residuals.append(b.eq(f"quadratic-balance[i={i},j={j},s={s}]", quadratic))
    return CaseLabel(KT1T2_CONDITIONS, "(all)", tuple(residuals))


def evaluate_tables(pres: ExtensionPresentation) -> List[CaseLabel]:
    """Every label applicable to the presentation's base arity and generator count."""
    labels: List[CaseLabel] = []
    if pres.base_arity == 1:
        if pres.n == 2:
            labels.extend(_two_generator_table(pres))
        elif pres.n == 3:
            labels.extend(_general_table(pres, KT_THREE_GENERATORS))
        else:
            labels.extend(_general_table(pres, KT_GENERAL))
        labels.append(_sigma_derivation_label(pres))
    else:
        if pres.n == 2:
            labels.extend(_two_variable_table(pres))
        labels.append(_two_variable_conditions(pres))
    logger.debug(f"✓ Evaluated {len(labels)} table row(s) for {pres.describe()}")
    return labels
