"""
Expression Parser Module
pyparsing grammar for algebra expressions, evaluation through the rewriting
engine and the canonical pretty printer.

Grammar:
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := atom ['^' INT]
    atom   := RATIONAL | 't' | 't1' | 't2' | 'x'INT | '(' expr ')'
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import pyparsing as pp

from skewpbw.algebra.base_ring import BASE_VARIABLE_NAMES, BasePoly
from skewpbw.algebra.normal_form import Monomial, NormalElement, get_engine
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.error_handler import ExpressionParseError, UnknownGeneratorError

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()


# ============= AST =============

@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Power:
    base: "ExpressionAST"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["ExpressionAST", ...]


@dataclass(frozen=True)
class Sum:
    """Signed terms: (+1 | -1, term)."""

    terms: Tuple[Tuple[int, "ExpressionAST"], ...]


ExpressionAST = Union[Number, Symbol, Power, Product, Sum]


# ============= grammar =============

def _build_grammar() -> pp.ParserElement:
    integer = pp.Word(pp.nums).set_name("integer")
    rational = pp.Regex(r"\d+(/\d+)?").set_name("rational")

    def to_number(s, loc, toks):
        denominator = toks[0].partition("/")[2]
        if denominator and int(denominator) == 0:
            raise pp.ParseException(s, loc, "zero denominator")
        return Number(Fraction(toks[0]))

    rational.set_parse_action(to_number)
    base_variable = pp.Regex(r"t[12]|t(?![0-9])").set_name("base variable")
    generator = pp.Regex(r"x\d+").set_name("generator")
    symbol = (base_variable | generator).set_parse_action(lambda toks: Symbol(toks[0]))

    expr = pp.Forward()
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")
    atom = rational | symbol | (lpar + expr + rpar)

    factor = atom + pp.Optional(pp.Suppress("^") + integer)
    factor.set_parse_action(lambda toks: Power(toks[0], int(toks[1])) if len(toks) == 2 else toks[0])

    term = factor + pp.ZeroOrMore(pp.Optional(pp.Suppress("*")) + factor)
    term.set_parse_action(lambda toks: Product(tuple(toks)) if len(toks) > 1 else toks[0])

    sign = pp.one_of("+ -")
    expr <<= pp.Optional(sign, default="+") + term + pp.ZeroOrMore(sign + term)

    def to_sum(toks):
        items = list(toks)
        return Sum(tuple((1 if items[k] == "+" else -1, items[k + 1]) for k in range(0, len(items), 2)))

    expr.set_parse_action(to_sum)
    return expr


GRAMMAR = _build_grammar()


def parse_expression(text: str) -> ExpressionAST:
    try:
        return GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionParseError(f"cannot parse '{text}': {e.msg}", column=e.col) from e


# ============= evaluation =============

def evaluate(pres: ExtensionPresentation, node: ExpressionAST) -> NormalElement:
    """Multiply out left to right through the rewriting engine."""
    engine = get_engine(pres)
    m, n = pres.base_arity, pres.n
    if isinstance(node, Number):
        return NormalElement.constant(m, n, node.value)
    if isinstance(node, Symbol):
        if node.name not in pres.letter_names:
            raise UnknownGeneratorError(
                f"unknown generator '{node.name}'; this presentation has {', '.join(pres.letter_names)}"
            )
        return engine.letter(pres.letter_names.index(node.name))
    if isinstance(node, Power):
        return engine.power(evaluate(pres, node.base), node.exponent)
    if isinstance(node, Product):
        return engine.product(evaluate(pres, factor) for factor in node.factors)
    total = NormalElement.zero(m, n)
    for sign, term in node.terms:
        value = evaluate(pres, term)
        total = total + value if sign > 0 else total - value
    return total


def reduce_expression(pres: ExtensionPresentation, text: str) -> NormalElement:
    result = evaluate(pres, parse_expression(text))
    logger.debug(f"✓ Reduced '{text}' to {result}")
    return result


# ============= pretty printing =============

def _power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def _join_terms(terms: Sequence[Tuple[Fraction, List[str]]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for index, (coeff, factors) in enumerate(terms):
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)


def _factor_names(base_arity: int, exps: Sequence[int]) -> List[str]:
    names = list(BASE_VARIABLE_NAMES[base_arity]) + [f"x{i}" for i in range(1, len(exps) - base_arity + 1)]
    return [_power(name, e) for name, e in zip(names, exps) if e]


def format_base_poly(p: BasePoly) -> str:
    return _join_terms([(c, _factor_names(p.arity, exp)) for exp, c in p.sorted_terms()])


def format_monomial(base_arity: int, mono: Monomial) -> str:
    return "*".join(_factor_names(base_arity, mono.base + mono.gens)) or "1"


def format_element(f: NormalElement) -> str:
    """Canonical text, e.g. 3/2*t^2*x1*x2^3 - x1 + 5; parse_expression reads it back."""
    return _join_terms([(c, _factor_names(f.base_arity, mono.base + mono.gens)) for mono, c in f.sorted_terms()])


def format_form(form) -> str:
    """dt^dx1*(coefficient) + ... ; grade-0 forms print as their coefficient."""
    if form.is_zero:
        return "0"
    names = list(BASE_VARIABLE_NAMES[form.base_arity]) + [f"x{i}" for i in range(1, form.n + 1)]
    pieces = []
    for wedge_letters, coeff in sorted(form.items()):
        text = format_element(coeff)
        if not wedge_letters:
            pieces.append(text)
            continue
        differential = "^".join(f"d{names[k]}" for k in wedge_letters)
        pieces.append(differential if text == "1" else f"{differential}*({text})")
    return " + ".join(pieces)
