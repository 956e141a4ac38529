"""
Connectedness Module
Exact kernel of d on normal monomials up to a degree bound; only the scalars
should be closed.
"""

import logging
from itertools import product
from typing import Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from skewpbw.algebra.normal_form import Monomial, NormalElement
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.calculus.forms import get_calculus

logger = logging.getLogger(__name__)


def monomials_up_to(pres: ExtensionPresentation, degree: int) -> List[Monomial]:
    """Every normal monomial of total degree <= degree, sorted by (degree, exponents)."""
    m, top = pres.base_arity, pres.letter_count
    monomials = [
        Monomial(exps[:m], exps[m:])
        for exps in product(range(degree + 1), repeat=top)
        if sum(exps) <= degree
    ]
    return sorted(monomials, key=lambda mono: mono.sort_key)


def connected_check(pres: ExtensionPresentation, degree: int) -> int:
    """Dimension of ker(d) on elements of degree <= degree; 1 means only scalars are closed."""
    calc = get_calculus(pres)
    columns = monomials_up_to(pres, degree)
    rows: Dict[Tuple[int, Monomial], int] = {}
    entries: Dict[int, Dict[int, object]] = {}

    for col, mono in enumerate(columns):
        element = NormalElement.monomial(mono.base, mono.gens)
        for letter, partial in enumerate(calc.partials(element)):
            for out_mono, coeff in partial.items():
                row = rows.setdefault((letter, out_mono), len(rows))
                entries.setdefault(row, {})[col] = QQ(coeff.numerator, coeff.denominator)

    if not rows:
        kernel = len(columns)
    else:
        matrix = DomainMatrix(entries, (len(rows), len(columns)), QQ)
        kernel = len(columns) - matrix.rank()
    logger.info(f"📐 d on {len(columns)} monomials of degree <= {degree}: kernel dimension {kernel}")
    return kernel
