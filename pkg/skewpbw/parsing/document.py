"""
Presentation Documents
Reads JSON presentation files into ExtensionPresentation values and writes them back.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from skewpbw.algebra.base_ring import AffineMap, BasePoly
from skewpbw.algebra.presentation import ExtensionPresentation
from skewpbw.error_handler import PresentationInputError, ShapeError
from skewpbw.models import PresentationDocument, SigmaEntry
from skewpbw.utils.validators import PresentationFileValidator

logger = logging.getLogger(__name__)


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "document"
    more = f" (+{error.error_count() - 1} more)" if error.error_count() > 1 else ""
    return f"{location}: {first['msg']}{more}"


def parse_document(text: str) -> PresentationDocument:
    """JSON text -> validated document; syntax errors carry line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationInputError(f"malformed JSON: {e.msg}", line=e.lineno, column=e.colno) from e
    try:
        return PresentationDocument.model_validate(data)
    except ValidationError as e:
        raise PresentationInputError(f"schema violation at {_validation_message(e)}") from e


def document_to_presentation(doc: PresentationDocument) -> ExtensionPresentation:
    """Build the presentation; per-field count mismatches are left for validate_shape."""
    m = doc.base_arity
    try:
        sigma = [
            AffineMap(tuple(Fraction(e.scale) for e in row), tuple(Fraction(e.shift) for e in row))
            for row in doc.sigma
        ]
    except ShapeError as e:
        raise PresentationInputError(f"sigma: {e}") from e

    delta_p: List[BasePoly] = []
    for entry in doc.delta_p:
        if isinstance(entry, list):
            delta_p.append(BasePoly.from_coefficients(Fraction(v) for v in entry))
        else:
            delta_p.append(BasePoly.constant(m, Fraction(entry)))

    c = [Fraction(v) for row in doc.c for v in row]
    q = None if doc.q is None else [[Fraction(v) for v in row] for row in doc.q]
    pres = ExtensionPresentation.build(m, sigma, delta_p, c=c, q=q, name=doc.name or "")
    if doc.generators != pres.n:
        raise PresentationInputError(f"generators is {doc.generators} but sigma lists {pres.n} maps")
    return pres


def presentation_to_document(pres: ExtensionPresentation) -> PresentationDocument:
    sigma = [
        [SigmaEntry(scale=str(a), shift=str(b)) for a, b in zip(s.scales, s.shifts)]
        for s in pres.sigma
    ]
    delta_p: List[Union[List[str], str]] = []
    for p in pres.delta_p:
        if pres.base_arity == 1:
            delta_p.append([str(v) for v in p.coefficients()] or ["0"])
        else:
            delta_p.append(str(p.constant_term))
    c_rows, index = [], 0
    for i in range(1, pres.n):
        width = pres.n - i
        c_rows.append([str(v) for v in pres.c[index:index + width]])
        index += width
    q_rows = [[str(v) for v in row] for row in pres.q]
    return PresentationDocument(
        name=pres.name or None,
        base_arity=pres.base_arity,
        generators=pres.n,
        sigma=sigma,
        delta_p=delta_p,
        c=c_rows,
        q=q_rows if any(any(row) for row in pres.q) else None,
    )


def load_presentation(path: Union[str, Path]) -> ExtensionPresentation:
    path = Path(path)
    is_valid, message = PresentationFileValidator.validate_file(path)
    if not is_valid:
        raise PresentationInputError(f"{path}: {message}")
    pres = document_to_presentation(parse_document(path.read_text(encoding="utf-8")))
    logger.info(f"✅ Loaded presentation {pres.describe()} from {path.name}")
    return pres


def dump_presentation(pres: ExtensionPresentation) -> str:
    return presentation_to_document(pres).model_dump_json(indent=2, exclude_none=True)
