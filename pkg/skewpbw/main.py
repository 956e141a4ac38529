# ============= skewpbw/main.py (command-line front end) =============

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from skewpbw import config
from skewpbw.algebra.automorphisms import (
    cached_standard_autos,
    check_automorphism,
    check_pairwise_commute,
    check_respects_relations,
)
from skewpbw.algebra.presentation import (
    ExtensionPresentation,
    classify_case,
    matched_labels,
    validate_shape,
)
from skewpbw.calculus.certifier import certify
from skewpbw.error_handler import (
    ErrorHandler,
    ExitCode,
    ExpressionParseError,
    InternalAlgebraError,
    PresentationInputError,
    UnknownGeneratorError,
)
from skewpbw.models import AutomorphismReport, CaseLabelReport, ResidualEntry
from skewpbw.parsing.document import load_presentation
from skewpbw.parsing.expression import reduce_expression
from skewpbw.utils.exporters import CertificateExporter
from skewpbw.utils.logger import setup_logging
from skewpbw.utils.validators import PresentationFileValidator

logger = logging.getLogger(__name__)


# ============= HELPERS =============

def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _shape_gate(pres: ExtensionPresentation, source: str) -> Optional[ExitCode]:
    """Print violations and return FAILURE when the presentation is malformed."""
    violations = validate_shape(pres)
    if not violations:
        return None
    for violation in violations:
        print(f"invalid: {violation}")
    return ErrorHandler.handle_semantic_failure(source, f"{len(violations)} shape violation(s)")


# ============= COMMANDS =============

def cmd_validate(args) -> ExitCode:
    pres = load_presentation(args.file)
    violations = validate_shape(pres)
    if args.json:
        _emit_json({"valid": not violations, "violations": [str(v) for v in violations]})
    elif violations:
        for violation in violations:
            print(f"invalid: {violation}")
    else:
        print(f"valid: {pres.describe()} (m={pres.base_arity}, n={pres.n})")
    if violations:
        return ErrorHandler.handle_semantic_failure(args.file, f"{len(violations)} shape violation(s)")
    return ExitCode.OK


def cmd_classify(args) -> ExitCode:
    pres = load_presentation(args.file)
    gate = _shape_gate(pres, args.file)
    if gate is not None:
        return gate
    labels = classify_case(pres)
    matched = matched_labels(labels)

    if args.json:
        reports = [
            CaseLabelReport(
                label_id=label.label_id,
                matched=label.matched,
                residuals=[ResidualEntry(name=name, value=str(value)) for name, value in label.nonzero_residuals()],
            ).model_dump()
            for label in labels
        ]
        _emit_json(reports)
    elif matched:
        for label in matched:
            print(label.label_id)
    else:
        print("no match; residuals:")
        for label in labels:
            names = ", ".join(name for name, _ in label.nonzero_residuals())
            print(f"  {label.label_id}: {names}")

    if not matched:
        return ErrorHandler.handle_semantic_failure(args.file, "no table row matched")
    return ExitCode.OK


def cmd_reduce(args) -> ExitCode:
    pres = load_presentation(args.file)
    gate = _shape_gate(pres, args.file)
    if gate is not None:
        return gate
    try:
        result = reduce_expression(pres, args.expression)
    except UnknownGeneratorError as e:
        return ErrorHandler.handle_unknown_generator(args.expression, e)
    if args.json:
        _emit_json({"input": args.expression, "normal_form": str(result)})
    else:
        print(result)
    return ExitCode.OK


def cmd_autos(args) -> ExitCode:
    pres = load_presentation(args.file)
    gate = _shape_gate(pres, args.file)
    if gate is not None:
        return gate
    autos = cached_standard_autos(pres)
    reports: List[AutomorphismReport] = []
    for nu in autos:
        residuals = check_respects_relations(pres, nu).nonzero()
        reports.append(
            AutomorphismReport(
                name=nu.name,
                images=nu.describe(pres),
                residuals=[ResidualEntry(name=name, value=str(value)) for name, value in residuals],
                bijective=check_automorphism(pres, nu) if not residuals else None,
            )
        )
    commute = check_pairwise_commute(pres, autos)

    if args.json:
        _emit_json(
            {
                "automorphisms": [report.model_dump() for report in reports],
                "commutation": [ResidualEntry(name=n, value=str(v)).model_dump() for n, v in commute.nonzero()],
            }
        )
    else:
        for report in reports:
            print(f"{report.name}:")
            for image in report.images:
                print(f"  {image}")
            if report.residuals:
                for residual in report.residuals:
                    print(f"  residual {residual.name}: {residual.value}")
            else:
                print(f"  respects relations; bijective: {'yes' if report.bijective else 'no'}")
        if commute.all_zero:
            print("pairwise commute: yes")
        else:
            print("pairwise commute: no")
            for line in commute.lines():
                print(f"  {line}")

    if any(r.residuals or not r.bijective for r in reports) or not commute.all_zero:
        return ErrorHandler.handle_semantic_failure(args.file, "standard maps are not commuting automorphisms")
    return ExitCode.OK


def cmd_certify(args) -> ExitCode:
    pres = load_presentation(args.file)
    degree = args.degree if args.degree is not None else config.get_default_degree()
    certificate = certify(pres, degree=degree, trials=args.trials, seed=args.seed)

    if args.json:
        print(CertificateExporter.to_json(certificate))
    else:
        print(CertificateExporter.to_text(certificate), end="")

    if args.output:
        output = Path(args.output)
        is_valid, message = PresentationFileValidator.validate_output_path(output)
        if not is_valid:
            return ErrorHandler.handle_input_error(args.output, PresentationInputError(message))
        try:
            if output.suffix.lower() == ".json":
                CertificateExporter.export_to_json(certificate, output)
            else:
                CertificateExporter.export_to_txt(certificate, output)
        except OSError as e:
            return ErrorHandler.handle_input_error(args.output, e)

    if not certificate.is_smooth:
        return ErrorHandler.handle_semantic_failure(args.file, f"failed at stage {certificate.failing_stage}")
    return ExitCode.OK


# ============= ARGUMENT PARSING =============

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewpbw",
        description="Skew PBW extensions over k[t] and k[t1,t2]: normal forms and differential smoothness",
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("file", help="presentation document (.json)")
        sub.add_argument("--json", action="store_true", help="print JSON instead of text")
        sub.set_defaults(handler=handler)
        return sub

    add_command("validate", cmd_validate, "check the presentation's shape invariants")
    add_command("classify", cmd_classify, "list the matching classification rows")
    reduce_parser = add_command("reduce", cmd_reduce, "print the normal form of an expression")
    reduce_parser.add_argument("expression", help="e.g. 'x2*x1 + 3/2*t^2'")
    add_command("autos", cmd_autos, "print the standard automorphisms and their residuals")
    certify_parser = add_command("certify", cmd_certify, "certify differential smoothness")
    certify_parser.add_argument("--degree", type=int, default=None, help="degree bound (default: SPBW_DEGREE or 6)")
    certify_parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS, help="random trials")
    certify_parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED, help="random seed")
    certify_parser.add_argument("--output", default=None, help="also write the certificate (.json or .txt)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging("DEBUG" if args.verbose else config.LOG_LEVEL)
    logger.debug(f"🚀 Running {args.command}")

    try:
        return int(args.handler(args))
    except PresentationInputError as e:
        return int(ErrorHandler.handle_input_error(args.file, e))
    except ExpressionParseError as e:
        return int(ErrorHandler.handle_input_error("expression", e))
    except InternalAlgebraError as e:
        return int(ErrorHandler.handle_internal_error(args.command, e))


if __name__ == "__main__":
    sys.exit(main())
