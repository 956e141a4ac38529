"""
Smoothness Certifier
Runs every certification stage in order and stops at the first failure.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

from skewpbw import config
from skewpbw.algebra.automorphisms import (
    cached_standard_autos,
    check_automorphism,
    check_pairwise_commute,
    check_respects_relations,
)
from skewpbw.algebra.normal_form import check_pbw_diamond, get_engine
from skewpbw.algebra.presentation import (
    ExtensionPresentation,
    classify_case,
    matched_labels,
    validate_shape,
)
from skewpbw.calculus.connectedness import connected_check
from skewpbw.calculus.forms import (
    DifferentialForm,
    d,
    left_action,
    nu_omega,
    pi_omega,
    right_multiply,
    volume_form,
    wedge,
)
from skewpbw.calculus.integral import integral_generators, reconstruct_check
from skewpbw.calculus.sampling import make_rng, random_element, random_form
from skewpbw.models import SmoothnessCertificate, StageReport

logger = logging.getLogger(__name__)

MAX_DETAIL_LINES = 8

STAGES = (
    "validate-shape",
    "classify",
    "automorphism-extension",
    "automorphism-bijective",
    "automorphism-commute",
    "pbw-diamond",
    "d-squared",
    "leibniz",
    "volume-duality",
    "connected",
    "integrable",
    "dimension",
)

ASSUMPTIONS = [
    "connectedness is verified only on elements of degree <= degree_bound",
    "gk_dimension is taken as m+n, the dimension of the polynomial PBW basis",
]

METADATA = {
    "higher_grade_d": "d(omega_S f) = (-1)^|S| omega_S ^ df with closed basis wedges",
    "wedge_order": "dt_1 < ... < dt_m < dx_1 < ... < dx_n",
    "nu_omega": "nu_t1 o ... o nu_tm o nu_x1 o ... o nu_xn",
    "stage_order": (
        "the automorphism stages run before pbw-diamond; "
        "a non-confluent presentation usually stops at automorphism-extension"
    ),
}

StageOutcome = Tuple[bool, List[str]]


def _truncate(lines: Sequence[str]) -> List[str]:
    lines = list(lines)
    if len(lines) > MAX_DETAIL_LINES:
        return lines[:MAX_DETAIL_LINES] + [f"... {len(lines) - MAX_DETAIL_LINES} more"]
    return lines


class SmoothnessCertifier:
    """Stage runner for one presentation; each stage returns (passed, detail lines)."""

    def __init__(self, pres: ExtensionPresentation, degree: int, trials: int, seed: int):
        self.pres = pres
        self.degree = degree
        self.trials = trials
        self.seed = seed
        self.diamond_degree = min(degree, config.DIAMOND_DEGREE)
        self.matched_cases: List[str] = []

    def stage_functions(self) -> List[Tuple[str, Callable[[], StageOutcome]]]:
        methods = [
            self.validate_shape,
            self.classify,
            self.automorphism_extension,
            self.automorphism_bijective,
            self.automorphism_commute,
            self.pbw_diamond,
            self.d_squared,
            self.leibniz,
            self.volume_duality,
            self.connected,
            self.integrable,
            self.dimension,
        ]
        return list(zip(STAGES, methods))

    # ---------- stages ----------

    def validate_shape(self) -> StageOutcome:
        violations = validate_shape(self.pres)
        return not violations, [str(v) for v in violations]

    def classify(self) -> StageOutcome:
        labels = matched_labels(classify_case(self.pres))
        self.matched_cases = [label.label_id for label in labels]
        if not labels:
            return True, ["no table row matched"]
        return True, [f"matched {label_id}" for label_id in self.matched_cases]

    def automorphism_extension(self) -> StageOutcome:
        lines: List[str] = []
        for nu in cached_standard_autos(self.pres):
            lines.extend(check_respects_relations(self.pres, nu).lines())
        return not lines, _truncate(lines)

    def automorphism_bijective(self) -> StageOutcome:
        failing = [nu.name for nu in cached_standard_autos(self.pres) if not check_automorphism(self.pres, nu)]
        return not failing, [f"{name} is not bijective" for name in failing]

    def automorphism_commute(self) -> StageOutcome:
        report = check_pairwise_commute(self.pres, cached_standard_autos(self.pres))
        return report.all_zero, _truncate(report.lines())

    def pbw_diamond(self) -> StageOutcome:
        residuals = check_pbw_diamond(self.pres, self.diamond_degree)
        return not residuals, _truncate(str(residual) for residual in residuals)

    def d_squared(self) -> StageOutcome:
        rng = make_rng(self.seed, STAGES.index("d-squared"))
        m, n = self.pres.base_arity, self.pres.n
        lines = []
        for _ in range(self.trials):
            f = random_element(self.pres, rng, config.RANDOM_ELEMENT_DEGREE)
            twice = d(self.pres, d(self.pres, DifferentialForm.scalar(f)))
            if not twice.is_zero:
                lines.append(f"d(d({f})) = {twice}")
        for _ in range(self.trials // 2):
            form = random_form(self.pres, rng, 1, config.RANDOM_COEFF_DEGREE)
            twice = d(self.pres, d(self.pres, form))
            if not twice.is_zero:
                lines.append(f"d(d({form})) = {twice}")
        logger.debug(f"✓ d-squared sampled over m={m}, n={n}")
        return not lines, _truncate(lines)

    def leibniz(self) -> StageOutcome:
        rng = make_rng(self.seed, STAGES.index("leibniz"))
        engine = get_engine(self.pres)
        lines = []
        for _ in range(self.trials // 2):
            f = random_element(self.pres, rng, config.RANDOM_COEFF_DEGREE)
            g = random_element(self.pres, rng, config.RANDOM_COEFF_DEGREE)
            lhs = d(self.pres, DifferentialForm.scalar(engine.multiply(f, g)))
            df = d(self.pres, DifferentialForm.scalar(f))
            dg = d(self.pres, DifferentialForm.scalar(g))
            rhs = right_multiply(self.pres, df, g) + left_action(self.pres, f, dg)
            if lhs != rhs:
                lines.append(f"d(fg) - d(f)g - f d(g) = {lhs - rhs} for f = {f}, g = {g}")
        return not lines, _truncate(lines)

    def volume_duality(self) -> StageOutcome:
        rng = make_rng(self.seed, STAGES.index("volume-duality"))
        lines = []
        for _ in range(config.DUALITY_SAMPLES):
            a = random_element(self.pres, rng, config.RANDOM_COEFF_DEGREE + 2)
            top = volume_form(self.pres, a)
            if pi_omega(self.pres, top) != a:
                lines.append(f"pi_omega(omega*a) != a for a = {a}")
            if left_action(self.pres, a, volume_form(self.pres)) != volume_form(self.pres, nu_omega(self.pres, a)):
                lines.append(f"a*omega != omega*nu_omega(a) for a = {a}")
        return not lines, _truncate(lines)

    def connected(self) -> StageOutcome:
        kernel = connected_check(self.pres, self.degree)
        return kernel == 1, [f"kernel of d up to degree {self.degree} has dimension {kernel}"]

    def integrable(self) -> StageOutcome:
        rng = make_rng(self.seed, STAGES.index("integrable"))
        m, n, top = self.pres.base_arity, self.pres.n, self.pres.letter_count
        generators = integral_generators(self.pres)
        lines = []
        for grade in range(top + 1):
            tests = [form for form, _ in generators.pairs(grade)]
            tests += [
                random_form(self.pres, rng, grade, config.RANDOM_COEFF_DEGREE)
                for _ in range(config.RECONSTRUCTION_SAMPLES)
            ]
            for test in tests:
                residual = reconstruct_check(self.pres, grade, test)
                if not residual.is_zero:
                    lines.append(f"grade {grade}: residual {residual} for {test}")
        logger.debug(f"✓ Reconstruction checked on every grade 0..{top} (m={m}, n={n})")
        return not lines, _truncate(lines)

    def dimension(self) -> StageOutcome:
        top = self.pres.letter_count
        omega = volume_form(self.pres)
        lines = [f"calculus dimension {top}, assumed GK dimension {top}"]
        if omega.is_zero:
            return False, lines + ["volume form vanishes"]
        for letter in range(top):
            extra = DifferentialForm.basis(self.pres.base_arity, self.pres.n, (letter,))
            if not wedge(self.pres, omega, extra).is_zero:
                return False, lines + [f"grade {top + 1} form omega ^ d{self.pres.letter_names[letter]} is nonzero"]
        return True, lines

    # ---------- driver ----------

    def run(self) -> SmoothnessCertificate:
        stages: List[StageReport] = []
        failing: Optional[str] = None
        for name, stage in self.stage_functions():
            passed, details = stage()
            stages.append(StageReport(name=name, passed=passed, details=details))
            if passed:
                logger.info(f"✓ {name}")
            else:
                failing = name
                logger.warning(f"⚠️ Stage {name} failed for {self.pres.describe()}")
                break

        verdict = "SMOOTH" if failing is None else "NOT_CERTIFIED"
        logger.info(f"✅ Certification finished: {verdict}")
        top = self.pres.letter_count
        return SmoothnessCertificate(
            schema_version=config.SCHEMA_VERSION,
            presentation_name=self.pres.name or None,
            verdict=verdict,
            failing_stage=failing,
            stages=stages,
            degree_bound=self.degree,
            diamond_degree=self.diamond_degree,
            trials=self.trials,
            rng_seed=self.seed,
            calculus_dimension=top,
            gk_dimension=top,
            matched_cases=self.matched_cases,
            assumptions=ASSUMPTIONS,
            metadata=METADATA,
        )


def certify(
    pres: ExtensionPresentation,
    degree: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> SmoothnessCertificate:
    """Certify differential smoothness up to the degree bound; never raises on failed checks."""
    certifier = SmoothnessCertifier(
        pres,
        config.get_default_degree() if degree is None else degree,
        config.DEFAULT_TRIALS if trials is None else trials,
        config.DEFAULT_SEED if seed is None else seed,
    )
    return certifier.run()
