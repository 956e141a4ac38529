from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

RATIONAL_PATTERN = r"^-?\d+(/\d+)?$"

RationalStr = Annotated[str, Field(pattern=RATIONAL_PATTERN)]


def _check_denominator(value: str) -> str:
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in '{value}'")
    return value


# ============= presentation documents =============

class SigmaEntry(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    scale: RationalStr
    shift: RationalStr = "0"

    @field_validator("scale", "shift")
    @classmethod
    def check_denominators(cls, value: str) -> str:
        return _check_denominator(value)


class PresentationDocument(BaseModel):
    """JSON presentation file; rationals are "p/q" or integer strings."""

    model_config = ConfigDict(extra="forbid", strict=True)

    name: Optional[str] = None
    base_arity: int = Field(ge=1, le=2)
    generators: int = Field(ge=1)
    sigma: List[List[SigmaEntry]]
    delta_p: List[Union[List[RationalStr], RationalStr]]
    c: List[List[RationalStr]] = []
    q: Optional[List[List[RationalStr]]] = None

    @field_validator("delta_p")
    @classmethod
    def check_delta_denominators(cls, value):
        for entry in value:
            for item in entry if isinstance(entry, list) else [entry]:
                _check_denominator(item)
        return value

    @field_validator("c", "q")
    @classmethod
    def check_table_denominators(cls, value):
        for row in value or []:
            for item in row:
                _check_denominator(item)
        return value


# ============= reports =============

class ResidualEntry(BaseModel):
    name: str
    value: str


class CaseLabelReport(BaseModel):
    label_id: str
    matched: bool
    residuals: List[ResidualEntry] = []


class AutomorphismReport(BaseModel):
    name: str
    images: List[str]
    residuals: List[ResidualEntry] = []
    bijective: Optional[bool] = None


class StageReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    details: List[str] = []


class SmoothnessCertificate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str
    presentation_name: Optional[str] = None
    verdict: Literal["SMOOTH", "NOT_CERTIFIED"]
    failing_stage: Optional[str] = None
    stages: List[StageReport] = []
    degree_bound: int
    diamond_degree: int
    trials: int
    rng_seed: int
    calculus_dimension: int
    gk_dimension: int
    matched_cases: List[str] = []
    assumptions: List[str] = []
    metadata: Dict[str, str] = {}

    @property
    def is_smooth(self) -> bool:
        return self.verdict == "SMOOTH"

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
