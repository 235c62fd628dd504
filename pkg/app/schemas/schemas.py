from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..cms_ops import OperatorKind
from ..exact_arith import Coefficient, CoefficientField, format_coefficient
from ..partitions import BiPartition, make_partition
from ..psym import SymFunc
from ..reports import CheckReport


class Command(str, Enum):
    JACK_LAURENT = "jack-laurent"
    PIERI = "pieri"
    JT_LIMIT = "jt-limit"
    APPLY_OP = "apply-op"
    VERIFY = "verify"
    SPECIALIZE = "specialize"
    CATALOG = "catalog"


class Suite(str, Enum):
    DUALITIES = "dualities"
    PIERI = "pieri"
    SPECIALIZATION = "specialization"
    JT = "jt"
    EIGEN = "eigen"
    DIAGRAMS = "diagrams"
    PROPERTIES = "properties"
    ALL = "all"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


def parse_partition_text(value: Any) -> tuple[int, ...]:
    """Comma-separated parts; ``0``, an empty string or None mean the empty partition."""
    if value is None:
        return ()
    if isinstance(value, str):
        text = value.strip()
        if text in ("", "0"):
            return ()
        try:
            value = [int(piece) for piece in text.split(",")]
        except ValueError as exc:
            raise ValueError(f"{text!r} is not a comma-separated list of integers") from exc
    return make_partition(value)


class JobConfig(BaseModel):
    """Everything a CLI invocation needs, validated before any computation starts."""

    command: Command = Field(..., description="Subcommand to run")
    lam: tuple[int, ...] = Field((), description="Partition λ")
    mu: tuple[int, ...] = Field((), description="Partition μ")
    numeric: bool = Field(False, description="Fix k and p0 to rationals")
    k: Optional[str] = Field(None, description="Rational value of k in numeric mode")
    p0: Optional[str] = Field(None, description="Rational value of p0 in numeric mode")
    degree: int = Field(4, ge=0, le=8, description="Total degree bound for basis checks")
    N: int = Field(3, ge=1, description="Number of variables")
    m: Optional[int] = Field(None, ge=0, description="Even dimension for the super specialization")
    n: Optional[int] = Field(None, ge=0, description="Odd dimension for the super specialization")
    a: Optional[int] = Field(None, ge=0, description="Shift in the specialization to Jack polynomials")
    op: Optional[OperatorKind] = Field(None, description="Operator for apply-op")
    expr: Optional[str] = Field(None, description="Input function for apply-op")
    l: str = Field("1/3", description="Coupling of the BC operator")
    suite: Suite = Field(Suite.ALL, description="Verification suite")
    max_size: int = Field(3, ge=0, le=4, description="Bound on |λ| and |μ| in the suites")
    seed: int = Field(0, description="Seed of the randomized property checks")
    out: OutputFormat = Field(OutputFormat.JSON, description="Output format")
    catalog: Optional[str] = Field(None, description="Database URL of the results catalog")
    skip: int = Field(0, ge=0)
    limit: int = Field(100, ge=1, le=1000)
    delete: Optional[int] = Field(None, ge=1, description="Catalog entry to delete")

    @field_validator("lam", "mu", mode="before")
    @classmethod
    def _parse_partition(cls, value: Any) -> tuple[int, ...]:
        return parse_partition_text(value)

    @model_validator(mode="after")
    def _check_option_combinations(self) -> "JobConfig":
        if self.numeric and (self.k is None or self.p0 is None):
            raise ValueError("--numeric requires both --k and --p0")
        if not self.numeric and (self.k is not None or self.p0 is not None):
            raise ValueError("--k and --p0 are only meaningful together with --numeric")
        if self.command is Command.APPLY_OP and (self.op is None or self.expr is None):
            raise ValueError("apply-op requires --op and --expr")
        if self.command is Command.CATALOG and self.catalog is None:
            raise ValueError("catalog requires --catalog")
        if (self.m is None) != (self.n is None):
            raise ValueError("--m and --n go together")
        if self.m is not None and self.m + self.n == 0:
            raise ValueError("--m + --n must be at least 1")
        return self

    def coefficient_field(self) -> CoefficientField:
        if self.numeric:
            return CoefficientField.numeric(self.k, self.p0)
        return CoefficientField.symbolic()


class PairSchema(BaseModel):
    lam: list[int] = Field(default_factory=list)
    mu: list[int] = Field(default_factory=list)

    @classmethod
    def from_pair(cls, pair: BiPartition) -> "PairSchema":
        return cls(lam=list(pair.lam), mu=list(pair.mu))


class TermSchema(BaseModel):
    p: list[tuple[int, int]] = Field(default_factory=list, description="(index, exponent) pairs")
    w: int = Field(0, ge=0, description="Exponent of w")
    coeff: str = Field(..., description="Coefficient in canonical text form")


class SymFuncSchema(BaseModel):
    text: str
    terms: list[TermSchema]

    @classmethod
    def from_symfunc(cls, f: SymFunc) -> "SymFuncSchema":
        return cls(
            text=f.to_text(),
            terms=[
                TermSchema(p=list(m.exps), w=m.wexp, coeff=format_coefficient(c))
                for m, c in f.sorted_terms()
            ],
        )


class MCoefficientSchema(BaseModel):
    pair: PairSchema
    coeff: str


class JackLaurentSchema(BaseModel):
    index: PairSchema
    mode: str
    eigenvalue: str
    m_coeffs: list[MCoefficientSchema]
    p_form: SymFuncSchema


class PieriTermSchema(BaseModel):
    target: PairSchema
    kind: str
    coeff: str


class CheckReportSchema(BaseModel):
    check: str
    params: dict[str, Any]
    status: str
    cases: int
    counterexample: Optional[str] = None

    @classmethod
    def from_report(cls, report: CheckReport) -> "CheckReportSchema":
        return cls(
            check=report.check,
            params=report.params,
            status=report.status.value,
            cases=report.cases,
            counterexample=report.counterexample,
        )


class FinitePolySchema(BaseModel):
    nvars: int
    terms: list[tuple[list[int], str]]


def coefficient_list(coeffs: dict[BiPartition, Coefficient]) -> list[MCoefficientSchema]:
    ordered = sorted(coeffs.items(), key=lambda item: item[0].sort_key(), reverse=True)
    return [
        MCoefficientSchema(pair=PairSchema.from_pair(pair), coeff=format_coefficient(c))
        for pair, c in ordered
    ]


class JackFunctionCreate(BaseModel):
    lam: str = Field(..., description="Parts of λ, comma-separated")
    mu: str = Field(..., description="Parts of μ, comma-separated")
    mode: str = Field(..., min_length=1, description="symbolic or numeric(k=…,p0=…)")
    eigenvalue: str
    payload: str = Field(..., description="JSON of the computed function")


class JackFunctionEntry(BaseModel):
    id: int
    lam: str
    mu: str
    mode: str
    eigenvalue: str
    model_config = ConfigDict(from_attributes=True)
