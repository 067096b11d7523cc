"""Domain entities."""

import math
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator


class PairCountRecord(BaseModel):
    """pi_{2r}(x): number of prime pairs (p, p+2r) with p <= x."""

    two_r: int = Field(..., gt=0, description="Even difference 2r")
    x: int = Field(..., ge=0, description="Checkpoint")
    count: int = Field(..., ge=0, description="Exact pair count")

    @field_validator("two_r")
    @classmethod
    def validate_even(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError(f"two_r must be even: {v}")
        return v


class LogGamma(BaseModel):
    """log Gamma(z) as modulus and continuous phase."""

    z: Tuple[float, float] = Field(..., description="Argument as [re, im]")
    log_modulus: float = Field(..., description="log |Gamma(z)|")
    phase: float = Field(..., description="arg Gamma(z) along the principal log Gamma branch")

    def to_complex(self) -> complex:
        """exp(log_modulus + i*phase); overflows where Gamma is not representable."""
        return complex(math.exp(self.log_modulus)) * complex(
            math.cos(self.phase), math.sin(self.phase)
        )


class MellinValue(BaseModel):
    """M^lambda(z) = lambda^z * M(z) at one point."""

    z: Tuple[float, float] = Field(..., description="Argument as [re, im]")
    value_re: float
    value_im: float
    is_near_pole: bool = Field(False, description="Evaluated through the removable-limit rule")

    @property
    def point(self) -> complex:
        return complex(*self.z)

    @property
    def value(self) -> complex:
        return complex(self.value_re, self.value_im)


class CutoffR(BaseModel):
    """Summation cutoff R placed strictly between two consecutive ordinates."""

    value: float = Field(..., gt=0, description="Cutoff height R")
    straddles: Tuple[int, int] = Field(
        ..., description="(n, n+1): R lies between gamma_n and gamma_{n+1} (1-based)"
    )
    below_first_zero: bool = Field(False, description="Target was below gamma_1")

    @property
    def zeros_below(self) -> int:
        """Number of ordinates below the cutoff."""
        return self.straddles[0]

    @classmethod
    def below_first(cls, first_ordinate: float) -> "CutoffR":
        """Cutoff gamma_1 / 2, which makes every zero sum empty."""
        return cls(value=0.5 * first_ordinate, straddles=(0, 1), below_first_zero=True)


class SeriesResult(BaseModel):
    """Value of a truncated sum with its truncation metadata."""

    value_re: float
    value_im: float
    terms_used: int = Field(..., ge=0)
    cutoff: Optional[CutoffR] = Field(None, description="Zero-sum cutoff, if any")
    n_terms: Optional[int] = Field(None, description="Dirichlet truncation N, if any")
    tail_estimate: float = Field(..., ge=0)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("tail_estimate")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"tail_estimate must be finite: {v}")
        return v

    @classmethod
    def of(cls, value: complex, **kwargs: Any) -> "SeriesResult":
        value = complex(value)
        return cls(value_re=value.real, value_im=value.imag, **kwargs)

    @property
    def value(self) -> complex:
        return complex(self.value_re, self.value_im)


class TruncationPlan(BaseModel):
    """Number of Dirichlet terms and the analytic bound on the omitted tail."""

    n_terms: int = Field(..., ge=1)
    tail_bound: float = Field(..., ge=0)
    sigma: float = Field(..., description="Real part the bound was computed for")
    shift: int = Field(0, ge=0, description="Partner offset h in log(n+h)")


class IdentityResidual(BaseModel):
    """T^lambda against D_0 + V^lambda + odd-difference terms at one truncation."""

    s_re: float
    s_im: float
    lam: float
    n_terms: int = Field(..., ge=1)
    expansion: Tuple[float, float] = Field(..., description="T^lambda as (re, im)")
    decomposition: Tuple[float, float] = Field(..., description="D_0 + V^lambda + H as (re, im)")
    residual: float = Field(..., ge=0, description="|expansion - decomposition|")
    relative: float = Field(..., ge=0, description="residual / |expansion|")


class ProbeRow(BaseModel):
    """One grid point of a residue or pole probe."""

    delta: float
    n_terms: int = Field(..., ge=0)
    value: float = Field(..., description="Raw (real part of the) series value")
    scaled: float = Field(..., description="delta^k * value")
    tail_estimate: float = Field(..., ge=0)
    corrected: Optional[float] = Field(None, description="Scaled value with modelled tail")
    capped: bool = Field(False, description="Truncation limited by table capacity")


class ProbeReport(BaseModel):
    """Table produced by a probe; an exploration, not a decision."""

    name: str
    target: Optional[float] = None
    rows: List[ProbeRow] = Field(default_factory=list)
    estimate: Optional[float] = Field(None, description="Extrapolated limit, if computed")
    trend_toward_target: Optional[bool] = None
    label: Literal["ESTIMATE", "REPORT", "INVALID"] = "REPORT"
    notes: List[str] = Field(default_factory=list)


class BoundSample(BaseModel):
    """One sample of a growth-bound check."""

    y: float
    modulus: float
    ratio: float


class BoundCheckReport(BaseModel):
    """|f(x+iy)| * (|y|+1)^exponent over samples."""

    kernel: str
    lam: float
    x: float
    exponent: float
    samples: List[BoundSample] = Field(default_factory=list)
    bounded: bool = True


class VerificationCheck(BaseModel):
    """Single acceptance criterion with its measured value."""

    suite: str
    name: str
    passed: bool
    measured: Any = None
    expected: Any = None
    detail: Optional[str] = None


class VerificationReport(BaseModel):
    """Outcome of one or more verification suites."""

    checks: List[VerificationCheck] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[VerificationCheck]:
        return [check for check in self.checks if not check.passed]


class RunConfig(BaseModel):
    """Effective configuration of one CLI run."""

    subcommand: str
    flags: Dict[str, Any] = Field(default_factory=dict)
    cache_dir: str
    output_format: Literal["csv", "json"] = "json"
    zeros_file: Optional[str] = None
    threads: int = Field(1, ge=1)


class ConstantRow(BaseModel):
    """One row of the C_2r table; ratio_num/ratio_den = C_2r / C_2 exactly."""

    r: int = Field(..., ge=1)
    two_r: int
    ratio_num: int
    ratio_den: int = Field(..., ge=1)
    c_2r: float


class PairCorrelationPoint(BaseModel):
    """F_w(alpha, T) next to its predicted leading terms."""

    alpha: float
    height: float
    zeros_used: int = Field(..., ge=0)
    value: float
    prediction: float


class OutputMetadata(BaseModel):
    """Reproducibility block attached to every JSON output."""

    config: Dict[str, Any]
    config_sha256: str = Field(..., min_length=64, max_length=64)
    metrics: Dict[str, int] = Field(default_factory=dict)
    assumption: Optional[str] = Field(None, description="Set by outputs that use zeta zeros")


class RunOutput(BaseModel):
    """JSON document written to stdout by every subcommand."""

    command: str
    result: Union[
        SeriesResult,
        ProbeReport,
        IdentityResidual,
        VerificationReport,
        MellinValue,
        BoundCheckReport,
        List[PairCountRecord],
        List[ConstantRow],
        List[PairCorrelationPoint],
        Dict[str, Any],
    ]
    metadata: OutputMetadata
