"""Value objects for domain entities."""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ComplexPoint(BaseModel):
    """A point s = sigma + i*tau of the complex plane."""

    model_config = ConfigDict(frozen=True)

    sigma: float = Field(..., description="Real part")
    tau: float = Field(0.0, description="Imaginary part")

    @field_validator("sigma", "tau")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        """Reject NaN and infinities."""
        if not math.isfinite(v):
            raise ValueError(f"Coordinate must be finite: {v}")
        return v

    @classmethod
    def of(cls, s: complex) -> "ComplexPoint":
        """Create from a Python complex."""
        s = complex(s)
        return cls(sigma=s.real, tau=s.imag)

    @classmethod
    def parse(cls, text: str) -> "ComplexPoint":
        """Parse the CLI form `<re>,<im>` (the imaginary part may be omitted)."""
        parts = [p.strip() for p in text.split(",")]
        if not parts or len(parts) > 2 or not parts[0]:
            raise ValueError(f"Invalid complex point: {text!r} (expected <re>,<im>)")
        try:
            sigma = float(parts[0])
            tau = float(parts[1]) if len(parts) == 2 and parts[1] else 0.0
        except ValueError:
            raise ValueError(f"Invalid complex point: {text!r} (expected <re>,<im>)")
        return cls(sigma=sigma, tau=tau)

    @property
    def value(self) -> complex:
        return complex(self.sigma, self.tau)

    @property
    def is_real(self) -> bool:
        return self.tau == 0.0

    def right_of_critical_line(self) -> bool:
        """sigma > 1/2."""
        return self.sigma > 0.5

    def in_critical_strip_right_half(self) -> bool:
        """1/2 < sigma < 1, the region of the zero sums."""
        return 0.5 < self.sigma < 1.0

    def in_pole_regime(self) -> bool:
        """s = 1/2 + delta with 0 < delta < 1/4 on the real axis side."""
        return 0.5 < self.sigma < 0.75

    def __str__(self) -> str:
        return f"{self.sigma!r},{self.tau!r}"


class EvenDifference(BaseModel):
    """Even positive prime-pair difference 2r."""

    model_config = ConfigDict(frozen=True)

    value: int = Field(..., description="The difference 2r")

    @field_validator("value")
    @classmethod
    def validate_even(cls, v: int) -> int:
        """2r must be even and positive."""
        if v <= 0 or v % 2 != 0:
            raise ValueError(f"Difference must be even and positive: {v}")
        return v

    @property
    def r(self) -> int:
        return self.value // 2

    def __str__(self) -> str:
        return str(self.value)
