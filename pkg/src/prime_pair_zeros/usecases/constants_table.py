"""Use case: Hardy-Littlewood constants and the L_2 comparison row."""

from typing import Any, Dict, List, Optional, Sequence

from ..domain.entities import ConstantRow
from ..domain.errors import DomainError
from ..engine.hlconstants import (
    DEFAULT_PRIME_LIMIT,
    c2_tail_bound,
    pair_asymptotic,
    singular_ratio,
    twin_prime_constant,
)
from ..interfaces.logger_port import LoggerPort


class ConstantsTableUseCase:
    """C_2 and the C_2r table for r <= m."""

    def __init__(self, logger: LoggerPort, prime_limit: int = DEFAULT_PRIME_LIMIT):
        self.logger = logger
        self.prime_limit = prime_limit

    def execute(self, m: int, l2_checkpoints: Optional[Sequence[int]] = None) -> Dict[str, Any]:
        """{"c2", "c2_tail_bound", "rows", "l2"}; rows carry the exact ratio C_2r / C_2."""
        if m < 1:
            raise DomainError(f"m must be >= 1, got {m}")
        self.logger.info("Computing constants", m=m, prime_limit=self.prime_limit)
        c2 = twin_prime_constant(self.prime_limit)
        rows: List[ConstantRow] = []
        for r in range(1, m + 1):
            ratio = singular_ratio(r)
            rows.append(
                ConstantRow(
                    r=r,
                    two_r=2 * r,
                    ratio_num=ratio.numerator,
                    ratio_den=ratio.denominator,
                    c_2r=c2 * ratio.numerator / ratio.denominator,
                )
            )
        l2 = []
        for x in l2_checkpoints or []:
            value = pair_asymptotic(2, x, c2)
            l2.append({"x": int(x), "value": value, "rounded": round(value)})
        return {
            "c2": c2,
            "c2_tail_bound": c2_tail_bound(self.prime_limit),
            "rows": rows,
            "l2": l2,
        }

    @staticmethod
    def to_csv(rows: Sequence[ConstantRow]) -> str:
        """r,two_r,ratio_num,ratio_den,c_2r with c_2r rounded to 12 decimals."""
        lines = ["r,two_r,ratio_num,ratio_den,c_2r"]
        for row in rows:
            lines.append(f"{row.r},{row.two_r},{row.ratio_num},{row.ratio_den},{row.c_2r:.12f}")
        return "\n".join(lines) + "\n"
