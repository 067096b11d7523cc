"""Use case: truncated Dirichlet series over prime pairs."""

import math
from typing import Optional, Sequence, Union

from ..domain.entities import IdentityResidual, ProbeReport, SeriesResult
from ..domain.errors import DomainError
from ..domain.policies import TruncationPolicy
from ..engine.dirichlet import (
    c2r_residue_probe,
    d0_pole_probe,
    d_2r,
    identity_residual,
    odd_difference_terms,
    t_lambda_expansion,
    v_lambda,
    v_lambda_residue_probe,
)
from ..engine.kernels import get_kernel
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort
from .prime_tables import PrimeTableProvider

SERIES_OPS = (
    "d2r",
    "d0pole",
    "tlambda",
    "vlambda",
    "odd",
    "identity",
    "c2rprobe",
    "vprobe",
)


class DirichletSeriesUseCase:
    """Dispatches one series operation; the prime table is sized from N and the offsets."""

    def __init__(self, tables: PrimeTableProvider, metrics_port: MetricsPort, logger: LoggerPort):
        self.tables = tables
        self.metrics = metrics_port
        self.logger = logger

    @staticmethod
    def reach(op: str, two_r: int, lam: float) -> int:
        """How far past N the partners of a term can lie."""
        if op in ("d2r", "c2rprobe"):
            return two_r
        if op == "d0pole":
            return 0
        if op in ("vlambda", "vprobe"):
            return 2 * int(math.floor(lam / 2.0))
        return max(int(math.ceil(lam)) - 1, 2 * int(math.floor(lam / 2.0)))

    def execute(
        self,
        op: str,
        s: complex,
        n_terms: int,
        two_r: int = 2,
        lam: float = 1.0,
        kernel_name: str = "jackson",
        deltas: Sequence[float] = (),
        strict: bool = False,
        c2: Optional[float] = None,
        threads: int = 1,
    ) -> Union[SeriesResult, ProbeReport, IdentityResidual]:
        if op not in SERIES_OPS:
            raise DomainError(f"Unknown series op {op!r}; expected one of {SERIES_OPS}")
        if n_terms < 1:
            raise DomainError(f"--terms must be >= 1, got {n_terms}")
        logger = self.logger.bind(op=op)
        table = self.tables.get(n_terms + self.reach(op, two_r, lam))
        logger.info("Series started", n_terms=n_terms, two_r=two_r, lam=lam, s=str(s))

        if op in ("d0pole", "c2rprobe", "vprobe"):
            if not deltas:
                raise DomainError(f"{op} needs a delta grid")
            if op == "d0pole":
                report = d0_pole_probe(deltas, table, strict, threads, logger)
            elif op == "c2rprobe":
                report = c2r_residue_probe(two_r, deltas, table, n_terms, c2, threads)
            else:
                kernel = get_kernel(kernel_name)
                report = v_lambda_residue_probe(lam, kernel, deltas, table, n_terms, c2, threads)
            for row in report.rows:
                self.metrics.increment("series.terms", row.n_terms)
            logger.info("Series completed", trend=report.trend_toward_target, label=report.label)
            return report

        shift = two_r if op == "d2r" else self.reach(op, two_r, lam)
        plan = TruncationPolicy.plan(n_terms, complex(s).real, shift)
        if op == "d2r":
            result = d_2r(s, two_r, plan, table, threads)
        else:
            kernel = get_kernel(kernel_name)
            if op == "identity":
                residual = identity_residual(s, lam, kernel, plan, table, threads)
                logger.info("Series completed", relative=residual.relative)
                return residual
            if op == "tlambda":
                result = t_lambda_expansion(s, lam, kernel, plan, table, threads)
            elif op == "vlambda":
                result = v_lambda(s, lam, kernel, plan, table, threads)
            else:
                result = odd_difference_terms(s, lam, kernel, plan, table)
        self.metrics.increment("series.terms", result.terms_used)
        logger.info(
            "Series completed", terms_used=result.terms_used, tail_estimate=result.tail_estimate
        )
        return result
