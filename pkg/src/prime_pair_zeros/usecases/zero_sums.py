"""Use case: sums over zeta zeros."""

from typing import Optional, Sequence, Union

from ..domain.entities import CutoffR, ProbeReport, SeriesResult
from ..domain.errors import DomainError
from ..engine.kernels import get_kernel
from ..engine.zetazeros import (
    ZeroSet,
    choose_cutoff,
    g_lambda,
    omega_probe,
    sigma1,
    sigma2_square,
    sigma3_opposite,
    sigma4,
    sigma4_difference,
    sigma_lambda,
    u3_constituent,
)
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort
from ..interfaces.zeros_port import ZerosPort

ZERO_SUM_OPS = (
    "sigma1",
    "sigma2",
    "sigma3",
    "sigma",
    "sigma4",
    "sigma4diff",
    "glambda",
    "omega",
    "u3",
)


class ZeroSumUseCase:
    """Dispatches one zero-sum operation over a loaded zeros table."""

    def __init__(self, zeros_port: ZerosPort, metrics_port: MetricsPort, logger: LoggerPort):
        self.zeros = zeros_port
        self.metrics = metrics_port
        self.logger = logger

    @staticmethod
    def cutoff_for(zeros: ZeroSet, height: Optional[float]) -> CutoffR:
        """Cutoff in the ordinate gap at height, or above the whole table."""
        return choose_cutoff(zeros, zeros.last if height is None else height)

    def execute(
        self,
        op: str,
        zeros_file: str,
        s: complex,
        lam: float,
        kernel_name: str = "jackson",
        cutoff_height: Optional[float] = None,
        count: Optional[int] = None,
        delta: Optional[float] = None,
        deltas: Sequence[float] = (),
        threads: int = 1,
    ) -> Union[SeriesResult, ProbeReport]:
        if op not in ZERO_SUM_OPS:
            raise DomainError(f"Unknown zero-sum op {op!r}; expected one of {ZERO_SUM_OPS}")
        kernel = get_kernel(kernel_name)
        logger = self.logger.bind(op=op, kernel=kernel.name, lam=lam)

        if op == "u3":
            value = u3_constituent(s, lam, kernel)
            return SeriesResult.of(value, terms_used=0, tail_estimate=0.0, metadata={"s": str(s)})

        zeros = self.zeros.load(zeros_file, count)
        logger.info("Zero sum started", zeros=len(zeros), source=zeros.source, s=str(s))
        if op == "omega":
            if not deltas:
                raise DomainError("omega needs a delta grid")
            cutoff = self.cutoff_for(zeros, cutoff_height)
            report = omega_probe(lam, kernel, zeros, deltas, cutoff, threads, logger)
            logger.info("Zero sum completed", estimate=report.estimate)
            return report
        if op in ("sigma4", "sigma4diff"):
            if op == "sigma4diff":
                if delta is None:
                    raise DomainError("sigma4diff needs --delta")
                result = sigma4_difference(delta, lam, kernel, zeros, threads)
            else:
                result = sigma4(s, lam, kernel, zeros, threads)
        else:
            cutoff = self.cutoff_for(zeros, cutoff_height)
            if op == "sigma1":
                result = sigma1(s, lam, kernel, zeros, cutoff)
            elif op == "sigma2":
                result = sigma2_square(s, lam, kernel, zeros, cutoff, threads)
            elif op == "sigma3":
                result = sigma3_opposite(s, lam, kernel, zeros, cutoff, threads)
            elif op == "sigma":
                result = sigma_lambda(s, lam, kernel, zeros, cutoff, threads)
            else:
                result = g_lambda(s, lam, kernel, zeros, cutoff, threads=threads)

        self.metrics.increment("zeros.pairs", result.terms_used)
        logger.info(
            "Zero sum completed", terms_used=result.terms_used, tail_estimate=result.tail_estimate
        )
        return result
