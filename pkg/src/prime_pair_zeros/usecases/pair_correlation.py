"""Use case: Montgomery pair correlation over a zeros table."""

from typing import List, Optional, Sequence

from ..domain.entities import PairCorrelationPoint
from ..engine.zetazeros import montgomery_prediction, pair_correlation_F
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort
from ..interfaces.zeros_port import ZerosPort


class PairCorrelationUseCase:
    """F_w(alpha, T) for several alpha, printed next to the predicted leading terms."""

    def __init__(self, zeros_port: ZerosPort, metrics_port: MetricsPort, logger: LoggerPort):
        self.zeros = zeros_port
        self.metrics = metrics_port
        self.logger = logger

    def execute(
        self,
        zeros_file: str,
        alphas: Sequence[float],
        count: Optional[int] = None,
        height: Optional[float] = None,
        threads: int = 1,
    ) -> List[PairCorrelationPoint]:
        """T defaults to the last ordinate kept."""
        zeros = self.zeros.load(zeros_file, count)
        height = zeros.last if height is None else height
        used = zeros.count(height)
        self.logger.info("Pair correlation", zeros=used, height=height, alphas=list(alphas))
        points = []
        for alpha in alphas:
            value = pair_correlation_F(alpha, zeros, height, threads)
            points.append(
                PairCorrelationPoint(
                    alpha=alpha,
                    height=height,
                    zeros_used=used,
                    value=value,
                    prediction=montgomery_prediction(alpha, height),
                )
            )
            self.metrics.increment("zeros.pairs", used * (used - 1) // 2)
        return points
