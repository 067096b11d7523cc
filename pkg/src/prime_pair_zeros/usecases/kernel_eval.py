"""Use case: evaluate sieving kernels and their Mellin transforms."""

from typing import Any, Dict, Sequence

from ..domain.entities import BoundCheckReport, MellinValue
from ..engine.kernels import (
    eval_E_hat,
    eval_E_lambda,
    get_kernel,
    mellin_bound_check,
    mellin_inversion_check,
    mellin_M,
    mellin_residue,
    residue_at_one,
)
from ..interfaces.logger_port import LoggerPort


class KernelEvalUseCase:
    """Point evaluations of E^lambda, E_hat^lambda and M^lambda for a stock kernel."""

    def __init__(self, logger: LoggerPort):
        self.logger = logger

    def mellin(self, kernel_name: str, lam: float, z: complex) -> MellinValue:
        kernel = get_kernel(kernel_name)
        self.logger.info("Evaluating Mellin transform", kernel=kernel.name, lam=lam, z=str(z))
        return mellin_M(kernel, lam, z)

    def weight(self, kernel_name: str, lam: float, nu: float) -> Dict[str, Any]:
        """E^lambda(nu) with its numerical Fourier inversion and E_hat^lambda(nu)."""
        kernel = get_kernel(kernel_name)
        return {
            "kernel": kernel.name,
            "lam": lam,
            "nu": nu,
            "E_lambda": float(eval_E_lambda(kernel, lam, nu)),
            "E_hat_lambda": float(eval_E_hat(kernel, lam, nu)),
            "inversion": mellin_inversion_check(kernel, lam, nu),
        }

    def residue(self, kernel_name: str, lam: float) -> Dict[str, Any]:
        """Residue of M^lambda at z = 1, probed against -(2 lambda / pi) A^E."""
        kernel = get_kernel(kernel_name)
        probed = mellin_residue(kernel, lam)
        return {
            "kernel": kernel.name,
            "lam": lam,
            "A_E": kernel.A_E,
            "residue_re": probed.real,
            "residue_im": probed.imag,
            "expected": residue_at_one(kernel, lam),
        }

    def bound(
        self, kernel_name: str, lam: float, x: float, y_samples: Sequence[float]
    ) -> BoundCheckReport:
        kernel = get_kernel(kernel_name)
        report = mellin_bound_check(kernel, lam, x, y_samples)
        if not report.bounded:
            self.logger.warning("Mellin growth exceeds bound", kernel=kernel.name, lam=lam, x=x)
        return report
