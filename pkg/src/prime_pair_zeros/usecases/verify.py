"""Use case: run the acceptance suites against contracts/expectations.yml."""

import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..domain.entities import SeriesResult, VerificationCheck, VerificationReport
from ..domain.errors import ConfigurationError, DomainError
from ..domain.policies import TruncationPolicy
from ..engine.dirichlet import (
    d0_pole_probe,
    d_2r,
    identity_residual,
    odd_difference_terms,
    t_lambda_expansion,
    v_lambda,
)
from ..engine.hlconstants import (
    pair_asymptotic,
    singular_ratio,
    singular_ratios,
    twin_prime_constant,
)
from ..engine.kernels import (
    JACKSON,
    STOCK_KERNELS,
    SievingKernel,
    mellin_M,
    mellin_quadrature,
    mellin_residue,
    residue_at_one,
)
from ..engine.special import gamma, zeta, zeta_log_deriv
from ..engine.zetazeros import (
    ZeroSet,
    cutoff_for_count,
    g_lambda,
    pair_correlation_F,
    sigma1,
    sigma2_square,
    sigma4,
)
from ..interfaces.expectations_port import ExpectationsPort
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort
from ..interfaces.zeros_port import ZerosPort
from .count_pairs import CountPairsUseCase
from .prime_tables import PrimeTableProvider

SUITES = (
    "table1",
    "constants",
    "kernels",
    "identity",
    "special",
    "pole",
    "consistency",
    "zeros",
    "paircorr",
)
ZERO_SUITES = ("zeros", "paircorr")
POLE_TABLE_LIMIT = 10**7
FULL_POLE_TABLE_LIMIT = 10**8
LOG_DERIV_TERMS = 10**6
CONSISTENCY_OPS = ("d2r", "tlambda", "vlambda", "odd")
ZERO_CONSISTENCY_OPS = ("sigma1", "sigma2_square", "sigma4", "pair_correlation_F")
ZERO_CONSISTENCY_MIN_COUNT = 12
PAIRCORR_ALPHAS = (0.25, 0.5, 1.0, 1.5, 2.0)


class VerifyUseCase:
    """Runs named suites and collects one VerificationCheck per criterion."""

    def __init__(
        self,
        expectations_port: ExpectationsPort,
        count_pairs: CountPairsUseCase,
        tables: PrimeTableProvider,
        zeros_port: ZerosPort,
        metrics_port: MetricsPort,
        logger: LoggerPort,
    ):
        self.expectations = expectations_port
        self.count_pairs = count_pairs
        self.tables = tables
        self.zeros = zeros_port
        self.metrics = metrics_port
        self.logger = logger
        self._full = False
        self._zeros_file: Optional[str] = None
        self._threads = 1

    def execute(
        self,
        suites: Optional[Sequence[str]] = None,
        full: bool = False,
        zeros_file: Optional[str] = None,
        threads: int = 1,
    ) -> VerificationReport:
        """Suites needing zeros are skipped by default when no zeros file is given,
        and are a configuration error when requested explicitly.
        """
        requested = list(suites) if suites else list(SUITES)
        unknown = [name for name in requested if name not in SUITES]
        if unknown:
            raise DomainError(f"Unknown suite(s) {unknown}; expected one of {SUITES}")
        skipped: List[str] = []
        if zeros_file is None:
            explicit = [name for name in requested if name in ZERO_SUITES] if suites else []
            if explicit:
                raise ConfigurationError(
                    f"Suite(s) {explicit} need a zeros table: "
                    "pass --zeros-file or set PPZ_ZEROS_FILE"
                )
            skipped = [name for name in requested if name in ZERO_SUITES]
            requested = [name for name in requested if name not in ZERO_SUITES]

        self._full = full
        self._zeros_file = zeros_file
        self._threads = threads
        checks: List[VerificationCheck] = []
        for name in requested:
            contract = self.expectations.load_suite(name)
            if contract is None:
                raise ConfigurationError(f"No expectations for suite {name!r}")
            self.logger.info("Suite started", suite=name)
            suite_checks = getattr(self, f"_suite_{name}")(contract)
            failed = sum(1 for check in suite_checks if not check.passed)
            self.metrics.increment("verify.passed", len(suite_checks) - failed)
            self.metrics.increment("verify.failed", failed)
            if failed:
                self.logger.warning("Suite failed", suite=name, failed=failed)
            self.logger.info("Suite completed", suite=name, checks=len(suite_checks))
            checks.extend(suite_checks)
        return VerificationReport(
            checks=checks,
            metadata={"suites": requested, "skipped": skipped, "full": full},
        )

    @staticmethod
    def _check(
        suite: str,
        name: str,
        passed: bool,
        measured: Any = None,
        expected: Any = None,
        detail: Optional[str] = None,
    ) -> VerificationCheck:
        return VerificationCheck(
            suite=suite,
            name=name,
            passed=bool(passed),
            measured=measured,
            expected=expected,
            detail=detail,
        )

    def _suite_table1(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        columns = list(contract["checkpoints"]) + list(contract.get("full_checkpoints", []))
        checkpoints = columns if self._full else list(contract["checkpoints"])
        rows = {int(two_r): row for two_r, row in contract["rows"].items()}
        checks = []
        for record in self.count_pairs.execute(sorted(rows), checkpoints):
            expected = rows[record.two_r]["counts"][columns.index(record.x)]
            checks.append(
                self._check(
                    "table1",
                    f"pi_{record.two_r}({record.x})",
                    record.count == expected,
                    record.count,
                    expected,
                )
            )
        for two_r, row in sorted(rows.items()):
            ratio = singular_ratio(two_r // 2)
            expected = Fraction(str(row["ratio"]))
            checks.append(
                self._check(
                    "table1", f"C_{two_r}/C_2", ratio == expected, str(ratio), str(expected)
                )
            )
        c2 = twin_prime_constant()
        for x, expected in zip(columns, contract["l2_row"]):
            rounded = round(pair_asymptotic(2, x, c2))
            checks.append(
                self._check("table1", f"L_2({x})", rounded == expected, rounded, expected)
            )
        return checks

    def _suite_constants(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        c2 = twin_prime_constant()
        checks = [
            self._check(
                "constants",
                "C_2",
                abs(c2 - contract["c2"]) <= contract["c2_tolerance"],
                c2,
                contract["c2"],
                f"tolerance {contract['c2_tolerance']}",
            )
        ]
        lo, hi = contract["deviation_range"]
        m = np.arange(1, hi + 1, dtype=np.float64)
        partial = c2 * np.cumsum(singular_ratios(hi))
        deviation = np.abs(partial - m + 0.5 * np.log(m)) / np.log(m + 1.0) ** (2.0 / 3.0)
        worst = float(deviation[lo - 1 :].max())
        checks.append(
            self._check(
                "constants",
                f"S_m deviation on [{lo}, {hi}]",
                worst <= contract["deviation_bound"],
                worst,
                contract["deviation_bound"],
            )
        )
        return checks

    def _suite_kernels(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        checks = []
        rng = np.random.default_rng(contract.get("seed", 0))
        for name, kernel in sorted(STOCK_KERNELS.items()):
            for lam in contract["lambdas"]:
                value = mellin_M(kernel, lam, 0j).value
                checks.append(
                    self._check(
                        "kernels",
                        f"{name} M^{lam}(0)",
                        abs(value - 1.0) <= contract["mellin_at_zero_tolerance"],
                        [value.real, value.imag],
                        1.0,
                    )
                )
                residue = mellin_residue(kernel, lam, radius=contract["residue_radius"])
                expected = residue_at_one(kernel, lam)
                checks.append(
                    self._check(
                        "kernels",
                        f"{name} residue at 1, lambda={lam}",
                        abs(residue - expected) <= contract["residue_tolerance"],
                        [residue.real, residue.imag],
                        expected,
                    )
                )
            worst = 0.0
            for _ in range(contract["quadrature_points"]):
                z = complex(rng.uniform(0.1, 0.9), rng.uniform(-5.0, 5.0))
                lam = float(rng.choice(contract["lambdas"]))
                closed = mellin_M(kernel, lam, z).value
                numeric = mellin_quadrature(kernel, lam, z)
                worst = max(worst, abs(closed - numeric) / max(1.0, abs(closed)))
            checks.append(
                self._check(
                    "kernels",
                    f"{name} closed form vs quadrature",
                    worst <= contract["quadrature_tolerance"],
                    worst,
                    contract["quadrature_tolerance"],
                )
            )
        return checks

    def _suite_identity(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        lambdas = [float(lam) for lam in contract["lambdas"]]
        reach = max(int(math.ceil(lam)) for lam in lambdas)
        table = self.tables.get(max(contract["n_terms"]) + reach)
        checks = []
        for lam in lambdas:
            for re, im in contract["points"]:
                s = complex(re, im)
                for n_terms in contract["n_terms"]:
                    plan = TruncationPolicy.plan(n_terms, s.real, reach)
                    result = identity_residual(s, lam, JACKSON, plan, table, self._threads)
                    checks.append(
                        self._check(
                            "identity",
                            f"lambda={lam:g} s={re:g}{im:+g}i N={n_terms}",
                            result.relative <= contract["tolerance"],
                            result.relative,
                            contract["tolerance"],
                        )
                    )
        plan = TruncationPolicy.plan(min(contract["n_terms"]), 2.0, 2)
        for lam in (1.0, 1.5, 2.0):
            value = v_lambda(2.0, lam, JACKSON, plan, table).value
            checks.append(
                self._check(
                    "identity", f"V^{lam:g} vanishes", value == 0, [value.real, value.imag], 0
                )
            )
        return checks

    def _suite_special(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        tolerance = contract["gamma_tolerance"]
        half = gamma(0.5)
        checks = [
            self._check(
                "special",
                "Gamma(1/2) = sqrt(pi)",
                abs(half - math.sqrt(math.pi)) <= tolerance,
                half.real,
                math.sqrt(math.pi),
            )
        ]
        for y in contract["modulus_heights"]:
            ratio = abs(gamma(complex(0.5, y))) ** 2 * math.cosh(math.pi * y) / math.pi
            checks.append(
                self._check(
                    "special",
                    f"|Gamma(1/2+{y}i)|^2 cosh(pi y)/pi",
                    abs(ratio - 1.0) <= tolerance,
                    ratio,
                    1.0,
                )
            )
        z2 = zeta(2.0)
        checks.append(
            self._check(
                "special",
                "zeta(2) = pi^2/6",
                abs(z2 - math.pi**2 / 6.0) <= contract["zeta_tolerance"],
                z2.real,
                math.pi**2 / 6.0,
            )
        )
        errors = [abs((h * zeta(1.0 + h)) - 1.0) for h in (1e-2, 1e-3, 1e-4)]
        checks.append(
            self._check(
                "special",
                "(s-1) zeta(s) -> 1",
                errors[0] > errors[1] > errors[2] and errors[2] < 1e-3,
                errors,
                1.0,
            )
        )
        table = self.tables.get(LOG_DERIV_TERMS)
        powers = table.prime_powers(LOG_DERIV_TERMS)
        n = powers.n.astype(np.float64)
        # the omitted tail sum_{n > N} Lambda(n) n^-2 is 1/N to leading order
        oracle = -(math.fsum((powers.lam / (n * n)).tolist()) + 1.0 / LOG_DERIV_TERMS)
        computed = zeta_log_deriv(2.0)
        checks.append(
            self._check(
                "special",
                "zeta'/zeta(2) vs Dirichlet series",
                abs(computed - oracle) <= contract["log_deriv_tolerance"],
                computed.real,
                oracle,
            )
        )
        return checks

    def _suite_pole(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        table = self.tables.get(FULL_POLE_TABLE_LIMIT if self._full else POLE_TABLE_LIMIT)
        report = d0_pole_probe(
            contract["deltas"], table, threads=self._threads, logger=self.logger.bind(suite="pole")
        )
        target = contract["target"]
        band = contract["relative_band"]
        row = next(r for r in report.rows if math.isclose(r.delta, contract["check_delta"]))
        return [
            self._check(
                "pole",
                f"delta^2 D_0 at delta={row.delta:g}",
                target * (1 - band) < row.corrected < target * (1 + band),
                row.corrected,
                target,
                f"N={row.n_terms}, capped={row.capped}",
            ),
            self._check(
                "pole",
                "trend toward 1/4",
                report.trend_toward_target is True,
                [r.corrected for r in report.rows],
                target,
            ),
        ]

    def _suite_consistency(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        """Doubling N moves each truncated series by less than its N-term tail bound."""
        rng = np.random.default_rng(contract["seed"])
        table = self.tables.get(2 * 10**4 + 16)
        kernels = sorted(STOCK_KERNELS.items())
        checks = []
        for draw in range(contract["draws"]):
            op = CONSISTENCY_OPS[draw % len(CONSISTENCY_OPS)]
            s = complex(rng.uniform(0.6, 2.0), rng.uniform(-10.0, 10.0))
            n_terms = int(rng.integers(1000, 10001))
            two_r = 2 * int(rng.integers(0, 9))
            lam = float(rng.uniform(1.0, 12.0))
            name, kernel = kernels[int(rng.integers(0, len(kernels)))]
            values = []
            for n in (n_terms, 2 * n_terms):
                plan = TruncationPolicy.plan(n, s.real, 16)
                if op == "d2r":
                    values.append(d_2r(s, two_r, plan, table))
                elif op == "tlambda":
                    values.append(t_lambda_expansion(s, lam, kernel, plan, table))
                elif op == "vlambda":
                    values.append(v_lambda(s, lam, kernel, plan, table))
                else:
                    values.append(odd_difference_terms(s, lam, kernel, plan, table))
            change = abs(values[1].value - values[0].value)
            checks.append(
                self._check(
                    "consistency",
                    f"{op} #{draw} s={s.real:.3f}{s.imag:+.3f}i N={n_terms}",
                    change <= values[0].tail_estimate,
                    change,
                    values[0].tail_estimate,
                    f"two_r={two_r}" if op == "d2r" else f"{name} lambda={lam:.3f}",
                )
            )
        return checks

    def _suite_zeros(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        zeros = self.zeros.load(self._zeros_file)
        n = min(contract["count"], len(zeros))
        cutoff = cutoff_for_count(zeros, n)
        checks = []
        for sigma in contract["sigmas"]:
            s = complex(sigma)
            for lam in contract["lambdas"]:
                result = sigma2_square(s, float(lam), JACKSON, zeros, cutoff, self._threads)
                checks.append(
                    self._check(
                        "zeros",
                        f"sigma2 >= -tail at sigma={sigma:g} lambda={lam}",
                        result.value_re >= -result.tail_estimate,
                        result.value_re,
                        -result.tail_estimate,
                        f"{n} zeros",
                    )
                )
        for sigma in contract["sigmas"]:
            value = g_lambda(complex(sigma), 1.0, JACKSON, zeros, cutoff).value
            checks.append(
                self._check(
                    "zeros",
                    f"G^1 vanishes at sigma={sigma:g}",
                    value == 0,
                    [value.real, value.imag],
                    0,
                )
            )
        checks.extend(self._zero_count_doubling(zeros, contract))
        return checks

    def _zero_count_doubling(
        self, zeros: ZeroSet, contract: Dict[str, Any]
    ) -> List[VerificationCheck]:
        """Doubling the number of zeros moves each sum by less than its n-zero tail estimate.

        F_w(alpha, T) carries no truncation tail; its check is that ordinates
        above T leave it unchanged.
        """
        top = min(contract["consistency_max_count"], len(zeros) // 2)
        if top < ZERO_CONSISTENCY_MIN_COUNT:
            raise ConfigurationError(
                f"zero-sum consistency needs {2 * ZERO_CONSISTENCY_MIN_COUNT} zeros, "
                f"table has {len(zeros)}"
            )
        rng = np.random.default_rng(contract["consistency_seed"])
        kernels = sorted(STOCK_KERNELS.items())
        checks = []
        for draw in range(contract["consistency_draws"]):
            op = ZERO_CONSISTENCY_OPS[draw % len(ZERO_CONSISTENCY_OPS)]
            n = int(rng.integers(ZERO_CONSISTENCY_MIN_COUNT, top + 1))
            lam = float(rng.uniform(1.0, 10.0))
            name, kernel = kernels[int(rng.integers(0, len(kernels)))]
            s = complex(rng.uniform(0.55, 0.8), rng.uniform(-3.0, 3.0))
            delta = float(rng.uniform(0.05, 0.2))
            alpha = float(rng.uniform(0.0, 2.0))
            height = float(zeros.ordinates[n - 1])
            if op == "sigma4":
                s = complex(0.5 + delta)
                label = f"{name} lambda={lam:.3f} delta={delta:.3f}"
            elif op == "pair_correlation_F":
                label = f"alpha={alpha:.3f}"
            else:
                label = f"{name} lambda={lam:.3f} s={s.real:.3f}{s.imag:+.3f}i"
            values = [
                self._zero_sum(op, s, lam, kernel, zeros, count, alpha, height)
                for count in (n, 2 * n)
            ]
            change = abs(values[1].value - values[0].value)
            checks.append(
                self._check(
                    "zeros",
                    f"{op} #{draw} n={n} vs {2 * n}",
                    change <= values[0].tail_estimate,
                    change,
                    values[0].tail_estimate,
                    label,
                )
            )
        return checks

    def _zero_sum(
        self,
        op: str,
        s: complex,
        lam: float,
        kernel: SievingKernel,
        zeros: ZeroSet,
        count: int,
        alpha: float,
        height: float,
    ) -> SeriesResult:
        if op == "sigma1":
            return sigma1(s, lam, kernel, zeros, cutoff_for_count(zeros, count))
        if op == "sigma2_square":
            cutoff = cutoff_for_count(zeros, count)
            return sigma2_square(s, lam, kernel, zeros, cutoff, self._threads)
        head = zeros.truncate(count)
        if op == "sigma4":
            return sigma4(s, lam, kernel, head, self._threads)
        value = pair_correlation_F(alpha, head, height, self._threads)
        return SeriesResult.of(value, terms_used=head.count(height), tail_estimate=0.0)

    def _suite_paircorr(self, contract: Dict[str, Any]) -> List[VerificationCheck]:
        zeros = self.zeros.load(self._zeros_file)
        zeros = zeros.truncate(min(contract["count"], len(zeros)))
        height = zeros.last
        log_t = math.log(height)
        at_one = pair_correlation_F(1.0, zeros, height, self._threads)
        at_zero = pair_correlation_F(0.0, zeros, height, self._threads)
        lo, hi = contract["log_ratio_band"]
        checks = [
            self._check(
                "paircorr",
                "|F(1, T) - 1|",
                abs(at_one - 1.0) <= contract["alpha_one_band"],
                at_one,
                1.0,
                f"{len(zeros)} zeros, T={height:.6f}",
            ),
            self._check(
                "paircorr", "F(0, T) / log T", lo < at_zero / log_t < hi, at_zero / log_t, [lo, hi]
            ),
        ]
        for alpha in PAIRCORR_ALPHAS:
            plus = pair_correlation_F(alpha, zeros, height, self._threads)
            minus = pair_correlation_F(-alpha, zeros, height, self._threads)
            checks.append(
                self._check(
                    "paircorr",
                    f"F({alpha}) >= floor",
                    plus >= contract["floor"],
                    plus,
                    contract["floor"],
                )
            )
            checks.append(
                self._check(
                    "paircorr",
                    f"F({alpha}) = F(-{alpha})",
                    abs(plus - minus) <= contract["symmetry_tolerance"],
                    abs(plus - minus),
                    contract["symmetry_tolerance"],
                )
            )
        return checks
