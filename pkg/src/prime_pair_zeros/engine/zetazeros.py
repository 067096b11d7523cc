"""Sums over the nontrivial zeros rho = 1/2 + i gamma of zeta.

Ordinates are ingested from tables, never computed. Every product
Gamma * M^lambda * cos/cosh is formed as the exponential of a sum of logarithms,
because the individual factors overflow or underflow once gamma reaches a few
hundred. Double sums are cut into fixed row blocks; each block is summed exactly
rounded and blocks are folded in order, so values do not depend on the number of
worker threads.
"""

import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..domain.entities import CutoffR, ProbeReport, ProbeRow, SeriesResult
from ..domain.errors import CapacityError, DomainError, ZerosFileError
from ..domain.policies import ProbePolicy
from ..interfaces.logger_port import LoggerPort
from .hlconstants import remainder_R
from .kernels import SievingKernel, log_mellin_array
from .special import log_gamma_anywhere, log_cos_array, log_cosh_real, zeta_log_deriv
from .summation import CompensatedSum, map_ordered, row_blocks

ASSUMPTION = "beta=1/2 for all ingested zeros"
FIRST_ORDINATE_RANGE = (14.0, 14.2)
SECOND_ORDINATE_RANGE = (21.0, 21.1)
CUTOFF_CLEARANCE = 1e-3
STIRLING_THRESHOLD = 50.0
SAME_SIGN_RELATIVE = 1e-16
PAIR_WEIGHT_FLOOR = 1e-8
BLOCK_ROWS = 64
ENVELOPE_WINDOW = 8
TWO_PI = 2.0 * math.pi
HALF_LOG_2PI = 0.5 * math.log(TWO_PI)


class ZeroSet:
    """Immutable ascending table of positive ordinates gamma_1 <= gamma_2 <= ..."""

    __slots__ = ("_ordinates", "source")

    def __init__(self, ordinates: Sequence[float], source: str = "memory"):
        values = np.array(ordinates, dtype=np.float64).ravel()
        if values.size == 0:
            raise ZerosFileError("a zero set needs at least one ordinate")
        if not np.all(np.isfinite(values)) or values[0] <= 0.0:
            raise ZerosFileError("ordinates must be finite and strictly positive")
        drops = np.nonzero(np.diff(values) < 0.0)[0]
        if drops.size:
            index = int(drops[0]) + 1
            raise ZerosFileError(
                f"ordinates must be non-decreasing: {values[index]} follows {values[index - 1]}"
            )
        values.flags.writeable = False
        self._ordinates = values
        self.source = source

    def __len__(self) -> int:
        return int(self._ordinates.size)

    def __repr__(self) -> str:
        return f"ZeroSet(n={len(self)}, source={self.source!r})"

    @property
    def ordinates(self) -> np.ndarray:
        return self._ordinates

    @property
    def first(self) -> float:
        return float(self._ordinates[0])

    @property
    def last(self) -> float:
        return float(self._ordinates[-1])

    def count(self, height: float) -> int:
        """N(T) = #{gamma <= T}."""
        return int(np.searchsorted(self._ordinates, height, side="right"))

    def nearest(self, t: float) -> float:
        """The tabulated ordinate closest to t."""
        i = int(np.searchsorted(self._ordinates, t))
        candidates = self._ordinates[max(i - 1, 0) : i + 1]
        return float(candidates[np.argmin(np.abs(candidates - t))])

    def truncate(self, n: int) -> "ZeroSet":
        """The first n ordinates."""
        if not 1 <= n <= len(self):
            raise CapacityError(f"cannot truncate {len(self)} zeros to {n}")
        return ZeroSet(self._ordinates[:n], source=f"{self.source}[:{n}]")

    def check_anchors(self) -> None:
        """gamma_1 must be near 14.13 and gamma_2 near 21.02."""
        lo, hi = FIRST_ORDINATE_RANGE
        if not lo < self.first < hi:
            raise ZerosFileError(f"first ordinate {self.first} is outside ({lo}, {hi})")
        if len(self) > 1:
            lo, hi = SECOND_ORDINATE_RANGE
            second = float(self._ordinates[1])
            if not lo < second < hi:
                raise ZerosFileError(f"second ordinate {second} is outside ({lo}, {hi})")


def parse_zeros(lines: Iterable[str], source: str, require_anchors: bool = True) -> ZeroSet:
    """Parse one ordinate per line; '#' comments and blank lines are skipped."""
    values: List[float] = []
    previous = 0.0
    for line_number, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            value = float(text)
        except ValueError as exc:
            raise ZerosFileError(
                f"{source}:{line_number}: cannot parse ordinate {text!r}", line_number
            ) from exc
        if not math.isfinite(value) or value <= 0.0:
            raise ZerosFileError(
                f"{source}:{line_number}: ordinate must be positive, got {text}", line_number
            )
        if value < previous:
            raise ZerosFileError(
                f"{source}:{line_number}: ordinates must be non-decreasing "
                f"({value} after {previous})",
                line_number,
            )
        values.append(value)
        previous = value
    if len(values) < 2:
        raise ZerosFileError(f"{source}: need at least 2 ordinates, found {len(values)}")
    zeros = ZeroSet(values, source=source)
    if require_anchors:
        zeros.check_anchors()
    return zeros


def choose_cutoff(zeros: ZeroSet, target: float) -> CutoffR:
    """Midpoint of the ordinate gap containing target.

    Gaps narrower than twice the clearance are skipped. A target at the last
    ordinate yields a cutoff half a gap above it.
    """
    ordinates = zeros.ordinates
    n_total = len(zeros)
    if target > zeros.last:
        raise CapacityError(f"target {target} is beyond the last ordinate {zeros.last}")
    below_first = target < zeros.first
    n = max(zeros.count(target), 1)
    while n < n_total:
        lo, hi = float(ordinates[n - 1]), float(ordinates[n])
        if hi - lo >= 2.0 * CUTOFF_CLEARANCE:
            return CutoffR(
                value=0.5 * (lo + hi), straddles=(n, n + 1), below_first_zero=below_first
            )
        n += 1
    step = 0.5 * (zeros.last - float(ordinates[-2])) if n_total > 1 else 0.5
    step = max(step, CUTOFF_CLEARANCE)
    return CutoffR(
        value=zeros.last + step, straddles=(n_total, n_total + 1), below_first_zero=below_first
    )


def cutoff_for_count(zeros: ZeroSet, n: int) -> CutoffR:
    """A cutoff with exactly the first n ordinates below it."""
    if not 1 <= n <= len(zeros):
        raise CapacityError(f"requested {n} zeros from a table of {len(zeros)}")
    return choose_cutoff(zeros, float(zeros.ordinates[n - 1]))


def _zeros_below(zeros: ZeroSet, cutoff: CutoffR) -> int:
    if len(zeros) and abs(zeros.nearest(cutoff.value) - cutoff.value) < CUTOFF_CLEARANCE:
        raise DomainError(f"cutoff {cutoff.value} is within {CUTOFF_CLEARANCE} of an ordinate")
    return zeros.count(cutoff.value)


def _check_strip(s: complex) -> None:
    if not 0.5 < s.real < 1.0:
        raise DomainError(f"zero sums need 1/2 < Re s < 1, got {s}")


def _metadata(kernel: SievingKernel, lam: float, s: complex, zeros: ZeroSet, **extra) -> dict:
    meta = {
        "assumption": ASSUMPTION,
        "kernel": kernel.name,
        "lambda": lam,
        "s": [s.real, s.imag],
        "zeros_source": zeros.source,
    }
    meta.update(extra)
    return meta


def _density_tail(amplitude: float, height: float, power: float) -> float:
    """sum over gamma > T of amplitude (gamma/T)^-power against dN, both signs."""
    log_t = math.log(height / TWO_PI)
    p1 = power - 1.0
    return 2.0 * amplitude * height / TWO_PI * (log_t / p1 + 1.0 / (p1 * p1))


def _sigma1_log_terms(s: complex, lam: float, kernel: SievingKernel, signed: np.ndarray):
    w = (0.5 - s.real) + 1j * (signed - s.imag)
    return (
        log_gamma_anywhere(w)
        + log_mellin_array(kernel, lam, w)
        + log_cos_array(0.5 * math.pi * w)
    )


def _signed(gammas: np.ndarray) -> np.ndarray:
    return np.concatenate([gammas, -gammas])


def sigma1(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
) -> SeriesResult:
    """{zeta'/zeta(s)}^2 + 2 (zeta'/zeta)(s) sum_rho Gamma(rho-s) M^lambda(rho-s) cos(pi(rho-s)/2).

    The rho-sum runs over 1/2 +- i gamma with gamma below the cutoff. The tail
    estimate extrapolates the envelope gamma^-(m+1) from the last included and
    first omitted terms.
    """
    s = complex(s)
    _check_strip(s)
    n = _zeros_below(zeros, cutoff)
    log_deriv = zeta_log_deriv(s, zeros)
    gammas = zeros.ordinates
    acc = CompensatedSum()
    if s.imag == 0.0:
        # terms at -gamma are the conjugates of those at +gamma
        terms = np.exp(_sigma1_log_terms(s, lam, kernel, gammas[:n]))
        acc.add_block(2.0 * terms.real)
    else:
        acc.add_block(np.exp(_sigma1_log_terms(s, lam, kernel, _signed(gammas[:n]))))
    value = log_deriv * log_deriv + 2.0 * log_deriv * acc.value

    lo = max(n - ENVELOPE_WINDOW, 0)
    window = gammas[lo : n + ENVELOPE_WINDOW]
    power = kernel.smoothness + 1.0
    magnitudes = np.abs(np.exp(_sigma1_log_terms(s, lam, kernel, _signed(window))))
    heights = np.abs(_signed(window))
    amplitude = float(np.max(magnitudes * (heights / cutoff.value) ** power))
    tail = 2.0 * abs(log_deriv) * _density_tail(amplitude, cutoff.value, power)
    return SeriesResult.of(
        value,
        terms_used=2 * n,
        cutoff=cutoff,
        tail_estimate=tail,
        metadata=_metadata(kernel, lam, s, zeros, log_derivative=[log_deriv.real, log_deriv.imag]),
    )


def _stirling_leading(w: np.ndarray) -> np.ndarray:
    """(w - 1/2) log w - w + log(2 pi)/2, with relative error O(1/|w|)."""
    return (w - 0.5) * np.log(w) - w + HALF_LOG_2PI


def _majorant_shape(height: float, a: float) -> float:
    """int_R^inf log^2(y/2pi) y^(-1-a) dy."""
    log_r = math.log(height / TWO_PI)
    return height ** (-a) * (log_r * log_r / a + 2.0 * log_r / a**2 + 2.0 / a**3)


def _opposite_pairs(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    gammas: np.ndarray,
    height: float,
    threads: int,
    stirling_threshold: float,
) -> Tuple[complex, float, float, int]:
    """Sum over rho = 1/2 + i gamma, rho' = 1/2 - i gamma' of the double-sum term, times 2.

    Returns (value, tail estimate, Stirling error bound, terms).
    """
    n = gammas.size
    if n == 0:
        return 0j, 0.0, 0.0, 0
    x = 0.5 - s.real
    w_plus = x + 1j * (gammas - s.imag)
    w_minus = x + 1j * (-gammas - s.imag)
    exact_plus = log_gamma_anywhere(w_plus)
    exact_minus = log_gamma_anywhere(w_minus)
    big_plus = np.abs(w_plus.imag) >= stirling_threshold
    big_minus = np.abs(w_minus.imag) >= stirling_threshold
    approx_plus = exact_plus.copy()
    approx_minus = exact_minus.copy()
    approx_plus[big_plus] = _stirling_leading(w_plus[big_plus])
    approx_minus[big_minus] = _stirling_leading(w_minus[big_minus])
    inv_plus = np.where(big_plus, 1.0 / np.maximum(np.abs(w_plus.imag), 1.0), 0.0)
    inv_minus = np.where(big_minus, 1.0 / np.maximum(np.abs(w_minus.imag), 1.0), 0.0)
    correction = 1.0 + abs(x) + x * x
    half = n // 2
    columns = np.arange(n)

    def block(bounds: Tuple[int, int]):
        rows = np.arange(*bounds)
        stirling = big_plus[rows, None] & big_minus[None, :]
        log_gammas = np.where(
            stirling,
            approx_plus[rows, None] + approx_minus[None, :],
            exact_plus[rows, None] + exact_minus[None, :],
        )
        z = w_plus[rows, None] + w_minus[None, :]
        logs = (
            log_gammas
            + log_mellin_array(kernel, lam, z)
            + log_cosh_real(0.5 * math.pi * (gammas[rows, None] + gammas[None, :]))
        )
        terms = np.exp(logs)
        magnitude = np.abs(terms)
        error = (magnitude * (inv_plus[rows, None] + inv_minus[None, :]))[stirling]
        outer = (rows[:, None] >= half) | (columns[None, :] >= half)
        return terms, math.fsum(magnitude[outer].tolist()), math.fsum(error.tolist())

    acc = CompensatedSum()
    band = 0.0
    stirling_error = 0.0
    for terms, band_part, error_part in map_ordered(block, row_blocks(n, BLOCK_ROWS), threads):
        acc.add_block(terms.real if s.imag == 0.0 else terms)
        band += band_part
        stirling_error += error_part

    a = 2.0 * s.real - 1.0
    if half >= 2:
        inner = 0.5 * float(gammas[half - 1] + gammas[half])
        outer_shape = _majorant_shape(height, a)
        tail = band * outer_shape / (_majorant_shape(inner, a) - outer_shape)
    else:
        tail = band
    return 2.0 * acc.value, 2.0 * tail, 2.0 * correction * stirling_error, 2 * acc.terms


def _same_sign_pairs(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    gammas: np.ndarray,
    reference: complex,
) -> Tuple[complex, float, int]:
    """Same-sign pairs in shells min(i, j) = k; (value, tail, terms).

    A shell decays like exp(-pi gamma_k); summation stops at the first shell
    below SAME_SIGN_RELATIVE of the running total, and every remaining shell is
    bounded by that one.
    """
    n = gammas.size
    acc = CompensatedSum()
    tail = 0.0
    terms_used = 0
    x = 0.5 - s.real
    # for real s the negative-ordinate shells are the conjugates of the positive ones
    signs = (1.0,) if s.imag == 0.0 else (1.0, -1.0)
    for sign in signs:
        g = sign * gammas
        w = x + 1j * (g - s.imag)
        log_gammas = log_gamma_anywhere(w)
        for k in range(n):
            logs = (
                log_gammas[k]
                + log_gammas[k:]
                + log_mellin_array(kernel, lam, w[k] + w[k:])
                + log_cosh_real(0.5 * math.pi * (g[k] - g[k:]))
            )
            terms = np.exp(logs)
            terms[1:] *= 2.0
            if len(signs) == 1:
                terms = 2.0 * terms.real
            acc.add_block(terms)
            terms_used += 2 * (n - k) if len(signs) == 1 else n - k
            shell = float(np.sum(np.abs(terms)))
            if shell < SAME_SIGN_RELATIVE * abs(reference + acc.value):
                tail += shell * (n - k - 1)
                break
    return acc.value, tail, terms_used


def _square_sum(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
    threads: int,
    stirling_threshold: float,
    same_sign: bool,
) -> SeriesResult:
    s = complex(s)
    _check_strip(s)
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    n = _zeros_below(zeros, cutoff)
    gammas = zeros.ordinates[:n]
    opposite, opposite_tail, stirling_error, opposite_terms = _opposite_pairs(
        s, lam, kernel, gammas, cutoff.value, threads, stirling_threshold
    )
    same, same_tail, same_terms = 0j, 0.0, 0
    if same_sign and n:
        same, same_tail, same_terms = _same_sign_pairs(s, lam, kernel, gammas, opposite)
    value = opposite + same
    metadata = _metadata(
        kernel,
        lam,
        s,
        zeros,
        zeros_used=n,
        opposite_sign=[opposite.real, opposite.imag],
        stirling_error=stirling_error,
        stirling_threshold=stirling_threshold,
    )
    if same_sign:
        metadata["same_sign"] = [same.real, same.imag]
    return SeriesResult.of(
        value,
        terms_used=opposite_terms + same_terms,
        cutoff=cutoff,
        tail_estimate=opposite_tail + same_tail + stirling_error,
        metadata=metadata,
    )


def sigma2_square(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
    threads: int = 1,
    stirling_threshold: float = STIRLING_THRESHOLD,
) -> SeriesResult:
    """Square partial sum over |gamma|, |gamma'| < R of
    Gamma(rho-s) Gamma(rho'-s) M^lambda(rho+rho'-2s) cos(pi(rho-rho')/2).
    """
    return _square_sum(s, lam, kernel, zeros, cutoff, threads, stirling_threshold, True)


def sigma3_opposite(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
    threads: int = 1,
    stirling_threshold: float = STIRLING_THRESHOLD,
) -> SeriesResult:
    """The part of sigma2_square where gamma and gamma' have opposite signs."""
    return _square_sum(s, lam, kernel, zeros, cutoff, threads, stirling_threshold, False)


def sigma_lambda(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
    threads: int = 1,
) -> SeriesResult:
    """sigma1 + sigma2_square."""
    first = sigma1(s, lam, kernel, zeros, cutoff)
    second = sigma2_square(s, lam, kernel, zeros, cutoff, threads=threads)
    metadata = dict(second.metadata)
    metadata["sigma1"] = [first.value_re, first.value_im]
    metadata["sigma2"] = [second.value_re, second.value_im]
    return SeriesResult.of(
        first.value + second.value,
        terms_used=first.terms_used + second.terms_used,
        cutoff=cutoff,
        tail_estimate=first.tail_estimate + second.tail_estimate,
        metadata=metadata,
    )


def _band_pairs(gammas: np.ndarray, bounds: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    """(i, j) with i in bounds and |gamma_j - gamma_i| < gamma_i^(1/2)."""
    rows = np.arange(*bounds)
    width = np.sqrt(gammas[rows])
    lo = np.searchsorted(gammas, gammas[rows] - width, side="right")
    hi = np.searchsorted(gammas, gammas[rows] + width, side="left")
    counts = hi - lo
    i = np.repeat(rows, counts)
    starts = np.repeat(lo - np.concatenate([[0], np.cumsum(counts)[:-1]]), counts)
    j = starts + np.arange(int(counts.sum()))
    return i, j


def _band_sum(
    gammas: np.ndarray,
    term: Callable[[np.ndarray, np.ndarray], np.ndarray],
    threads: int,
) -> Tuple[complex, int]:
    acc = CompensatedSum()

    def block(bounds: Tuple[int, int]) -> np.ndarray:
        i, j = _band_pairs(gammas, bounds)
        return term(i, j)

    for values in map_ordered(block, row_blocks(gammas.size, 4 * BLOCK_ROWS), threads):
        acc.add_block(values)
    return acc.value, acc.terms


def _check_band_argument(s: complex, zeros: ZeroSet) -> float:
    delta = s.real - 0.5
    if not 0.0 < delta < 0.25:
        raise DomainError(f"sigma4 needs s = 1/2 + delta with 0 < delta < 1/4, got {s}")
    if len(zeros) < 1:
        raise CapacityError("sigma4 needs at least one zero")
    return delta


def _diagonal_tail(abs_m: float, delta: float, height: float) -> float:
    log_t = math.log(height / TWO_PI)
    return abs_m * height ** (-2.0 * delta) * (log_t / (2.0 * delta) + 1.0 / (4.0 * delta**2))


def sigma4(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    threads: int = 1,
) -> SeriesResult:
    """Banded double sum 2 pi sum gamma^(-2s+i(gamma-gamma')) M^lambda(1-2s+i(gamma-gamma')).

    The band is |gamma' - gamma| < gamma^(1/2); both ordinates run over the whole
    (positive) table.
    """
    s = complex(s)
    delta = _check_band_argument(s, zeros)
    gammas = zeros.ordinates
    log_g = np.log(gammas)

    def term(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        d = gammas[i] - gammas[j]
        z = 1.0 - 2.0 * s + 1j * d
        return TWO_PI * np.exp((-2.0 * s + 1j * d) * log_g[i] + log_mellin_array(kernel, lam, z))

    value, terms = _band_sum(gammas, term, threads)
    m_diag = np.exp(log_mellin_array(kernel, lam, np.array([1.0 - 2.0 * s])))[0]
    diagonal = complex(TWO_PI * m_diag * np.sum(np.exp(-2.0 * s * log_g)))
    m_real = abs(np.exp(log_mellin_array(kernel, lam, np.array([complex(-2.0 * delta)])))[0])
    return SeriesResult.of(
        value,
        terms_used=terms,
        tail_estimate=_diagonal_tail(m_real, delta, zeros.last),
        metadata=_metadata(
            kernel, lam, s, zeros, zeros_used=len(zeros), diagonal=[diagonal.real, diagonal.imag]
        ),
    )


def sigma4_difference(
    delta: float,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    threads: int = 1,
) -> SeriesResult:
    """Banded sum at lambda minus the same sum at lambda = 1, term by term.

    2 pi sum {lambda^(-2 delta + i(gamma-gamma')) - 1} gamma^(-1-2 delta+i(gamma-gamma'))
    M(-2 delta + i(gamma-gamma')); for lambda = 2 its pole should be -A^E / delta.
    """
    s = complex(0.5 + delta)
    _check_band_argument(s, zeros)
    gammas = zeros.ordinates
    log_g = np.log(gammas)
    log_lam = math.log(lam)

    def term(i: np.ndarray, j: np.ndarray) -> np.ndarray:
        z = -2.0 * delta + 1j * (gammas[i] - gammas[j])
        return (
            TWO_PI
            * np.expm1(z * log_lam)
            * np.exp((z - 1.0) * log_g[i] + log_mellin_array(kernel, 1.0, z))
        )

    value, terms = _band_sum(gammas, term, threads)
    m_real = abs(np.exp(log_mellin_array(kernel, 1.0, np.array([complex(-2.0 * delta)])))[0])
    factor = 1.0 + lam ** (-2.0 * delta)
    return SeriesResult.of(
        value,
        terms_used=terms,
        tail_estimate=factor * _diagonal_tail(m_real, delta, zeros.last),
        metadata=_metadata(kernel, lam, s, zeros, zeros_used=len(zeros), delta=delta),
    )


def u3_constituent(s: complex, lam: float, kernel: SievingKernel) -> complex:
    """Gamma(1-s)^2 M^lambda(2-2s); near s = 1/2 it behaves like A^E lambda / (s - 1/2)."""
    s = complex(s)
    z = np.array([2.0 - 2.0 * s])
    log_value = 2.0 * log_gamma_anywhere(np.array([1.0 - s]))[0] + log_mellin_array(
        kernel, lam, z
    )[0]
    value = complex(np.exp(log_value))
    if s.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def pair_correlation_F(
    alpha: float, zeros: ZeroSet, height: float, threads: int = 1
) -> float:
    """Montgomery's F_w(alpha, T) over the ordinates up to T.

    F_w = 2 pi / (T log T) sum_{0 < gamma, gamma' <= T} e^{i alpha u log T} w(u), with
    u = gamma - gamma' and w(u) = 4 / (4 + u^2). The sum is formed as
    n + 2 sum_{i<j} cos(alpha u log T) w(u), so it is real and even in alpha by
    construction; pairs with w below 1e-8 are dropped.
    """
    if height > zeros.last:
        raise CapacityError(f"T={height} is beyond the last ordinate {zeros.last}")
    if height <= zeros.first:
        raise DomainError(f"T must exceed gamma_1={zeros.first}, got {height}")
    gammas = zeros.ordinates[: zeros.count(height)]
    n = gammas.size
    log_t = math.log(height)
    frequency = alpha * log_t
    reach = 2.0 * math.sqrt(1.0 / PAIR_WEIGHT_FLOOR - 1.0)

    def block(bounds: Tuple[int, int]) -> np.ndarray:
        rows = np.arange(*bounds)
        hi = int(np.searchsorted(gammas, gammas[rows[-1]] + reach, side="right"))
        columns = np.arange(bounds[0], hi)
        d = gammas[columns][None, :] - gammas[rows][:, None]
        weight = 4.0 / (4.0 + d * d)
        keep = (columns[None, :] > rows[:, None]) & (weight >= PAIR_WEIGHT_FLOOR)
        return (np.cos(frequency * d) * weight)[keep]

    acc = CompensatedSum()
    for values in map_ordered(block, row_blocks(n, BLOCK_ROWS), threads):
        acc.add_block(values)
    total = n + 2.0 * acc.real
    return TWO_PI / (height * log_t) * total


def montgomery_prediction(alpha: float, height: float) -> float:
    """T^(-2 alpha) log T + alpha on [0, 1] and 1 beyond, even in alpha."""
    a = abs(alpha)
    if a >= 1.0:
        return 1.0
    return height ** (-2.0 * a) * math.log(height) + a


def g_lambda(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    cutoff: CutoffR,
    c2: Optional[float] = None,
    threads: int = 1,
) -> SeriesResult:
    """Sigma^lambda(s) - Sigma^1(s) - R(lambda) / (s - 1/2).

    At lambda = 1 both sums coincide and R(1) = 0, so the value is exactly 0.
    """
    s = complex(s)
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if lam == 1.0:
        _check_strip(s)
        _zeros_below(zeros, cutoff)
        return SeriesResult.of(
            0j,
            terms_used=0,
            cutoff=cutoff,
            tail_estimate=0.0,
            metadata=_metadata(kernel, lam, s, zeros, remainder_R=0.0),
        )
    at_lambda = sigma_lambda(s, lam, kernel, zeros, cutoff, threads=threads)
    at_one = sigma_lambda(s, 1.0, kernel, zeros, cutoff, threads=threads)
    remainder = remainder_R(lam, kernel, c2)
    value = at_lambda.value - at_one.value - remainder / (s - 0.5)
    return SeriesResult.of(
        value,
        terms_used=at_lambda.terms_used + at_one.terms_used,
        cutoff=cutoff,
        tail_estimate=at_lambda.tail_estimate + at_one.tail_estimate,
        metadata=_metadata(kernel, lam, s, zeros, remainder_R=remainder),
    )


def omega_probe(
    lam: float,
    kernel: SievingKernel,
    zeros: ZeroSet,
    delta_grid: Sequence[float],
    cutoff: Optional[CutoffR] = None,
    threads: int = 1,
    logger: Optional[LoggerPort] = None,
) -> ProbeReport:
    """delta * Re{Sigma^lambda - Sigma^1}(1/2 + delta) on a grid, with a Richardson step.

    The extrapolate uses the two smallest deltas and assumes the scaled value is
    linear in delta there. Rows whose tail estimate exceeds the scaled value are
    logged as warnings.
    """
    grid = sorted({float(d) for d in delta_grid}, reverse=True)
    if not grid or any(not 0.0 < d < 0.25 for d in grid):
        raise DomainError(f"delta grid must lie in (0, 1/4), got {list(delta_grid)}")
    cutoff = cutoff or choose_cutoff(zeros, zeros.last)
    target = {1.0: 0.0, 2.0: -kernel.A_E}.get(float(lam))
    rows = []
    for delta in grid:
        s = complex(0.5 + delta)
        if lam == 1.0:
            difference, tail, terms = 0.0, 0.0, 0
        else:
            upper = sigma_lambda(s, lam, kernel, zeros, cutoff, threads)
            lower = sigma_lambda(s, 1.0, kernel, zeros, cutoff, threads)
            difference = (upper.value - lower.value).real
            tail = upper.tail_estimate + lower.tail_estimate
            terms = upper.terms_used + lower.terms_used
            if logger is not None and tail > abs(difference):
                logger.warning(
                    "Tail exceeds value", delta=delta, value=difference, tail_estimate=tail
                )
        rows.append(
            ProbeRow(
                delta=delta,
                n_terms=terms,
                value=difference,
                scaled=delta * difference,
                tail_estimate=delta * tail,
            )
        )
    estimate = ProbePolicy.richardson(rows)
    trend = ProbePolicy.trend_toward(rows, target)
    notes = [
        ASSUMPTION,
        f"cutoff R={cutoff.value:.6f} ({cutoff.zeros_below} zeros); values are truncated sums",
        "estimate only: a finite computation does not decide the limsup",
    ]
    if target is None and estimate is not None:
        notes.append(f"consistency: |estimate|/lambda = {abs(estimate) / lam:.6g}")
    return ProbeReport(
        name="omega",
        target=target,
        rows=rows,
        estimate=estimate,
        trend_toward_target=trend,
        label="ESTIMATE",
        notes=notes,
    )
