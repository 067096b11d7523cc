"""Complex Gamma, log Gamma, zeta and its logarithmic derivative.

Gamma(z) is evaluated with a fixed-coefficient Lanczos sum (g = 7, 9 terms) and
log Gamma(z) with Stirling's series after an upward shift, so the two paths can
check each other. zeta and zeta' use Euler-Maclaurin summation.
"""

import cmath
import math
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Union

import numpy as np

from ..domain.entities import LogGamma
from ..domain.errors import (
    BranchCutError,
    CapacityError,
    DomainError,
    NearPoleError,
    ZeroProximityError,
)

if TYPE_CHECKING:
    from .zetazeros import ZeroSet

ArrayLike = Union[complex, np.ndarray]

LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

GAMMA_POLE_TOLERANCE = 1e-10
ZETA_POLE_TOLERANCE = 1e-8
ZETA_ZERO_TOLERANCE = 1e-6
BRANCH_CUT_MARGIN = 0.05
STIRLING_SHIFT = 16.0

_LANCZOS_G = 7.0
_LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_18
BERNOULLI = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
)

# B_{2k} / (2k (2k-1)), k = 1..8
_STIRLING = tuple(float(b / ((2 * k) * (2 * k - 1))) for k, b in enumerate(BERNOULLI[:8], 1))

# B_{2k} / (2k)!, k = 1..8
_EULER_MACLAURIN = tuple(
    float(b / math.factorial(2 * k)) for k, b in enumerate(BERNOULLI[:8], 1)
)


def _nearest_nonpositive_integer(z: complex) -> Optional[int]:
    if z.real > 0.5:
        return None
    n = round(z.real)
    if abs(z - n) < GAMMA_POLE_TOLERANCE:
        return int(n)
    return None


def _check_gamma_pole(z: complex) -> None:
    n = _nearest_nonpositive_integer(z)
    if n is not None:
        raise NearPoleError(
            f"Gamma has a pole at {n}, argument {z}", pole=complex(n), pole_index=-n
        )


def log_sin(z: complex) -> complex:
    """A logarithm of sin(z), finite for large |Im z| (branch not normalized)."""
    z = complex(z)
    y = z.imag
    if abs(y) <= 1.0:
        value = cmath.sin(z)
        if value == 0:
            raise NearPoleError(f"sin vanishes at {z}", pole=z)
        return cmath.log(value)
    if y < 0:
        return log_sin(z.conjugate()).conjugate()
    # sin z = (i/2) e^{-iz} (1 - e^{2iz}), |e^{2iz}| = e^{-2y}
    return cmath.log(0.5j) - 1j * z + cmath.log(1.0 - cmath.exp(2j * z))


def log_cos(z: complex) -> complex:
    """A logarithm of cos(z)."""
    return log_sin(complex(z) + 0.5 * math.pi)


def log_sin_array(z: np.ndarray) -> np.ndarray:
    """Vectorized log_sin."""
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    y = z.imag
    small = np.abs(y) <= 1.0
    upper = y > 1.0
    lower = y < -1.0
    with np.errstate(divide="ignore"):
        out[small] = np.log(np.sin(z[small]))
    zu = z[upper]
    out[upper] = np.log(0.5j) - 1j * zu + np.log1p(-np.exp(2j * zu))
    zl = np.conj(z[lower])
    out[lower] = np.conj(np.log(0.5j) - 1j * zl + np.log1p(-np.exp(2j * zl)))
    return out


def log_cos_array(z: np.ndarray) -> np.ndarray:
    """Vectorized log_cos."""
    return log_sin_array(np.asarray(z, dtype=np.complex128) + 0.5 * math.pi)


def log_cosh_real(x: np.ndarray) -> np.ndarray:
    """log cosh(x) for real x without overflow."""
    ax = np.abs(np.asarray(x, dtype=np.float64))
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def _lanczos_log_gamma(z: complex) -> complex:
    """A logarithm of Gamma(z) for Re z >= 1/2 from the Lanczos sum."""
    z = z - 1.0
    x = _LANCZOS_COEFFICIENTS[0]
    for i, coefficient in enumerate(_LANCZOS_COEFFICIENTS[1:], 1):
        x += coefficient / (z + i)
    t = z + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma(z: complex) -> complex:
    """Gamma(z); reflection for Re z < 1/2."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"Gamma needs a finite argument, got {z}")
    _check_gamma_pole(z)
    if z.real < 0.5:
        log_value = LOG_PI - log_sin(math.pi * z) - _lanczos_log_gamma(1.0 - z)
    else:
        log_value = _lanczos_log_gamma(z)
    try:
        value = cmath.exp(log_value)
    except OverflowError as exc:
        raise CapacityError(f"Gamma({z}) is not representable as a double") from exc
    if z.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def _stirling(w: np.ndarray) -> np.ndarray:
    """Stirling's series for log Gamma(w), |w| >= 16."""
    out = (w - 0.5) * np.log(w) - w + HALF_LOG_2PI
    inv = 1.0 / w
    inv2 = inv * inv
    power = inv
    for coefficient in _STIRLING:
        out = out + coefficient * power
        power = power * inv2
    return out


def log_gamma_array(z: np.ndarray, check_branch: bool = True) -> np.ndarray:
    """Principal branch of log Gamma on an array.

    Arguments with Re z < 16 are shifted up by n and corrected with
    -sum_{k<n} log(z + k) (principal logs), which keeps the branch continuous
    off the negative real axis.
    """
    z = np.asarray(z, dtype=np.complex128)
    if check_branch and z.size:
        near_cut = np.abs(np.angle(z)) >= math.pi - BRANCH_CUT_MARGIN
        if np.any(near_cut) or np.any(z == 0):
            bad = z[near_cut | (z == 0)].ravel()[0]
            raise BranchCutError(f"log Gamma argument {bad} is within the branch-cut margin")
    shift = np.where(z.real < STIRLING_SHIFT, np.ceil(STIRLING_SHIFT - z.real), 0.0)
    n_max = int(shift.max()) if shift.size else 0
    correction = np.zeros(z.shape, dtype=np.complex128)
    for k in range(n_max):
        active = shift > k
        correction[active] += np.log(z[active] + k)
    return _stirling(z + shift) - correction


def log_gamma(z: complex) -> LogGamma:
    """log Gamma(z) as (log |Gamma|, continuous phase), |arg z| < pi - 0.05."""
    z = complex(z)
    value = complex(log_gamma_array(np.array([z]))[0])
    return LogGamma(z=(z.real, z.imag), log_modulus=value.real, phase=value.imag)


def log_gamma_anywhere(z: np.ndarray) -> np.ndarray:
    """A logarithm of Gamma(z) at any non-pole z (branch not normalized).

    Used inside products that are exponentiated, where only exp(value) matters.
    """
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    right = z.real >= 0.5
    out[right] = log_gamma_array(z[right], check_branch=False)
    left = ~right
    if np.any(left):
        zl = z[left]
        nearest = np.round(zl.real)
        pole = (np.abs(zl - nearest) < GAMMA_POLE_TOLERANCE) & (nearest <= 0)
        if np.any(pole):
            n = int(nearest[pole][0])
            raise NearPoleError(f"Gamma has a pole at {n}", pole=complex(n), pole_index=-n)
        out[left] = LOG_PI - log_sin_array(math.pi * zl) - log_gamma_array(
            1.0 - zl, check_branch=False
        )
    return out


def gamma_growth_ratio(x: float, y: float) -> float:
    """|Gamma(x+iy)| |y|^{1/2-x} e^{pi|y|/2}, which stays bounded for |y| >= 1."""
    if y == 0:
        raise DomainError("gamma_growth_ratio needs y != 0")
    log_modulus = log_gamma_anywhere(np.array([complex(x, y)]))[0].real
    return math.exp(log_modulus + (0.5 - x) * math.log(abs(y)) + 0.5 * math.pi * abs(y))


def _zeta_terms(s: complex):
    """Euler-Maclaurin pieces shared by zeta and zeta_prime."""
    if abs(s - 1.0) < ZETA_POLE_TOLERANCE:
        raise NearPoleError(f"zeta has a pole at s=1, argument {s}", pole=1 + 0j)
    if not (0.0 < s.real <= 4.0) or abs(s.imag) > 1e3:
        raise DomainError(f"zeta is supported for 0 < Re s <= 4, |Im s| <= 1000; got {s}")
    n_terms = max(20, math.ceil(2.0 * abs(s.imag)))
    n = np.arange(1, n_terms, dtype=np.float64)
    log_n = np.log(n)
    powers = np.exp(-s * log_n)
    return n_terms, log_n, powers


def _pochhammer_terms(s: complex, log_big_n: float):
    """Yield (c_k N^{-s-2k+1}, (s)_{2k-1}, d/ds (s)_{2k-1})."""
    poch = s
    dpoch = 1.0 + 0j
    for k, coefficient in enumerate(_EULER_MACLAURIN, 1):
        scale = coefficient * cmath.exp((-s - 2 * k + 1) * log_big_n)
        yield scale, poch, dpoch
        # (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
        a = s + 2 * k - 1
        b = s + 2 * k
        dpoch = dpoch * a * b + poch * (a + b)
        poch = poch * a * b


def zeta(s: complex) -> complex:
    """Riemann zeta by Euler-Maclaurin, N = max(20, ceil(2|Im s|)), 8 correction terms."""
    s = complex(s)
    n_terms, _, powers = _zeta_terms(s)
    big_n = float(n_terms)
    log_big_n = math.log(big_n)
    head = complex(math.fsum(powers.real.tolist()), math.fsum(powers.imag.tolist()))
    n_pow = cmath.exp(-s * log_big_n)
    value = head + n_pow * big_n / (s - 1.0) + 0.5 * n_pow
    for scale, poch, _ in _pochhammer_terms(s, log_big_n):
        value += scale * poch
    if s.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def zeta_prime(s: complex) -> complex:
    """zeta'(s) by term-wise differentiation of the Euler-Maclaurin formula."""
    s = complex(s)
    n_terms, log_n, powers = _zeta_terms(s)
    big_n = float(n_terms)
    log_big_n = math.log(big_n)
    head = -(log_n * powers)
    value = complex(math.fsum(head.real.tolist()), math.fsum(head.imag.tolist()))
    n_pow = cmath.exp(-s * log_big_n)
    tail = n_pow * big_n / (s - 1.0)
    value += -log_big_n * tail - tail / (s - 1.0)
    value += -0.5 * log_big_n * n_pow
    for scale, poch, dpoch in _pochhammer_terms(s, log_big_n):
        value += scale * (dpoch - log_big_n * poch)
    if s.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def zeta_log_deriv(s: complex, zeros: Optional["ZeroSet"] = None) -> complex:
    """zeta'(s)/zeta(s).

    Raises ZeroProximityError when s lies within 1e-6 of a tabulated zero or
    when |zeta(s)| < 1e-6.
    """
    s = complex(s)
    nearest = None
    if zeros is not None and len(zeros):
        nearest = zeros.nearest(abs(s.imag))
        rho = complex(0.5, math.copysign(nearest, s.imag if s.imag != 0 else 1.0))
        if abs(s - rho) < ZETA_ZERO_TOLERANCE:
            raise ZeroProximityError(f"s={s} is within 1e-6 of the zero {rho}", nearest)
    value = zeta(s)
    if abs(value) < ZETA_ZERO_TOLERANCE:
        raise ZeroProximityError(
            f"|zeta(s)| < 1e-6 at s={s}",
            nearest if nearest is not None else abs(s.imag),
        )
    return zeta_prime(s) / value
