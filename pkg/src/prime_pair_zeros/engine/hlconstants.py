"""Hardy-Littlewood constants C_2 and C_2r, partial sums S_m, li_2 and R(lambda)."""

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import integrate
from scipy.special import exp1, expi

from ..domain.errors import CapacityError, DomainError
from .kernels import SievingKernel
from .sieve import simple_sieve

DEFAULT_PRIME_LIMIT = 10**7
MIN_PRIME_LIMIT = 10**3
_INT64_MAX = 2**63 - 1
_LI_2 = float(expi(math.log(2.0)))


def _log_partial_product(primes: np.ndarray) -> float:
    odd = primes[primes > 2].astype(np.float64)
    return math.fsum(np.log1p(-1.0 / (odd - 1.0) ** 2).tolist())


def twin_prime_partial_product(prime_limit: int) -> float:
    """prod_{3 <= p <= prime_limit} (1 - 1/(p-1)^2), without tail correction."""
    if prime_limit < 3:
        raise DomainError(f"prime_limit must be >= 3, got {prime_limit}")
    return math.exp(_log_partial_product(simple_sieve(prime_limit)))


@lru_cache(maxsize=8)
def twin_prime_constant(prime_limit: int = DEFAULT_PRIME_LIMIT) -> float:
    """C_2 = prod_{p > 2} (1 - 1/(p-1)^2).

    The product over 3 <= p <= P is summed in log form. The tail over p > P is
    sum_p log(1 - 1/(p-1)^2) ~ -sum_{p > P} p^-2, estimated by
    -E_1(log P) + (pi(P) - li(P)) / P^2 (prime number theorem density plus the
    boundary term of partial summation); see c2_tail_bound for the size of the tail.
    """
    if prime_limit < MIN_PRIME_LIMIT:
        raise DomainError(f"prime_limit must be >= {MIN_PRIME_LIMIT}, got {prime_limit}")
    primes = simple_sieve(prime_limit)
    head = _log_partial_product(primes)
    log_p = math.log(prime_limit)
    pi_minus_li = primes.size - float(expi(log_p))
    tail = -float(exp1(log_p)) + pi_minus_li / float(prime_limit) ** 2
    return math.exp(head + tail)


def c2_tail_bound(prime_limit: int) -> float:
    """Upper bound on |log of the omitted tail product| over p > prime_limit.

    From pi(t) < 1.25506 t / log t: sum_{p > P} p^-2 <= 2.51 / (P log P); the
    factor 1.02 covers (p-1)^-2 against p^-2 and the higher terms of log(1 - x).
    """
    if prime_limit < MIN_PRIME_LIMIT:
        raise DomainError(f"prime_limit must be >= {MIN_PRIME_LIMIT}, got {prime_limit}")
    return 1.02 * 2.51 / (prime_limit * math.log(prime_limit))


def _odd_prime_factors(n: int):
    while n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            yield p
            while n % p == 0:
                n //= p
        p += 2
    if n > 1:
        yield n


def singular_ratio(r: int) -> Fraction:
    """C_2r / C_2 = prod over odd primes p | r of (p-1)/(p-2), exactly."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    ratio = Fraction(1)
    for p in _odd_prime_factors(r):
        ratio *= Fraction(p - 1, p - 2)
        if ratio.numerator > _INT64_MAX or ratio.denominator > _INT64_MAX:
            raise CapacityError(f"C_2r/C_2 for r={r} overflows 64-bit numerator/denominator")
    return ratio


def singular_ratios(m: int) -> np.ndarray:
    """Float ratios C_2r / C_2 for r = 1..m (index r - 1), sieve style."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    ratios = np.ones(m + 1, dtype=np.float64)
    for p in simple_sieve(m)[1:].tolist():
        ratios[p::p] *= (p - 1) / (p - 2)
    return ratios[1:]


def c_2r(r: int, c2: Optional[float] = None) -> float:
    """C_2r = C_2 * ratio(r)."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    c2 = twin_prime_constant() if c2 is None else c2
    ratio = singular_ratio(r)
    return c2 * ratio.numerator / ratio.denominator


def singular_sum(m: int, c2: Optional[float] = None) -> float:
    """S_m = sum_{r=1}^m C_2r."""
    c2 = twin_prime_constant() if c2 is None else c2
    return c2 * math.fsum(singular_ratios(m).tolist())


def singular_sum_deviation(m: int, c2: Optional[float] = None) -> float:
    """|S_m - m + (1/2) log m| / log^(2/3)(m + 1)."""
    value = singular_sum(m, c2)
    return abs(value - m + 0.5 * math.log(m)) / math.log(m + 1) ** (2.0 / 3.0)


def li2(x: float) -> float:
    """int_2^x dt / log^2 t by adaptive quadrature in u = log t, split at t = e^2."""
    if x < 2:
        raise DomainError(f"li2 needs x >= 2, got {x}")
    if x == 2:
        return 0.0
    lo = math.log(2.0)
    hi = math.log(x)

    def integrand(u: float) -> float:
        return math.exp(u) / (u * u)

    pieces = [(lo, min(hi, 2.0))] if lo < 2.0 else []
    if hi > 2.0:
        pieces.append((max(lo, 2.0), hi))
    total = 0.0
    for a, b in pieces:
        value, _ = integrate.quad(integrand, a, b, epsabs=1e-12, epsrel=1e-13, limit=200)
        total += value
    return total


def li2_closed_form(x: float) -> float:
    """li(x) - x / log x - (li(2) - 2 / log 2), the same integral in closed form."""
    if x < 2:
        raise DomainError(f"li2 needs x >= 2, got {x}")
    return float(expi(math.log(x))) - x / math.log(x) - (_LI_2 - 2.0 / math.log(2.0))


def pair_asymptotic(two_r: int, x: float, c2: Optional[float] = None) -> float:
    """2 C_2r li_2(x), the conjectured size of pi_2r(x)."""
    if two_r <= 0 or two_r % 2:
        raise DomainError(f"two_r must be an even positive integer, got {two_r}")
    return 2.0 * c_2r(two_r // 2, c2) * li2(x)


def remainder_R(lam: float, kernel: SievingKernel, c2: Optional[float] = None) -> float:
    """R(lambda) = 2 sum_{0 < 2r <= lambda} E(2r/lambda) C_2r - A^E (lambda - 1)."""
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    c2 = twin_prime_constant() if c2 is None else c2
    m = int(math.floor(lam / 2.0))
    linear = kernel.A_E * (lam - 1.0)
    if m < 1:
        return -linear
    r = np.arange(1, m + 1, dtype=np.float64)
    weights = kernel.E(2.0 * r / lam)
    terms = 2.0 * c2 * weights * singular_ratios(m)
    return math.fsum(terms.tolist()) - linear
