"""Segmented odd-only sieve, von Mangoldt values and prime-pair counts."""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..domain.entities import PairCountRecord
from ..domain.errors import CapacityError, DomainError
from .summation import CompensatedSum

MAX_LIMIT = 2**40
MIN_SEGMENT_SIZE = 2**10
DEFAULT_SEGMENT_SIZE = 2**18

# Odd entries per streaming block when counting pairs
COUNT_BLOCK = 2**20

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10^24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit by a plain bytewise sieve."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def integer_root(n: int, k: int) -> int:
    """Largest r with r**k <= n."""
    if n < 0 or k < 1:
        raise DomainError(f"integer_root needs n >= 0 and k >= 1, got n={n}, k={k}")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with a fixed witness set (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sieve_odd_segment(i0: int, i1: int, base_odd: List[int]) -> np.ndarray:
    """Packed primality bits of the odd numbers 2i+1, i in [i0, i1)."""
    lo = 2 * i0 + 1
    hi = 2 * i1 + 1
    mask = np.ones(i1 - i0, dtype=bool)
    if i0 == 0:
        mask[0] = False
    for p in base_odd:
        p2 = p * p
        if p2 >= hi:
            break
        start = max(p2, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - lo) // 2 :: p] = False
    return np.packbits(mask)


class PrimePowers:
    """Sorted prime powers n <= bound with their von Mangoldt values."""

    def __init__(self, n: np.ndarray, lam: np.ndarray, bound: int):
        self.n = n
        self.lam = lam
        self.bound = bound

    def __len__(self) -> int:
        return int(self.n.size)

    def upto(self, x: int) -> "PrimePowers":
        """Restriction to n <= x."""
        if x > self.bound:
            raise CapacityError(f"Prime powers known up to {self.bound}, requested {x}")
        k = int(np.searchsorted(self.n, x, side="right"))
        return PrimePowers(self.n[:k], self.lam[:k], x)

    def lookup(self, m: np.ndarray) -> np.ndarray:
        """Lambda(m) for an integer array m (0 where m is not a prime power)."""
        m = np.asarray(m, dtype=np.int64)
        idx = np.searchsorted(self.n, m)
        idx_clipped = np.minimum(idx, max(self.n.size - 1, 0))
        out = np.zeros(m.shape, dtype=np.float64)
        if self.n.size == 0:
            return out
        hit = (idx < self.n.size) & (self.n[idx_clipped] == m)
        out[hit] = self.lam[idx_clipped[hit]]
        return out


class PrimeTable:
    """Bit-packed primality of the odd numbers up to limit.

    Bit i of the packed array (big-endian within each byte) tells whether 2i+1
    is prime; 2 is handled separately. The table is immutable once built.
    """

    def __init__(self, limit: int, segment_size: int, bits: np.ndarray, segments: int):
        self._limit = limit
        self._segment_size = segment_size
        self._bits = bits
        self._bits.setflags(write=False)
        self.segments = segments

    @classmethod
    def build(
        cls, limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1
    ) -> "PrimeTable":
        if not isinstance(limit, (int, np.integer)) or limit < 2 or limit > MAX_LIMIT:
            raise CapacityError(f"limit must lie in [2, 2^40], got {limit}")
        if segment_size < MIN_SEGMENT_SIZE:
            raise DomainError(f"segment_size must be >= {MIN_SEGMENT_SIZE}, got {segment_size}")
        limit = int(limit)
        # segments are whole bytes so packed pieces concatenate exactly
        seg = -(-int(segment_size) // 8) * 8
        n_odd = (limit + 1) // 2
        base_odd = simple_sieve(math.isqrt(limit))[1:].tolist()
        bounds = [(i0, min(i0 + seg, n_odd)) for i0 in range(0, n_odd, seg)]

        if threads > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                pieces = list(pool.map(lambda b: _sieve_odd_segment(b[0], b[1], base_odd), bounds))
        else:
            pieces = [_sieve_odd_segment(i0, i1, base_odd) for i0, i1 in bounds]

        bits = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.uint8)
        return cls(limit, seg, bits, len(bounds))

    @property
    def limit(self) -> int:
        return self._limit

    @property
    def segment_size(self) -> int:
        return self._segment_size

    @property
    def n_odd(self) -> int:
        return (self._limit + 1) // 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeTable):
            return NotImplemented
        return self._limit == other._limit and np.array_equal(self._bits, other._bits)

    __hash__ = None  # type: ignore[assignment]

    def _check(self, x: int) -> None:
        if x > self._limit:
            raise CapacityError(f"{x} exceeds prime table limit {self._limit}")

    def is_prime(self, n: int) -> bool:
        """Primality of 2 <= n <= limit."""
        self._check(n)
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        i = n // 2
        return bool((self._bits[i >> 3] >> (7 - (i & 7))) & 1)

    def is_prime_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorized primality for integers in [0, limit]."""
        values = np.asarray(values, dtype=np.int64)
        if values.size and int(values.max()) > self._limit:
            raise CapacityError(f"{int(values.max())} exceeds prime table limit {self._limit}")
        out = values == 2
        odd = (values % 2 == 1) & (values > 1)
        i = values[odd] // 2
        out[odd] = ((self._bits[i >> 3] >> (7 - (i & 7))) & 1).astype(bool)
        return out

    def odd_flags(self, i0: int, i1: int) -> np.ndarray:
        """Primality of 2i+1 for i in [i0, i1); entries past the table are False."""
        n_odd = self.n_odd
        stop = min(i1, n_odd)
        if stop <= i0:
            return np.zeros(max(i1 - i0, 0), dtype=bool)
        raw = np.unpackbits(self._bits[i0 >> 3 : (stop + 7) >> 3])
        off = i0 & 7
        flags = raw[off : off + stop - i0].astype(bool)
        if stop < i1:
            flags = np.concatenate([flags, np.zeros(i1 - stop, dtype=bool)])
        return flags

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo <= p <= hi."""
        self._check(hi)
        lo = max(lo, 2)
        if hi < lo:
            return np.zeros(0, dtype=np.int64)
        i0 = lo // 2
        i1 = (hi - 1) // 2 + 1
        idx = np.flatnonzero(self.odd_flags(i0, i1))
        odd = (2 * (i0 + idx.astype(np.int64)) + 1)
        odd = odd[(odd >= lo) & (odd <= hi)]
        if lo <= 2 <= hi:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def primes_up_to(self, x: int) -> np.ndarray:
        return self.primes_in(2, x)

    def prime_count(self, x: int) -> int:
        """pi(x), counted block by block from the packed bits."""
        self._check(x)
        if x < 2:
            return 0
        i_end = (x - 1) // 2 + 1
        total = 1
        for b0 in range(0, i_end, COUNT_BLOCK):
            total += int(np.count_nonzero(self.odd_flags(b0, min(b0 + COUNT_BLOCK, i_end))))
        return total

    def prime_powers(self, x: int) -> PrimePowers:
        """All prime powers n <= x with Lambda(n)."""
        self._check(x)
        primes = self.primes_up_to(x)
        ns = [primes]
        lams = [np.log(primes.astype(np.float64))]
        base = primes[primes <= math.isqrt(max(x, 0))]
        k = 2
        while base.size and 2**k <= x:
            sel = base[base <= integer_root(x, k)]
            if sel.size == 0:
                break
            ns.append(sel**k)
            lams.append(np.log(sel.astype(np.float64)))
            k += 1
        n = np.concatenate(ns)
        lam = np.concatenate(lams)
        order = np.argsort(n, kind="stable")
        return PrimePowers(n[order], lam[order], x)

    def mangoldt_segment(self, lo: int, hi: int) -> np.ndarray:
        """Dense Lambda(n) for n in [lo, hi]."""
        if lo < 1:
            raise DomainError(f"Lambda is defined for n >= 1, got lo={lo}")
        self._check(hi)
        out = np.zeros(max(hi - lo + 1, 0), dtype=np.float64)
        if hi < lo:
            return out
        primes = self.primes_in(lo, hi)
        out[primes - lo] = np.log(primes.astype(np.float64))
        base = self.primes_up_to(math.isqrt(hi))
        k = 2
        while base.size and 2**k <= hi:
            sel = base[base <= integer_root(hi, k)]
            if sel.size == 0:
                break
            pk = sel**k
            inside = pk >= lo
            out[pk[inside] - lo] = np.log(sel[inside].astype(np.float64))
            k += 1
        return out


def build_prime_table(
    limit: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1
) -> PrimeTable:
    """Sieve [2, limit] into a PrimeTable."""
    return PrimeTable.build(limit, segment_size, threads)


def von_mangoldt(n: int, table: Optional[PrimeTable] = None) -> float:
    """Lambda(n): log p if n = p^k, else 0."""
    n = int(n)
    if n < 1:
        raise DomainError(f"Lambda(n) is defined for n >= 1, got {n}")
    if n == 1:
        return 0.0
    for k in range(n.bit_length() - 1, 0, -1):
        root = integer_root(n, k)
        if root**k != n:
            continue
        if table is not None and root <= table.limit:
            prime = table.is_prime(root)
        else:
            prime = is_probable_prime(root)
        return math.log(root) if prime else 0.0
    return 0.0


def check_difference(two_r: int, allow_zero: bool = False) -> None:
    if two_r % 2 != 0 or two_r < 0 or (two_r == 0 and not allow_zero):
        kind = "non-negative" if allow_zero else "positive"
        raise DomainError(f"two_r must be an even {kind} integer, got {two_r}")


def count_prime_pair_grid(
    table: PrimeTable, two_rs: Sequence[int], checkpoints: Sequence[int]
) -> List[PairCountRecord]:
    """pi_{2r}(x) for every (2r, x) of the grid in a single pass over the table.

    Records come out grouped by two_r in the given order, checkpoints ascending.
    """
    if not two_rs:
        return []
    for two_r in two_rs:
        check_difference(two_r)
    cps = [int(c) for c in checkpoints]
    if not cps:
        return []
    if any(b < a for a, b in zip(cps, cps[1:])):
        raise DomainError(f"checkpoints must be ascending: {cps}")
    if cps[0] < 0:
        raise DomainError(f"checkpoints must be non-negative: {cps}")
    if cps[-1] + max(two_rs) > table.limit:
        raise CapacityError(
            f"checkpoint {cps[-1]} + {max(two_rs)} exceeds prime table limit {table.limit}"
        )

    cp_arr = np.asarray(cps, dtype=np.int64)
    counts = {two_r: np.zeros(len(cps), dtype=np.int64) for two_r in two_rs}
    r_max = max(two_rs) // 2
    i_end = (cps[-1] + 1) // 2
    for b0 in range(0, i_end, COUNT_BLOCK):
        b1 = min(b0 + COUNT_BLOCK, i_end)
        width = b1 - b0
        flags = table.odd_flags(b0, b1 + r_max)
        head = flags[:width]
        for two_r in two_rs:
            r = two_r // 2
            idx = np.flatnonzero(head & flags[r : r + width])
            if idx.size:
                p = 2 * (b0 + idx.astype(np.int64)) + 1
                counts[two_r] += np.searchsorted(p, cp_arr, side="right")

    return [
        PairCountRecord(two_r=two_r, x=x, count=int(c))
        for two_r in two_rs
        for x, c in zip(cps, counts[two_r])
    ]


def count_prime_pairs(
    table: PrimeTable, two_r: int, checkpoints: Sequence[int]
) -> List[PairCountRecord]:
    """pi_{2r}(x) = #{p <= x : p and p + 2r prime} at each checkpoint."""
    return count_prime_pair_grid(table, [two_r], checkpoints)


def _pair_products(table: PrimeTable, two_r: int, x: int) -> Tuple[np.ndarray, np.ndarray]:
    pp = table.prime_powers(x + two_r)
    low = pp.upto(x)
    return low.lam, pp.lookup(low.n + two_r)


def psi_2r(table: PrimeTable, two_r: int, x: int) -> float:
    """psi_{2r}(x) = sum_{n <= x} Lambda(n) Lambda(n + 2r)."""
    check_difference(two_r, allow_zero=True)
    if x + two_r > table.limit:
        raise CapacityError(f"x + two_r = {x + two_r} exceeds prime table limit {table.limit}")
    if x < 1:
        return 0.0
    lam, partner = _pair_products(table, two_r, x)
    return math.fsum((lam * partner).tolist())


def theta_2r(table: PrimeTable, two_r: int, x: int) -> float:
    """theta_{2r}(x) = sum over primes p <= x with p + 2r prime of log^2 p."""
    check_difference(two_r, allow_zero=True)
    if x + two_r > table.limit:
        raise CapacityError(f"x + two_r = {x + two_r} exceeds prime table limit {table.limit}")
    if x < 2:
        return 0.0
    primes = table.primes_up_to(x)
    hit = primes[table.is_prime_array(primes + two_r)]
    logs = np.log(hit.astype(np.float64))
    return math.fsum((logs * logs).tolist())


def chebyshev_psi(table: PrimeTable, x: int) -> float:
    """psi(x) = sum_{n <= x} Lambda(n), streamed segment by segment."""
    if x > table.limit:
        raise CapacityError(f"{x} exceeds prime table limit {table.limit}")
    acc = CompensatedSum()
    for lo in range(1, x + 1, COUNT_BLOCK):
        acc.add_block(table.mangoldt_segment(lo, min(lo + COUNT_BLOCK - 1, x)))
    return acc.real
