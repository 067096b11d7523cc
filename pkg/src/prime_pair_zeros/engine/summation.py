"""Compensated accumulation shared by all truncated sums.

Each block of terms is summed exactly rounded with math.fsum (real and imaginary
parts separately); block sums are then combined by an error-free two-sum
accumulator in the order the blocks are added. Results therefore depend on the
block order only, never on how blocks were scheduled across workers.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, List, Tuple, TypeVar, Union

import numpy as np

Number = Union[float, complex]
T = TypeVar("T")


def two_sum(u: float, v: float) -> Tuple[float, float]:
    """Error-free transformation: u + v == s + t exactly, s = fl(u + v)."""
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    t = -(up + vpp)
    return s, t


class Accumulator:
    """Running real sum held as an unevaluated pair (s, t)."""

    __slots__ = ("_s", "_t")

    def __init__(self, y: float = 0.0):
        self._s = float(y)
        self._t = 0.0

    def add(self, y: float) -> None:
        y, u = two_sum(float(y), self._t)
        self._s, self._t = two_sum(y, self._s)
        if self._s == 0.0:
            self._s = u
        else:
            self._t += u

    @property
    def value(self) -> float:
        return self._s + self._t


class CompensatedSum:
    """Compensated complex sum fed block by block."""

    def __init__(self):
        self._re = Accumulator()
        self._im = Accumulator()
        self.terms = 0

    def add(self, value: Number) -> None:
        value = complex(value)
        self._re.add(value.real)
        self._im.add(value.imag)
        self.terms += 1

    def add_block(self, values: Union[np.ndarray, Iterable[Number]]) -> None:
        """Add a block of terms, each part summed exactly rounded."""
        arr = np.asarray(values)
        if arr.size == 0:
            return
        if np.iscomplexobj(arr):
            self._re.add(math.fsum(arr.real.ravel().tolist()))
            self._im.add(math.fsum(arr.imag.ravel().tolist()))
        else:
            self._re.add(math.fsum(arr.ravel().tolist()))
        self.terms += int(arr.size)

    def merge(self, other: "CompensatedSum") -> None:
        """Fold a partial sum computed elsewhere into this one."""
        self._re.add(other._re._s)
        self._re.add(other._re._t)
        self._im.add(other._im._s)
        self._im.add(other._im._t)
        self.terms += other.terms

    @property
    def value(self) -> complex:
        return complex(self._re.value, self._im.value)

    @property
    def real(self) -> float:
        return self._re.value


def fsum_complex(values: Union[np.ndarray, Iterable[Number]]) -> complex:
    """Exactly rounded sum of complex values (parts summed separately)."""
    acc = CompensatedSum()
    acc.add_block(values)
    return acc.value


def row_blocks(n: int, size: int) -> List[Tuple[int, int]]:
    """Fixed partition of range(n) into [start, stop) blocks."""
    return [(start, min(start + size, n)) for start in range(0, n, size)]


def map_ordered(
    fn: Callable[[Tuple[int, int]], T], blocks: List[Tuple[int, int]], threads: int = 1
) -> Iterator[T]:
    """Apply fn to every block; results come back in block order for any thread count."""
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            yield from pool.map(fn, blocks)
    else:
        for block in blocks:
            yield fn(block)
