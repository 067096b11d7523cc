"""Truncated Dirichlet series over prime pairs and the probes built on them.

D_2r(s) = sum_n Lambda(n) Lambda(n + 2r) n^(-s) (n + 2r)^(-s) is truncated at n <= N.
The kernel expansion T^lambda(s) is the double sum over k, l with |k - l| < lambda
truncated at min(k, l) <= N, the same rule D_0 + V^lambda + H^lambda uses, so the
finite-N identity between them holds term by term.
"""

import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..domain.entities import (
    IdentityResidual,
    ProbeReport,
    ProbeRow,
    SeriesResult,
    TruncationPlan,
)
from ..domain.errors import CapacityError, DomainError
from ..domain.policies import ProbePolicy, TruncationPolicy
from ..interfaces.logger_port import LoggerPort
from .hlconstants import c_2r, remainder_R, twin_prime_constant
from .kernels import SievingKernel
from .sieve import PrimeTable, check_difference, von_mangoldt
from .summation import CompensatedSum, map_ordered, row_blocks

DIRICHLET_BLOCK = 2**16
POLE_PROBE_RANGE = (0.01, 0.25)
RESIDUE_PROBE_RANGE = (0.02, 0.25)
LOG_TWO = math.log(2.0)


def _check_s(s: complex) -> complex:
    s = complex(s)
    if not s.real > 0.5:
        raise DomainError(f"Dirichlet series diverge for Re s <= 1/2, got s={s}")
    return s


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not lam > 0 or not math.isfinite(lam):
        raise DomainError(f"lambda must be positive and finite, got {lam}")
    return lam


def _max_offset(lam: float) -> int:
    """Largest integer d with d < lambda."""
    return int(math.ceil(lam)) - 1


def _check_capacity(n_terms: int, reach: int, table: PrimeTable) -> None:
    if n_terms + reach > table.limit:
        raise CapacityError(
            f"N + {reach} = {n_terms + reach} exceeds prime table limit {table.limit}"
        )


def _log_pair_power(s: complex, k: np.ndarray, l: np.ndarray) -> np.ndarray:
    """(k l)^(-s) evaluated as exp(-s (log k + log l))."""
    logs = np.log(k.astype(np.float64)) + np.log(l.astype(np.float64))
    return np.exp(-s * logs)


def _ordered_sum(blocks: Iterable[np.ndarray]) -> CompensatedSum:
    acc = CompensatedSum()
    for block in blocks:
        acc.add_block(block)
    return acc


def d_2r(
    s: complex, two_r: int, plan: TruncationPlan, table: PrimeTable, threads: int = 1
) -> SeriesResult:
    """Truncated D_2r(s) over n <= plan.n_terms.

    The tail bound is TruncationPolicy.chebyshev_tail with shift 2r, which
    dominates Lambda(n + 2r) by log(n + 2r) and |n + 2r|^(-s) by n^(-sigma).
    """
    s = _check_s(s)
    check_difference(two_r, allow_zero=True)
    n_terms = plan.n_terms
    _check_capacity(n_terms, two_r, table)

    powers = table.prime_powers(n_terms + two_r)
    low = powers.upto(n_terms)
    partner = low.lam if two_r == 0 else powers.lookup(low.n + two_r)
    keep = partner > 0
    n = low.n[keep]
    weights = low.lam[keep] * partner[keep]

    def block(bounds: Tuple[int, int]) -> np.ndarray:
        a, b = bounds
        return weights[a:b] * _log_pair_power(s, n[a:b], n[a:b] + two_r)

    acc = _ordered_sum(map_ordered(block, row_blocks(n.size, DIRICHLET_BLOCK), threads))
    return SeriesResult.of(
        acc.value,
        terms_used=int(n.size),
        n_terms=n_terms,
        tail_estimate=TruncationPolicy.chebyshev_tail(n_terms, s.real, two_r),
        metadata={"two_r": two_r},
    )


def t_lambda_expansion(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    plan: TruncationPlan,
    table: PrimeTable,
    threads: int = 1,
) -> SeriesResult:
    """T^lambda(s) = sum_{k,l} Lambda(k) Lambda(l) (k l)^(-s) E((k - l)/lambda).

    Enumerated diagonal by diagonal: one block per offset d = l - k with |d| < lambda,
    restricted to min(k, l) <= N.
    """
    s = _check_s(s)
    lam = _check_lambda(lam)
    n_terms = plan.n_terms
    reach = _max_offset(lam)
    _check_capacity(n_terms, reach, table)

    dense = table.mangoldt_segment(1, n_terms + reach)
    support = np.flatnonzero(dense) + 1
    offsets = [d for d in range(-reach, reach + 1) if kernel.E(abs(d) / lam) != 0.0]

    def diagonal(bounds: Tuple[int, int]) -> np.ndarray:
        d = offsets[bounds[0]]
        k = support
        l = k + d
        valid = (l >= 1) & (np.minimum(k, l) <= n_terms)
        k, l = k[valid], l[valid]
        partner = dense[l - 1]
        hit = partner > 0
        k, l = k[hit], l[hit]
        weight = kernel.E(abs(d) / lam)
        return weight * dense[k - 1] * partner[hit] * _log_pair_power(s, k, l)

    blocks = row_blocks(len(offsets), 1)
    acc = _ordered_sum(map_ordered(diagonal, blocks, threads))
    tail = TruncationPolicy.chebyshev_tail(
        n_terms, s.real, reach, multiplicity=2 * reach + 1
    )
    return SeriesResult.of(
        acc.value,
        terms_used=acc.terms,
        n_terms=n_terms,
        tail_estimate=tail,
        metadata={"offsets": len(offsets), "lambda": lam},
    )


def _odd_tail(sigma: float, n_terms: int, reach: int, count: int) -> float:
    """Bound on the omitted pairs (2^a, 2^a + d) with 2^a > N, odd |d| <= reach."""
    if count == 0:
        return 0.0
    a0 = n_terms.bit_length()
    total = 0.0
    # consecutive terms shrink by about 4^(-sigma); 64 of them reach double precision
    for a in range(a0, a0 + 64):
        k = 2.0**a
        lower = max(k - reach, 1.0)
        log_term = math.log(math.log(k + reach)) - sigma * (math.log(k) + math.log(lower))
        total += math.exp(log_term)
    return 2.0 * count * LOG_TWO * total


def odd_difference_terms(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    plan: TruncationPlan,
    table: PrimeTable,
) -> SeriesResult:
    """H^lambda(s): the pairs of T^lambda with odd k - l.

    An odd difference between two prime powers forces one of them to be even,
    hence a power of two. Pairs are enumerated from k = 2^a directly and each is
    counted in both orientations.
    """
    s = _check_s(s)
    lam = _check_lambda(lam)
    n_terms = plan.n_terms
    reach = _max_offset(lam)
    _check_capacity(n_terms, reach, table)

    odd = [d for d in range(1, reach + 1, 2) if kernel.E(d / lam) != 0.0]
    ks: List[int] = []
    ms: List[int] = []
    weights: List[float] = []
    k = 2
    while k <= n_terms + reach:
        for magnitude in odd:
            weight = kernel.E(magnitude / lam)
            for m in (k - magnitude, k + magnitude):
                if m < 2 or min(k, m) > n_terms:
                    continue
                lam_m = von_mangoldt(m, table)
                if lam_m == 0.0:
                    continue
                ks.append(k)
                ms.append(m)
                weights.append(2.0 * weight * LOG_TWO * lam_m)
        k *= 2

    acc = CompensatedSum()
    if ks:
        k_arr = np.asarray(ks, dtype=np.int64)
        m_arr = np.asarray(ms, dtype=np.int64)
        acc.add_block(np.asarray(weights) * _log_pair_power(s, k_arr, m_arr))
    return SeriesResult.of(
        acc.value,
        terms_used=len(ks),
        n_terms=n_terms,
        tail_estimate=_odd_tail(s.real, n_terms, reach, 2 * len(odd)),
        metadata={"odd_offsets": odd},
    )


def v_lambda(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    plan: TruncationPlan,
    table: PrimeTable,
    threads: int = 1,
) -> SeriesResult:
    """V^lambda(s) = 2 sum_{0 < 2r <= lambda} E(2r / lambda) D_2r(s); zero weights are skipped."""
    s = _check_s(s)
    lam = _check_lambda(lam)
    acc = CompensatedSum()
    tail = 0.0
    terms = 0
    components = {}
    for r in range(1, int(math.floor(lam / 2.0)) + 1):
        weight = kernel.E(2.0 * r / lam)
        if weight == 0.0:
            continue
        piece = d_2r(s, 2 * r, plan, table, threads)
        acc.add(2.0 * weight * piece.value)
        tail += 2.0 * weight * piece.tail_estimate
        terms += piece.terms_used
        components[str(2 * r)] = [piece.value_re, piece.value_im]
    return SeriesResult.of(
        acc.value,
        terms_used=terms,
        n_terms=plan.n_terms,
        tail_estimate=tail,
        metadata={"components": components},
    )


def identity_residual(
    s: complex,
    lam: float,
    kernel: SievingKernel,
    plan: TruncationPlan,
    table: PrimeTable,
    threads: int = 1,
) -> IdentityResidual:
    """Compare T^lambda with D_0 + V^lambda + H^lambda at the same truncation."""
    expansion = t_lambda_expansion(s, lam, kernel, plan, table, threads).value
    parts = CompensatedSum()
    parts.add(d_2r(s, 0, plan, table, threads).value)
    parts.add(v_lambda(s, lam, kernel, plan, table, threads).value)
    parts.add(odd_difference_terms(s, lam, kernel, plan, table).value)
    decomposition = parts.value
    residual = abs(expansion - decomposition)
    scale = abs(expansion)
    s = complex(s)
    return IdentityResidual(
        s_re=s.real,
        s_im=s.imag,
        lam=float(lam),
        n_terms=plan.n_terms,
        expansion=(expansion.real, expansion.imag),
        decomposition=(decomposition.real, decomposition.imag),
        residual=residual,
        relative=residual / scale if scale > 0 else residual,
    )


def _probe_grid(delta_grid: Sequence[float]) -> List[float]:
    grid = sorted({float(d) for d in delta_grid}, reverse=True)
    if not grid:
        raise DomainError("delta grid is empty")
    if any(not d > 0 for d in grid):
        raise DomainError(f"delta must be positive, got {grid}")
    return grid


def _outside(grid: Sequence[float], bounds: Tuple[float, float]) -> List[float]:
    lo, hi = bounds
    return [d for d in grid if not lo < d <= hi]


def d0_pole_probe(
    delta_grid: Sequence[float],
    table: PrimeTable,
    strict: bool = False,
    threads: int = 1,
    logger: Optional[LoggerPort] = None,
) -> ProbeReport:
    """delta^2 D_0(1/2 + delta) against the double-pole coefficient 1/4.

    N is chosen per delta so the tail bound falls below 0.1 delta^2, capped at the
    table limit unless strict. The corrected column adds the prime number theorem
    model of the omitted tail, which is what approaches 1/4 as delta shrinks.
    """
    grid = _probe_grid(delta_grid)
    rows = []
    for delta in grid:
        sigma = 0.5 + delta
        plan, capped = TruncationPolicy.adaptive(
            sigma, 0.1 * delta * delta, table.limit, strict=strict
        )
        if capped and logger is not None:
            logger.warning(
                "Truncation capped", delta=delta, n_terms=plan.n_terms, tail_bound=plan.tail_bound
            )
        result = d_2r(complex(sigma), 0, plan, table, threads)
        scale = delta * delta
        modelled = result.value_re + TruncationPolicy.pnt_tail(plan.n_terms, sigma)
        rows.append(
            ProbeRow(
                delta=delta,
                n_terms=plan.n_terms,
                value=result.value_re,
                scaled=scale * result.value_re,
                tail_estimate=scale * result.tail_estimate,
                corrected=scale * modelled,
                capped=capped,
            )
        )
    invalid = _outside(grid, POLE_PROBE_RANGE)
    notes = ["model: D_0(s) = (1/4)/(s - 1/2)^2 + H_0(s)"]
    if invalid:
        if logger is not None:
            logger.warning("Delta outside pole regime", deltas=invalid, valid=POLE_PROBE_RANGE)
        notes.append(f"pole model invalid outside {POLE_PROBE_RANGE} for delta={invalid}")
    if any(row.capped for row in rows):
        notes.append(f"truncation capped at table limit {table.limit}")
    return ProbeReport(
        name="d0_pole",
        target=0.25,
        rows=rows,
        trend_toward_target=ProbePolicy.trend_toward(rows, 0.25, use_corrected=True),
        label="INVALID" if invalid else "REPORT",
        notes=notes,
    )


def _residue_rows(
    grid: Sequence[float], evaluate: Callable[[complex], SeriesResult], n_terms: int
) -> List[ProbeRow]:
    rows = []
    for delta in grid:
        result = evaluate(complex(0.5 + delta))
        rows.append(
            ProbeRow(
                delta=delta,
                n_terms=n_terms,
                value=result.value_re,
                scaled=delta * result.value_re,
                tail_estimate=delta * result.tail_estimate,
            )
        )
    return rows


def c2r_residue_probe(
    two_r: int,
    delta_grid: Sequence[float],
    table: PrimeTable,
    n_terms: Optional[int] = None,
    c2: Optional[float] = None,
    threads: int = 1,
) -> ProbeReport:
    """delta * D_2r(1/2 + delta) printed next to C_2r; convergence is reported, never asserted."""
    check_difference(two_r)
    grid = _probe_grid(delta_grid)
    n_terms = n_terms or table.limit - two_r
    c2 = twin_prime_constant() if c2 is None else c2
    target = c_2r(two_r // 2, c2)
    rows = _residue_rows(
        grid,
        lambda s: d_2r(s, two_r, TruncationPolicy.plan(n_terms, s.real, two_r), table, threads),
        n_terms,
    )
    invalid = _outside(grid, RESIDUE_PROBE_RANGE)
    notes = [
        f"target C_{two_r} = {target:.12f}",
        "a limit equal to the target is equivalent to the prime-pair conjecture for this 2r",
    ]
    if invalid:
        notes.append(f"residue probe defined on {RESIDUE_PROBE_RANGE}; outside: {invalid}")
    return ProbeReport(
        name=f"c{two_r}_residue",
        target=target,
        rows=rows,
        trend_toward_target=ProbePolicy.trend_toward(rows, target),
        label="INVALID" if invalid else "REPORT",
        notes=notes,
    )


def v_lambda_residue_probe(
    lam: float,
    kernel: SievingKernel,
    delta_grid: Sequence[float],
    table: PrimeTable,
    n_terms: Optional[int] = None,
    c2: Optional[float] = None,
    threads: int = 1,
) -> ProbeReport:
    """delta * V^lambda(1/2 + delta) against A^E (lambda - 1) + R(lambda)."""
    lam = _check_lambda(lam)
    grid = _probe_grid(delta_grid)
    reach = 2 * int(math.floor(lam / 2.0))
    n_terms = n_terms or table.limit - reach
    c2 = twin_prime_constant() if c2 is None else c2
    target = kernel.A_E * (lam - 1.0) + remainder_R(lam, kernel, c2)
    rows = _residue_rows(
        grid,
        lambda s: v_lambda(
            s, lam, kernel, TruncationPolicy.plan(n_terms, s.real, reach), table, threads
        ),
        n_terms,
    )
    invalid = _outside(grid, RESIDUE_PROBE_RANGE)
    notes = [f"target A^E (lambda - 1) + R(lambda) = {target:.12f}"]
    if invalid:
        notes.append(f"residue probe defined on {RESIDUE_PROBE_RANGE}; outside: {invalid}")
    return ProbeReport(
        name="v_lambda_residue",
        target=target,
        rows=rows,
        trend_toward_target=ProbePolicy.trend_toward(rows, target),
        label="INVALID" if invalid else "REPORT",
        notes=notes,
    )
