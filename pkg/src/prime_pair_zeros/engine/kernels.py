"""Sieving kernels E, their Fourier transforms and Mellin transforms.

A kernel is an even function E with E(0) = 1 and support [-1, 1], given on
[0, 1] by polynomial branches. Everything else is derived exactly from the
branches:

- the Fourier transform E_hat^lambda(t) = 2 lambda int_0^1 E(u) cos(lambda u t) du,
  by repeated integration by parts (sum over the jumps of E^(j)) for
  lambda |t| >= 2 and by its Taylor series below;
- the moment int_0^1 E(v) v^(z-1) dv, both from branch antiderivatives and from
  the jumps of E^(j) at the breakpoints, continued to Re z > -m where m is the
  order of the first discontinuous derivative;
- M^lambda(z) = lambda^z (2/pi) Gamma(1-z) sin(pi z / 2) moment(z), evaluated in
  log space, with removable singularities taken as a circle mean.
"""

import cmath
import math
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from ..domain.entities import BoundCheckReport, BoundSample, MellinValue
from ..domain.errors import DomainError, KernelError, NearPoleError
from .special import log_gamma_anywhere, log_sin_array

RealLike = Union[float, np.ndarray]

MELLIN_POLE_TOLERANCE = 1e-8
REMOVABLE_RADIUS = 1e-3
CIRCLE_POINTS = 8
RESIDUE_RADIUS = 1e-4
LOG_TWO_OVER_PI = math.log(2.0 / math.pi)

_TAYLOR_SWITCH = 2.0
_TAYLOR_TERMS = 24
_GAUSS_NODES, _GAUSS_WEIGHTS = roots_legendre(16)


class KernelBranch(NamedTuple):
    """E(v) = sum_k coefficients[k] v^k on [lower, upper]."""

    lower: Fraction
    upper: Fraction
    coefficients: Tuple[Fraction, ...]


def _derivative_at(coefficients: Sequence[Fraction], j: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for k in range(j, len(coefficients)):
        total += coefficients[k] * math.perm(k, j) * x ** (k - j)
    return total


class SievingKernel:
    """Admissible sieving kernel built from polynomial branches on [0, 1]."""

    def __init__(self, name: str, branches: Sequence[KernelBranch]):
        self.name = name
        self.branches: Tuple[KernelBranch, ...] = tuple(branches)
        self.degree = max(len(b.coefficients) for b in self.branches) - 1

        # one-sided jumps E^(j)(c+) - E^(j)(c-) at breakpoints c in (0, 1]
        self.jumps: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
        for j in range(self.degree + 1):
            points = []
            for left, right in zip(self.branches, self.branches[1:]):
                jump = _derivative_at(right.coefficients, j, right.lower) - _derivative_at(
                    left.coefficients, j, left.upper
                )
                if jump:
                    points.append((left.upper, jump))
            last = self.branches[-1]
            end_jump = -_derivative_at(last.coefficients, j, last.upper)
            if end_jump:
                points.append((last.upper, end_jump))
            if points:
                self.jumps[j] = points

        # jumps of the even extension at 0 (odd derivatives only)
        first = self.branches[0].coefficients
        self.origin_jumps: Dict[int, Fraction] = {}
        for j in range(1, self.degree + 1, 2):
            value = 2 * _derivative_at(first, j, Fraction(0))
            if value:
                self.origin_jumps[j] = value

        orders = list(self.jumps) + list(self.origin_jumps)
        self.smoothness = min(orders) if orders else 0
        self.a_e: Fraction = self.moment_exact(0)

        self._float_branches = [
            (float(b.lower), float(b.upper), np.array([float(c) for c in b.coefficients]))
            for b in self.branches
        ]
        self._even_moments = np.array(
            [float(self.moment_exact(2 * k)) for k in range(_TAYLOR_TERMS)]
        )
        self._mellin_jumps = [
            (j, float(c), float(jump)) for j, points in self.jumps.items() for c, jump in points
        ]
        terms = []
        for j, points in self.jumps.items():
            for c, jump in points:
                terms.append((j, float(c), float(jump)))
                terms.append((j, -float(c), float(jump) * (-1) ** (j + 1)))
        for j, jump in self.origin_jumps.items():
            terms.append((j, 0.0, float(jump)))
        self._fourier_jumps = terms

    def __repr__(self) -> str:
        return f"SievingKernel({self.name!r}, smoothness={self.smoothness})"

    @property
    def A_E(self) -> float:
        """A^E = int_0^1 E(v) dv."""
        return float(self.a_e)

    @property
    def continuation_abscissa(self) -> float:
        """M(z) is provided for Re z > -smoothness."""
        return -float(self.smoothness)

    @property
    def decay_exponent_offset(self) -> float:
        """|M(x+iy)| << (|y|+1)^(-x - offset)."""
        return self.smoothness + 0.5

    @property
    def breakpoints(self) -> List[float]:
        return [float(b.upper) for b in self.branches]

    def moment_exact(self, n: int) -> Fraction:
        """int_0^1 E(v) v^n dv as an exact fraction."""
        total = Fraction(0)
        for branch in self.branches:
            for k, c in enumerate(branch.coefficients):
                p = k + n + 1
                total += c * (branch.upper**p - branch.lower**p) / p
        return total

    def taylor_coefficient(self, k: int) -> Fraction:
        """k-th Taylor coefficient of E at 0+."""
        first = self.branches[0].coefficients
        return first[k] if k < len(first) else Fraction(0)

    def E(self, nu: RealLike) -> RealLike:
        """E(nu), even, zero outside [-1, 1]."""
        x = np.abs(np.asarray(nu, dtype=np.float64))
        out = np.zeros(x.shape, dtype=np.float64)
        last = len(self._float_branches) - 1
        for i, (lower, upper, coefficients) in enumerate(self._float_branches):
            mask = (x >= lower) & ((x < upper) if i < last else (x <= upper))
            out[mask] = np.polynomial.polynomial.polyval(x[mask], coefficients)
        if np.ndim(nu) == 0:
            return float(out)
        return out

    def fourier_unit(self, omega: RealLike) -> RealLike:
        """F(omega) = int_{-1}^{1} E(|u|) e^{i omega u} du (real)."""
        w = np.abs(np.asarray(omega, dtype=np.float64))
        out = np.empty(w.shape, dtype=np.float64)
        small = w < _TAYLOR_SWITCH
        if np.any(small):
            ws = w[small]
            k = np.arange(_TAYLOR_TERMS)
            signs = np.where(k % 2 == 0, 1.0, -1.0)
            factorials = np.array([float(math.factorial(2 * i)) for i in k])
            powers = ws[..., None] ** (2 * k)
            out[small] = 2.0 * np.sum(signs * powers * self._even_moments / factorials, axis=-1)
        large = ~small
        if np.any(large):
            wl = w[large]
            total = np.zeros(wl.shape, dtype=np.complex128)
            for j, c, jump in self._fourier_jumps:
                total += (-1) ** (j + 1) * jump * np.exp(1j * wl * c) / (1j * wl) ** (j + 1)
            out[large] = total.real
        if np.ndim(omega) == 0:
            return float(out)
        return out

    def moment_jump_array(self, z: np.ndarray) -> np.ndarray:
        """Moment from the jumps of E^(j): sum (-1)^(j+1) J_j(c) c^(z+j) / (z)_(j+1)."""
        z = np.asarray(z, dtype=np.complex128)
        total = np.zeros(z.shape, dtype=np.complex128)
        pochhammer = {}
        for j, c, jump in self._mellin_jumps:
            if j not in pochhammer:
                p = np.ones(z.shape, dtype=np.complex128)
                for i in range(j + 1):
                    p = p * (z + i)
                pochhammer[j] = p
            total += (-1) ** (j + 1) * jump * np.exp((z + j) * math.log(c)) / pochhammer[j]
        return total

    def moment_branch_array(self, z: np.ndarray) -> np.ndarray:
        """Moment from branch antiderivatives, the a = 0 endpoint dropped."""
        z = np.asarray(z, dtype=np.complex128)
        total = np.zeros(z.shape, dtype=np.complex128)
        for lower, upper, coefficients in self._float_branches:
            for k, c in enumerate(coefficients):
                if c == 0.0:
                    continue
                piece = np.exp((z + k) * math.log(upper))
                if lower > 0.0:
                    piece = piece - np.exp((z + k) * math.log(lower))
                total += c * piece / (z + k)
        return total


def polynomial_kernel(
    name: str,
    branches: Sequence[Tuple[Union[Fraction, float, str], Union[Fraction, float, str], Sequence]],
    grid_points: int = 2001,
) -> SievingKernel:
    """Build and validate a kernel from (lower, upper, coefficients) triples on [0, 1].

    Coefficients are in ascending powers of v. Raises KernelError if the branches do
    not tile [0, 1], if E(0) != 1, if E is discontinuous (including at 1), or if E
    increases anywhere on a grid.
    """
    if not branches:
        raise KernelError(f"kernel {name!r} has no branches")
    parsed = []
    for lower, upper, coefficients in branches:
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise KernelError(f"kernel {name!r} has an empty branch")
        parsed.append(KernelBranch(Fraction(lower), Fraction(upper), coeffs))
    if parsed[0].lower != 0 or parsed[-1].upper != 1:
        raise KernelError(f"kernel {name!r} branches must cover [0, 1]")
    for branch in parsed:
        if branch.lower >= branch.upper:
            raise KernelError(
                f"kernel {name!r} has an empty interval {branch.lower}..{branch.upper}"
            )
    for left, right in zip(parsed, parsed[1:]):
        if left.upper != right.lower:
            raise KernelError(f"kernel {name!r} branches are not contiguous at {left.upper}")
    if parsed[0].coefficients[0] != 1:
        raise KernelError(f"kernel {name!r} must satisfy E(0) = 1")

    kernel = SievingKernel(name, parsed)
    if 0 in kernel.jumps:
        c = kernel.jumps[0][0][0]
        raise KernelError(f"kernel {name!r} is discontinuous at {c}")
    if kernel.smoothness < 1:
        raise KernelError(f"kernel {name!r} has no derivative jumps")
    grid = np.linspace(0.0, 1.0, grid_points)
    values = kernel.E(grid)
    if np.any(np.diff(values) > 1e-12):
        raise KernelError(f"kernel {name!r} is not non-increasing on [0, 1]")
    return kernel


FEJER = polynomial_kernel("fejer", [(0, 1, (1, -1))])
JACKSON = polynomial_kernel(
    "jackson",
    [
        (0, Fraction(1, 2), (1, 0, -6, 6)),
        (Fraction(1, 2), 1, (2, -6, 6, -2)),
    ],
)

STOCK_KERNELS = {"fejer": FEJER, "jackson": JACKSON}


def get_kernel(name: str) -> SievingKernel:
    """Stock kernel by name (fejer or jackson)."""
    try:
        return STOCK_KERNELS[name.lower()]
    except KeyError:
        raise KernelError(f"Unknown kernel {name!r}; expected one of {sorted(STOCK_KERNELS)}")


def _check_lambda(lam: float) -> None:
    if not lam > 0 or not math.isfinite(lam):
        raise DomainError(f"lambda must be positive, got {lam}")


def eval_E(kernel: SievingKernel, nu: RealLike) -> RealLike:
    """E(nu)."""
    return kernel.E(nu)


def eval_E_lambda(kernel: SievingKernel, lam: float, nu: RealLike) -> RealLike:
    """E^lambda(nu) = E(nu / lambda)."""
    _check_lambda(lam)
    return kernel.E(np.asarray(nu, dtype=np.float64) / lam)


def eval_E_hat(kernel: SievingKernel, lam: float, t: RealLike) -> RealLike:
    """E_hat^lambda(t) = lambda F(lambda t); its value at t = 0 is 2 lambda A^E."""
    _check_lambda(lam)
    if np.ndim(t) == 0:
        return lam * kernel.fourier_unit(lam * float(t))
    return lam * kernel.fourier_unit(lam * np.asarray(t, dtype=np.float64))


def _circle(center: complex, radius: float) -> np.ndarray:
    angles = 2.0 * math.pi * np.arange(CIRCLE_POINTS) / CIRCLE_POINTS
    return center + radius * np.exp(1j * angles)


def _removable_point(kernel: SievingKernel, z: complex) -> Optional[int]:
    """Nearest removable singularity of the closed form within half the circle radius."""
    n = round(z.real)
    if abs(z - n) >= 0.5 * REMOVABLE_RADIUS:
        return None
    if -kernel.smoothness < n <= 0 or (n >= 2 and n % 2 == 0):
        return n
    return None


def _check_mellin_argument(kernel: SievingKernel, z: complex) -> None:
    if z.real <= kernel.continuation_abscissa:
        raise DomainError(
            f"M(z) for the {kernel.name} kernel is continued to Re z > "
            f"{kernel.continuation_abscissa:g}; got {z}"
        )
    n = round(z.real)
    if n >= 1 and n % 2 == 1 and abs(z - n) < MELLIN_POLE_TOLERANCE:
        raise NearPoleError(f"M has a pole at z={n}, argument {z}", pole=complex(n))


def _log_mellin_unit_direct(kernel: SievingKernel, z: np.ndarray) -> np.ndarray:
    """log M(z) from the closed form, valid away from removable points."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return (
            LOG_TWO_OVER_PI
            + log_gamma_anywhere(1.0 - z)
            + log_sin_array(0.5 * math.pi * z)
            + np.log(kernel.moment_jump_array(z))
        )


def _mellin_unit(kernel: SievingKernel, z: complex) -> Tuple[complex, bool]:
    """M(z) (lambda-free) and whether the circle mean was used."""
    if _removable_point(kernel, z) is not None:
        values = np.exp(_log_mellin_unit_direct(kernel, _circle(z, REMOVABLE_RADIUS)))
        return complex(np.mean(values)), True
    return complex(np.exp(_log_mellin_unit_direct(kernel, np.array([z]))[0])), False


def mellin_M(kernel: SievingKernel, lam: float, z: complex) -> MellinValue:
    """M^lambda(z) = lambda^z M(z)."""
    _check_lambda(lam)
    z = complex(z)
    _check_mellin_argument(kernel, z)
    unit, near = _mellin_unit(kernel, z)
    value = cmath.exp(z * math.log(lam)) * unit
    if z.imag == 0.0:
        value = complex(value.real, 0.0)
    return MellinValue(
        z=(z.real, z.imag), value_re=value.real, value_im=value.imag, is_near_pole=near
    )


def log_mellin_array(kernel: SievingKernel, lam: float, z: np.ndarray) -> np.ndarray:
    """A logarithm of M^lambda(z) over an array (used by the zero sums)."""
    _check_lambda(lam)
    z = np.asarray(z, dtype=np.complex128)
    if z.size == 0:
        return np.zeros(z.shape, dtype=np.complex128)
    if np.any(z.real <= kernel.continuation_abscissa):
        bad = z[z.real <= kernel.continuation_abscissa].ravel()[0]
        _check_mellin_argument(kernel, complex(bad))
    nearest = np.round(z.real)
    distance = np.abs(z - nearest)
    odd_pole = (nearest >= 1) & (nearest % 2 == 1) & (distance < MELLIN_POLE_TOLERANCE)
    if np.any(odd_pole):
        _check_mellin_argument(kernel, complex(z[odd_pole].ravel()[0]))
    removable = (distance < 0.5 * REMOVABLE_RADIUS) & (
        ((nearest > -kernel.smoothness) & (nearest <= 0))
        | ((nearest >= 2) & (nearest % 2 == 0))
    )
    out = np.empty(z.shape, dtype=np.complex128)
    regular = ~removable
    out[regular] = _log_mellin_unit_direct(kernel, z[regular])
    for index in zip(*np.nonzero(removable)):
        unit, _ = _mellin_unit(kernel, complex(z[index]))
        out[index] = cmath.log(unit)
    return out + z * math.log(lam)


def moment(kernel: SievingKernel, z: complex) -> complex:
    """int_0^1 E(v) v^(z-1) dv from the branch antiderivatives (continued)."""
    z = complex(z)
    n = round(z.real)
    if n <= 0 and abs(z - n) < MELLIN_POLE_TOLERANCE and kernel.taylor_coefficient(-n) != 0:
        raise NearPoleError(f"moment has a pole at z={n}", pole=complex(n))
    if n <= 0 and -n <= kernel.degree and abs(z - n) < 0.5 * REMOVABLE_RADIUS:
        if kernel.taylor_coefficient(-n) != 0:
            # genuine pole: subtract its principal part before averaging
            residue = float(kernel.taylor_coefficient(-n))
            points = _circle(z, REMOVABLE_RADIUS)
            regular = kernel.moment_branch_array(points) - residue / (points - n)
            return complex(np.mean(regular)) + residue / (z - n)
        return complex(np.mean(kernel.moment_branch_array(_circle(z, REMOVABLE_RADIUS))))
    return complex(kernel.moment_branch_array(np.array([z]))[0])


def moment_derivative_form(kernel: SievingKernel, z: complex) -> complex:
    """The same moment integrated by parts down to the jumps of E^(m)."""
    z = complex(z)
    n = round(z.real)
    if n <= 0 and abs(z - n) < MELLIN_POLE_TOLERANCE and kernel.taylor_coefficient(-n) != 0:
        raise NearPoleError(f"moment has a pole at z={n}", pole=complex(n))
    if n <= 0 and -n <= kernel.degree and abs(z - n) < 0.5 * REMOVABLE_RADIUS:
        residue = float(kernel.taylor_coefficient(-n))
        points = _circle(z, REMOVABLE_RADIUS)
        regular = kernel.moment_jump_array(points) - residue / (points - n)
        return complex(np.mean(regular)) + residue / (z - n)
    return complex(kernel.moment_jump_array(np.array([z]))[0])


def residue_at_one(kernel: SievingKernel, lam: float) -> float:
    """Residue of M^lambda at z = 1: -(2 lambda / pi) A^E."""
    return -2.0 * lam / math.pi * kernel.A_E


def mellin_residue(
    kernel: SievingKernel, lam: float, pole: float = 1.0, radius: float = RESIDUE_RADIUS
) -> complex:
    """Residue of M^lambda at a pole from the circle mean of (z - pole) M^lambda(z)."""
    _check_lambda(lam)
    points = _circle(complex(pole), radius)
    values = np.exp(log_mellin_array(kernel, lam, points))
    return complex(np.mean((points - pole) * values))


def mellin_bound_check(
    kernel: SievingKernel,
    lam: float,
    x: float,
    y_samples: Sequence[float],
    growth_tolerance: float = 100.0,
) -> BoundCheckReport:
    """|M^lambda(x+iy)| (|y|+1)^(x + m + 1/2) over the samples.

    The exponent is x + 7/2 for the Jackson kernel and x + 3/2 for Fejer. The
    report is flagged unbounded when the largest ratio exceeds growth_tolerance
    times the median ratio.
    """
    _check_lambda(lam)
    if not (kernel.continuation_abscissa < x <= 3.0):
        raise DomainError(
            f"x must lie in ({kernel.continuation_abscissa:g}, 3] for the {kernel.name} kernel"
        )
    if not y_samples or any(abs(y) < 1.0 for y in y_samples):
        raise DomainError("y samples must be non-empty with |y| >= 1")
    exponent = x + kernel.decay_exponent_offset
    samples = []
    for y in sorted(y_samples, key=abs):
        value = mellin_M(kernel, lam, complex(x, y)).value
        modulus = abs(value)
        samples.append(
            BoundSample(y=y, modulus=modulus, ratio=modulus * (abs(y) + 1.0) ** exponent)
        )
    ratios = np.array([s.ratio for s in samples])
    bounded = bool(ratios.max() <= growth_tolerance * max(float(np.median(ratios)), 1e-300))
    return BoundCheckReport(
        kernel=kernel.name, lam=lam, x=x, exponent=exponent, samples=samples, bounded=bounded
    )


def _oscillatory_tail(a: complex, omega: float, start: float, terms: int = 10) -> complex:
    """int_start^inf t^(-a) e^(i omega t) dt, Re a > 1, by integration by parts."""
    if omega == 0.0:
        return cmath.exp((1.0 - a) * math.log(start)) / (a - 1.0)
    iwt = 1j * omega * start
    series = 0j
    term = 1.0 + 0j
    for k in range(terms):
        series += term
        term = term * (a + k) / iwt
    return -cmath.exp(iwt - a * math.log(start)) / (1j * omega) * series


def _panel_edges(
    lam: float, y: float, head: float, stop: float, extra_frequency: float
) -> np.ndarray:
    """Geometric panels on [head, 1] then uniform panels up to stop."""
    bandwidth = lam + abs(y) + extra_frequency + 1.0
    width = math.pi / (2.0 * bandwidth)
    pieces = []
    if head < 1.0:
        n_geo = int(math.ceil(math.log(1.0 / head) / width)) + 1
        pieces.append(np.geomspace(head, 1.0, n_geo + 1)[:-1])
    start = max(head, 1.0)
    n_uniform = int(math.ceil((stop - start) / width)) + 1
    pieces.append(np.linspace(start, stop, n_uniform + 1))
    return np.concatenate(pieces)


def _gauss_panels(edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * _GAUSS_NODES).ravel()
    weights = (half[:, None] * _GAUSS_WEIGHTS).ravel()
    return nodes, weights


def _tail_start(lam: float, frequencies: Sequence[float]) -> float:
    positive = [abs(f) for f in frequencies if abs(f) > 1e-12]
    lowest = min(positive) if positive else lam
    return max(2.0, 1000.0 / lowest, 50.0 / lam)


def mellin_quadrature(kernel: SievingKernel, lam: float, z: complex) -> complex:
    """(1/pi) int_0^inf E_hat^lambda(t) t^(-z) dt for 0 < Re z < 1, numerically.

    Taylor series on [0, t0], Gauss-Legendre panels up to T, and the integrated
    by parts jump expansion beyond T.
    """
    _check_lambda(lam)
    z = complex(z)
    if not (0.0 < z.real < 1.0):
        raise DomainError(f"The Mellin integral converges for 0 < Re z < 1, got {z}")
    frequencies = [lam * c for _, c, _ in kernel._fourier_jumps]
    stop = _tail_start(lam, frequencies)
    t0 = 0.5 / lam

    # [0, t0]: E_hat = 2 lam sum_k (-1)^k (lam t)^{2k} / (2k)! mu_{2k}
    head = 0j
    for k in range(_TAYLOR_TERMS):
        coefficient = (
            2.0 * lam * (-1) ** k * lam ** (2 * k) * kernel._even_moments[k] / math.factorial(2 * k)
        )
        head += coefficient * cmath.exp((2 * k + 1 - z) * math.log(t0)) / (2 * k + 1 - z)

    edges = _panel_edges(lam, z.imag, t0, stop, 0.0)
    nodes, weights = _gauss_panels(edges)
    body_values = eval_E_hat(kernel, lam, nodes) * np.exp(-z * np.log(nodes))
    body = complex(np.sum(weights * body_values))

    tail = 0j
    for j, c, jump in kernel._fourier_jumps:
        coefficient = lam * (-1) ** (j + 1) * jump / (1j * lam) ** (j + 1)
        tail += coefficient * _oscillatory_tail(z + j + 1, lam * c, stop)
    value = (head + body + tail) / math.pi
    if z.imag == 0.0:
        return complex(value.real, 0.0)
    return value


def mellin_inversion_check(kernel: SievingKernel, lam: float, nu: float) -> float:
    """(1/pi) int_0^inf E_hat^lambda(t) cos(nu t) dt, which should equal E^lambda(nu)."""
    _check_lambda(lam)
    nu = abs(float(nu))
    frequencies = [lam * c + sign * nu for _, c, _ in kernel._fourier_jumps for sign in (1, -1)]
    stop = _tail_start(lam, frequencies)
    edges = _panel_edges(lam, 0.0, 1.0, stop, nu)
    head_edges = np.linspace(0.0, 1.0, int(math.ceil(2.0 * (lam + nu + 1.0))) + 1)
    nodes, weights = _gauss_panels(np.concatenate([head_edges[:-1], edges]))
    body = float(np.sum(weights * eval_E_hat(kernel, lam, nodes) * np.cos(nu * nodes)))

    tail = 0j
    for j, c, jump in kernel._fourier_jumps:
        coefficient = lam * (-1) ** (j + 1) * jump / (1j * lam) ** (j + 1)
        tail += 0.5 * coefficient * (
            _oscillatory_tail(j + 1.0, lam * c + nu, stop)
            + _oscillatory_tail(j + 1.0, lam * c - nu, stop)
        )
    return (body + tail.real) / math.pi
