"""Tests for Gamma, log Gamma and zeta, checked against mpmath."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from prime_pair_zeros.domain.errors import (
    BranchCutError,
    DomainError,
    NearPoleError,
    ZeroProximityError,
)
from prime_pair_zeros.engine.special import (
    gamma,
    gamma_growth_ratio,
    log_cos,
    log_cosh_real,
    log_gamma,
    log_gamma_anywhere,
    log_gamma_array,
    log_sin,
    log_sin_array,
    zeta,
    zeta_log_deriv,
    zeta_prime,
)


def test_gamma_known_values():
    """Test Gamma(1/2) = sqrt(pi) and Gamma(5) = 24."""
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), abs=1e-10)
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-12)
    assert gamma(5.0).imag == 0.0


@pytest.mark.parametrize("z", [0.3 + 0.4j, 2.5 - 3j, -2.5 + 0.5j, 1 + 20j])
def test_gamma_matches_mpmath(z):
    """Test complex Gamma against mpmath."""
    expected = complex(mpmath.gamma(z))
    assert gamma(z) == pytest.approx(expected, rel=1e-10)


def test_gamma_pole():
    """Test Gamma at -2 reports the pole index."""
    with pytest.raises(NearPoleError) as exc_info:
        gamma(-2.0)
    assert exc_info.value.pole_index == 2


@pytest.mark.parametrize("y", [1.0, 10.0, 30.0])
def test_gamma_modulus_on_critical_line(y):
    """Test |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)."""
    ratio = abs(gamma(complex(0.5, y))) ** 2 * math.cosh(math.pi * y) / math.pi
    assert ratio == pytest.approx(1.0, abs=1e-10)


def test_log_gamma_factorial():
    """Test log Gamma(10) = log 9!."""
    result = log_gamma(10.0)
    assert result.log_modulus == pytest.approx(math.log(362880.0), rel=1e-13)
    assert result.phase == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("z", [3 + 4j, 0.5 + 30j, 0.25 - 100j, -3.5 + 2j])
def test_log_gamma_matches_mpmath(z):
    """Test the principal branch of log Gamma against mpmath.loggamma."""
    expected = complex(mpmath.loggamma(z))
    assert log_gamma(z).to_complex() == pytest.approx(expected, rel=1e-10, abs=1e-10)


def test_log_gamma_array_matches_mpmath():
    """Test the vectorized log Gamma agrees with mpmath element by element."""
    z = np.array([3 + 4j, 0.5 + 30j, 20 + 0.5j, -2.5 + 3j])
    expected = [complex(mpmath.loggamma(complex(w))) for w in z]
    assert log_gamma_array(z).tolist() == pytest.approx(expected, rel=1e-10, abs=1e-10)


def test_log_gamma_anywhere_left_half_plane():
    """Test exp(log Gamma) left of 1/2 matches Gamma through the reflection formula."""
    z = np.array([-2.5 + 0.5j, -0.3 - 4j, 0.2 + 0j])
    values = np.exp(log_gamma_anywhere(z))
    for w, value in zip(z, values):
        assert complex(value) == pytest.approx(complex(mpmath.gamma(complex(w))), rel=1e-10)


@pytest.mark.parametrize("z", [0.3 + 0.2j, 1.0 + 5.0j, 2.0 - 40.0j])
def test_log_sin_and_log_cos(z):
    """Test the log-space sine and cosine exponentiate back to sin and cos."""
    assert cmath.exp(log_sin(z)) == pytest.approx(cmath.sin(z), rel=1e-12)
    assert cmath.exp(log_cos(z)) == pytest.approx(cmath.cos(z), rel=1e-12)


def test_log_sin_far_from_real_axis():
    """Test log sin stays finite where sin itself overflows."""
    value = log_sin(0.25 + 800j)
    assert value.real == pytest.approx(800.0 - math.log(2.0), abs=1e-9)
    array = log_sin_array(np.array([0.25 + 800j, 0.25 - 800j, 0.3 + 0.2j]))
    assert array[0].real == pytest.approx(value.real, abs=1e-9)
    assert array[1].real == pytest.approx(value.real, abs=1e-9)
    assert cmath.exp(complex(array[2])) == pytest.approx(cmath.sin(0.3 + 0.2j), rel=1e-12)


def test_log_cosh_real_large_argument():
    """Test log cosh avoids overflow."""
    values = log_cosh_real(np.array([0.0, 1.0, 1000.0]))
    assert values[0] == pytest.approx(0.0, abs=1e-15)
    assert values[1] == pytest.approx(math.log(math.cosh(1.0)), rel=1e-14)
    assert values[2] == pytest.approx(1000.0 - math.log(2.0), rel=1e-15)


def test_log_gamma_branch_cut():
    """Test arguments hugging the negative real axis are refused."""
    with pytest.raises(BranchCutError):
        log_gamma(complex(-5.0, 0.01))


def test_gamma_growth_ratio_is_bounded():
    """Test Stirling growth |Gamma(x+iy)| ~ sqrt(2 pi) |y|^(x-1/2) e^(-pi|y|/2)."""
    for y in (10.0, 100.0, 1000.0):
        assert gamma_growth_ratio(0.75, y) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-2)


def test_zeta_known_values():
    """Test zeta(2) = pi^2/6 and zeta(1/2)."""
    assert zeta(2.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-9)
    assert zeta(0.5) == pytest.approx(-1.4603545088095868, abs=1e-9)


@pytest.mark.parametrize("s", [0.6 + 10j, 0.75 + 100j, 3.0 - 7j, 1.5 + 250j])
def test_zeta_matches_mpmath(s):
    """Test zeta against mpmath."""
    assert zeta(s) == pytest.approx(complex(mpmath.zeta(s)), rel=1e-9)


@pytest.mark.parametrize("s", [0.6 + 10j, 2.0 + 0j, 1.5 - 30j])
def test_zeta_prime_matches_mpmath(s):
    """Test zeta' against mpmath."""
    expected = complex(mpmath.zeta(s, derivative=1))
    assert zeta_prime(s) == pytest.approx(expected, rel=1e-8)


def test_zeta_pole():
    """Test (s-1) zeta(s) -> 1 and s = 1 itself raises."""
    errors = [abs(h * zeta(1.0 + h) - 1.0) for h in (1e-2, 1e-3, 1e-4)]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3
    with pytest.raises(NearPoleError):
        zeta(1.0)


def test_zeta_domain():
    """Test zeta refuses Re s outside (0, 4]."""
    with pytest.raises(DomainError):
        zeta(-0.5 + 1j)
    with pytest.raises(DomainError):
        zeta(5.0)


def test_log_deriv_near_pole():
    """Test zeta'/zeta(s) ~ -1/(s-1) close to s = 1."""
    s = 1.0 + 1e-3
    assert zeta_log_deriv(s).real == pytest.approx(-1.0 / (s - 1.0), rel=0.05)


def test_log_deriv_against_mpmath():
    """Test zeta'/zeta at a point in the critical strip."""
    s = 0.75 + 3j
    expected = complex(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
    assert zeta_log_deriv(s) == pytest.approx(expected, rel=1e-8)


def test_log_deriv_dirichlet_series(small_table):
    """Test -zeta'/zeta(2) against the truncated sum of Lambda(n) n^-2."""
    n_terms = small_table.limit
    powers = small_table.prime_powers(n_terms)
    n = powers.n.astype(float)
    oracle = -(math.fsum((powers.lam / (n * n)).tolist()) + 1.0 / n_terms)
    assert zeta_log_deriv(2.0).real == pytest.approx(oracle, abs=1e-5)


def test_log_deriv_at_tabulated_zero(zeros_head):
    """Test evaluating on a zero reports its ordinate."""
    with pytest.raises(ZeroProximityError) as exc_info:
        zeta_log_deriv(complex(0.5, zeros_head.first), zeros_head)
    assert exc_info.value.nearest_ordinate == pytest.approx(14.134725142)


def test_log_deriv_away_from_zeros(zeros_head):
    """Test points off the critical line pass the zero check."""
    value = zeta_log_deriv(0.75 + 0j, zeros_head)
    assert cmath.isfinite(value)
