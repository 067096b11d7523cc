"""Tests for sieving kernels and their Fourier and Mellin transforms."""

import math

import numpy as np
import pytest

from prime_pair_zeros.domain.errors import DomainError, KernelError, NearPoleError
from prime_pair_zeros.engine.kernels import (
    FEJER,
    JACKSON,
    eval_E,
    eval_E_hat,
    eval_E_lambda,
    get_kernel,
    mellin_bound_check,
    mellin_inversion_check,
    mellin_M,
    mellin_quadrature,
    mellin_residue,
    moment,
    moment_derivative_form,
    polynomial_kernel,
    residue_at_one,
)


def test_jackson_values():
    """Test the Jackson kernel at its breakpoint and on the outer branch."""
    assert eval_E(JACKSON, 0.0) == pytest.approx(1.0)
    assert eval_E(JACKSON, 0.5) == pytest.approx(0.25)
    assert eval_E(JACKSON, -0.75) == pytest.approx(1.0 / 32.0)
    assert eval_E(JACKSON, 1.5) == 0.0


def test_fejer_values():
    """Test the Fejer kernel is 1 - |nu| on its support."""
    nu = np.array([-1.2, -0.5, 0.0, 0.25, 1.0])
    assert eval_E(FEJER, nu).tolist() == pytest.approx([0.0, 0.5, 1.0, 0.75, 0.0])


def test_scaled_kernel():
    """Test E^lambda(nu) = E(nu / lambda)."""
    assert eval_E_lambda(JACKSON, 4.0, 2.0) == pytest.approx(0.25)


def test_kernel_constants():
    """Test A^E and smoothness of the stock kernels."""
    assert FEJER.A_E == pytest.approx(0.5)
    assert JACKSON.A_E == pytest.approx(0.375)
    assert FEJER.smoothness == 1
    assert JACKSON.smoothness == 3


def test_fourier_at_zero():
    """Test E_hat^lambda(0) = 2 lambda A^E."""
    for lam in (1.0, 2.5, 10.0):
        assert eval_E_hat(FEJER, lam, 0.0) == pytest.approx(lam)
        assert eval_E_hat(JACKSON, lam, 0.0) == pytest.approx(0.75 * lam)


def test_fejer_fourier_closed_form():
    """Test the Fejer transform 2 lambda (1 - cos(lambda t)) / (lambda t)^2."""
    t = np.array([1e-3, 0.3, 1.0, 2.0, 7.5])
    lam = 2.0
    omega = lam * t
    expected = lam * 2.0 * (1.0 - np.cos(omega)) / omega**2
    assert eval_E_hat(FEJER, lam, t).tolist() == pytest.approx(expected.tolist(), rel=1e-9)
    assert eval_E_hat(FEJER, lam, math.pi) == pytest.approx(0.0, abs=1e-12)


def test_fourier_is_even():
    """Test E_hat(-t) = E_hat(t)."""
    t = np.linspace(0.1, 20.0, 50)
    assert np.allclose(eval_E_hat(JACKSON, 3.0, -t), eval_E_hat(JACKSON, 3.0, t))


def test_jackson_fourier_is_non_negative():
    """Test the Jackson transform never goes negative."""
    t = np.linspace(0.0, 50.0, 2001)
    assert np.all(eval_E_hat(JACKSON, 1.0, t) >= -1e-12)


@pytest.mark.parametrize("kernel", [FEJER, JACKSON])
@pytest.mark.parametrize("lam", [1.0, 2.0, 10.0])
def test_mellin_at_zero_is_one(kernel, lam):
    """Test M^lambda(0) = 1 through the removable singularity."""
    result = mellin_M(kernel, lam, 0j)
    assert result.value == pytest.approx(1.0, abs=1e-10)
    assert result.is_near_pole


@pytest.mark.parametrize("kernel", [FEJER, JACKSON])
@pytest.mark.parametrize("lam", [1.0, 2.0, 10.0])
def test_mellin_residue_at_one(kernel, lam):
    """Test the residue at z = 1 is -(2 lambda / pi) A^E."""
    assert mellin_residue(kernel, lam) == pytest.approx(residue_at_one(kernel, lam), abs=1e-6)


def test_mellin_pole_raises():
    """Test evaluating at z = 1 reports the pole."""
    with pytest.raises(NearPoleError) as exc_info:
        mellin_M(JACKSON, 1.0, 1 + 0j)
    assert exc_info.value.pole == 1


def test_mellin_left_of_continuation_raises():
    """Test arguments left of -smoothness are a domain error."""
    with pytest.raises(DomainError):
        mellin_M(FEJER, 1.0, complex(-1.5, 0.0))


def test_mellin_real_argument_is_real():
    """Test M^lambda(x) is real for real x."""
    assert mellin_M(JACKSON, 3.0, 0.4 + 0j).value_im == 0.0


def test_mellin_value_keeps_its_argument():
    """Test the evaluation point is reported as an [re, im] pair."""
    result = mellin_M(FEJER, 2.0, 0.3 - 1.5j)
    assert result.z == (0.3, -1.5)
    assert result.point == 0.3 - 1.5j
    assert result.model_dump()["z"] == (0.3, -1.5)


def test_mellin_lambda_scaling():
    """Test M^lambda(z) = lambda^z M^1(z)."""
    z = complex(0.3, 2.0)
    scaled = mellin_M(JACKSON, 5.0, z).value
    unit = mellin_M(JACKSON, 1.0, z).value
    assert scaled == pytest.approx(5.0**z * unit, rel=1e-12)


@pytest.mark.parametrize("kernel", [FEJER, JACKSON])
@pytest.mark.parametrize("z", [0.3 + 2j, 0.7 - 4j, 0.5 + 0j])
def test_mellin_closed_form_matches_quadrature(kernel, z):
    """Test the closed form against direct oscillatory quadrature in the strip."""
    closed = mellin_M(kernel, 2.0, z).value
    assert mellin_quadrature(kernel, 2.0, z) == pytest.approx(closed, rel=1e-6, abs=1e-6)


@pytest.mark.parametrize("z", [0.5 + 1j, 2.3 - 0.7j, -0.4 + 3j])
def test_moment_forms_agree(z):
    """Test branch antiderivatives and the jump expansion give the same moment."""
    assert moment_derivative_form(JACKSON, z) == pytest.approx(moment(JACKSON, z), rel=1e-10)


def test_mellin_decay_is_bounded():
    """Test |M(x+iy)| (|y|+1)^(x+7/2) stays bounded for the Jackson kernel."""
    report = mellin_bound_check(JACKSON, 1.0, 0.0, [1.0, 10.0, 100.0, 1000.0])
    assert report.bounded
    assert report.exponent == pytest.approx(3.5)
    assert [s.y for s in report.samples] == [1.0, 10.0, 100.0, 1000.0]


def test_mellin_bound_check_rejects_small_y():
    """Test samples with |y| < 1 are refused."""
    with pytest.raises(DomainError):
        mellin_bound_check(JACKSON, 1.0, 0.0, [0.5, 10.0])


def test_mellin_inversion():
    """Test the Fourier transform inverts back to E^lambda."""
    for nu in (0.0, 0.5, 1.3):
        expected = eval_E_lambda(JACKSON, 2.0, nu)
        assert mellin_inversion_check(JACKSON, 2.0, nu) == pytest.approx(expected, abs=1e-6)


def test_get_kernel():
    """Test stock kernels resolve by name, case-insensitively."""
    assert get_kernel("Jackson") is JACKSON
    assert get_kernel("fejer") is FEJER
    with pytest.raises(KernelError):
        get_kernel("dirichlet")


def test_custom_kernel_construction():
    """Test a quadratic kernel builds and gets A^E = 2/3."""
    kernel = polynomial_kernel("quadratic", [(0, 1, (1, 0, -1))])
    assert kernel.A_E == pytest.approx(2.0 / 3.0)
    assert eval_E(kernel, 0.5) == pytest.approx(0.75)


@pytest.mark.parametrize(
    "branches",
    [
        [(0, 1, (2, -2))],
        [(0, 1, (1,))],
        [(0, 1, (1, 1, -2))],
        [(0, "1/2", (1, -1))],
        [(0, "1/2", (1, -1)), ("1/2", 1, (0.25,))],
    ],
)
def test_custom_kernel_rejected(branches):
    """Test kernels violating E(0) = 1, continuity, coverage or monotonicity."""
    with pytest.raises(KernelError):
        polynomial_kernel("bad", branches)
