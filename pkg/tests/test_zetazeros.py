"""Tests for cutoffs and sums over zeta zeros."""

import math

import numpy as np
import pytest

from prime_pair_zeros.domain.entities import CutoffR
from prime_pair_zeros.domain.errors import CapacityError, DomainError, ZerosFileError
from prime_pair_zeros.engine.kernels import FEJER, JACKSON
from prime_pair_zeros.engine.special import zeta_log_deriv
from prime_pair_zeros.engine.zetazeros import (
    ASSUMPTION,
    ZeroSet,
    choose_cutoff,
    cutoff_for_count,
    g_lambda,
    montgomery_prediction,
    omega_probe,
    pair_correlation_F,
    sigma1,
    sigma2_square,
    sigma3_opposite,
    sigma4,
    sigma4_difference,
    sigma_lambda,
    u3_constituent,
)


@pytest.fixture(scope="module")
def synthetic_zeros():
    """Three hundred evenly spaced ordinates, enough for several row blocks."""
    return ZeroSet(14.134725142 + 0.7 * np.arange(300), source="synthetic")


def test_zero_set_basics(zeros_head):
    """Test size, endpoints, counting and nearest lookup."""
    assert len(zeros_head) == 30
    assert zeros_head.first == pytest.approx(14.134725142)
    assert zeros_head.last == pytest.approx(101.317851006)
    assert zeros_head.count(21.5) == 2
    assert zeros_head.nearest(20.0) == pytest.approx(21.022039639)
    assert len(zeros_head.truncate(5)) == 5


def test_zero_set_rejects_decreasing_ordinates():
    """Test ordinates must not decrease."""
    with pytest.raises(ZerosFileError):
        ZeroSet([14.13, 21.02, 20.0])


def test_truncate_beyond_table(zeros_head):
    """Test asking for more zeros than tabulated is a capacity error."""
    with pytest.raises(CapacityError):
        zeros_head.truncate(31)


def test_choose_cutoff_midpoint(zeros_head):
    """Test the cutoff is the midpoint of the gap containing the target."""
    cutoff = choose_cutoff(zeros_head, 15.0)
    assert cutoff.value == pytest.approx(0.5 * (14.134725142 + 21.022039639))
    assert cutoff.straddles == (1, 2)
    assert not cutoff.below_first_zero


def test_choose_cutoff_below_first_zero(zeros_head):
    """Test a target below gamma_1 is flagged and lands in the first gap."""
    cutoff = choose_cutoff(zeros_head, 10.0)
    assert cutoff.value == pytest.approx(choose_cutoff(zeros_head, 15.0).value)
    assert cutoff.below_first_zero


def test_choose_cutoff_skips_narrow_gap():
    """Test gaps narrower than the clearance are skipped."""
    zeros = ZeroSet([14.13, 21.02, 21.0205, 25.0])
    cutoff = choose_cutoff(zeros, 21.02)
    assert cutoff.straddles == (3, 4)
    assert cutoff.value == pytest.approx(0.5 * (21.0205 + 25.0))


def test_choose_cutoff_beyond_table(zeros_head):
    """Test a target past the last ordinate is a capacity error."""
    with pytest.raises(CapacityError):
        choose_cutoff(zeros_head, 200.0)


def test_cutoff_for_count(zeros_head):
    """Test the cutoff keeps exactly the first n zeros."""
    for n in (1, 5, 29, 30):
        cutoff = cutoff_for_count(zeros_head, n)
        assert cutoff.zeros_below == n
        assert zeros_head.count(cutoff.value) == n


def test_sums_need_critical_strip(zeros_head):
    """Test Re s outside (1/2, 1) is a domain error."""
    cutoff = cutoff_for_count(zeros_head, 10)
    with pytest.raises(DomainError):
        sigma1(1.2 + 0j, 2.0, JACKSON, zeros_head, cutoff)
    with pytest.raises(DomainError):
        sigma2_square(0.5 + 0j, 2.0, JACKSON, zeros_head, cutoff)


def test_cutoff_on_an_ordinate_is_refused(zeros_head):
    """Test a cutoff sitting on a zero is a domain error."""
    cutoff = CutoffR(value=zeros_head.first, straddles=(1, 2))
    with pytest.raises(DomainError):
        sigma1(0.75 + 0j, 2.0, JACKSON, zeros_head, cutoff)


def test_sigma1_empty_below_first_zero(zeros_head):
    """Test a cutoff below gamma_1 leaves only the squared log derivative."""
    s = 0.75 + 0j
    result = sigma1(s, 2.0, JACKSON, zeros_head, CutoffR.below_first(zeros_head.first))
    assert result.terms_used == 0
    assert result.value == pytest.approx(zeta_log_deriv(s) ** 2, rel=1e-14)
    assert result.metadata["assumption"] == ASSUMPTION


def test_sigma1_counts_both_signs(zeros_head):
    """Test each zero contributes at +gamma and -gamma."""
    result = sigma1(0.7 + 1j, 4.0, JACKSON, zeros_head, cutoff_for_count(zeros_head, 12))
    assert result.terms_used == 24
    assert math.isfinite(result.value_re)


def test_sigma2_empty_below_first_zero(zeros_head):
    """Test the square sum vanishes when no zero is kept."""
    result = sigma2_square(0.75 + 0j, 2.0, JACKSON, zeros_head, CutoffR.below_first(14.13))
    assert result.value == 0
    assert result.terms_used == 0


@pytest.mark.parametrize("sigma", [0.55, 0.6, 0.8])
@pytest.mark.parametrize("lam", [1.0, 4.0, 10.0])
def test_sigma2_is_non_negative(zeros_head, sigma, lam):
    """Test the square partial sum stays above minus its tail estimate."""
    cutoff = cutoff_for_count(zeros_head, 30)
    result = sigma2_square(complex(sigma), lam, JACKSON, zeros_head, cutoff)
    assert result.value_re >= -result.tail_estimate
    assert result.value_im == 0.0


def test_sigma2_splits_into_sign_classes(zeros_head):
    """Test the square sum is its opposite-sign part plus the same-sign part."""
    s = 0.65 + 0.5j
    cutoff = cutoff_for_count(zeros_head, 20)
    full = sigma2_square(s, 4.0, FEJER, zeros_head, cutoff)
    opposite = sigma3_opposite(s, 4.0, FEJER, zeros_head, cutoff)
    same = complex(*full.metadata["same_sign"])
    assert complex(*full.metadata["opposite_sign"]) == pytest.approx(opposite.value, rel=1e-13)
    assert full.value == pytest.approx(opposite.value + same, rel=1e-13)


def test_sigma_lambda_adds_both_sums(zeros_head):
    """Test Sigma^lambda = sigma1 + sigma2."""
    s = 0.7 + 0j
    cutoff = cutoff_for_count(zeros_head, 15)
    total = sigma_lambda(s, 4.0, JACKSON, zeros_head, cutoff)
    first = sigma1(s, 4.0, JACKSON, zeros_head, cutoff)
    second = sigma2_square(s, 4.0, JACKSON, zeros_head, cutoff)
    assert total.value == pytest.approx(first.value + second.value, rel=1e-13)


def test_sigma4_single_zero_is_diagonal(zeros_head):
    """Test with one zero the banded sum is its diagonal term."""
    result = sigma4(0.6 + 0j, 2.0, JACKSON, zeros_head.truncate(1))
    assert result.terms_used == 1
    assert result.value == pytest.approx(complex(*result.metadata["diagonal"]), rel=1e-12)


def test_sigma4_needs_pole_regime(zeros_head):
    """Test s must be 1/2 + delta with 0 < delta < 1/4."""
    with pytest.raises(DomainError):
        sigma4(0.8 + 0j, 2.0, JACKSON, zeros_head)


def test_sigma4_difference_vanishes_at_lambda_one(zeros_head):
    """Test lambda^z - 1 kills every term at lambda = 1."""
    result = sigma4_difference(0.1, 1.0, JACKSON, zeros_head)
    assert result.value == 0
    assert result.terms_used > 0


def test_u3_pole_at_half():
    """Test (s - 1/2) U_3(s) -> lambda A^E."""
    delta = 1e-6
    value = u3_constituent(0.5 + delta, 2.0, JACKSON)
    assert delta * value.real == pytest.approx(2.0 * JACKSON.A_E, rel=1e-4)


def test_g_lambda_vanishes_at_one(zeros_head):
    """Test G^1 is exactly zero."""
    result = g_lambda(0.6 + 0j, 1.0, JACKSON, zeros_head, cutoff_for_count(zeros_head, 30))
    assert result.value == 0
    assert result.tail_estimate == 0.0


def test_omega_probe_at_lambda_one(zeros_head):
    """Test the probe at lambda = 1 reports zeros and target 0."""
    report = omega_probe(1.0, JACKSON, zeros_head, [0.2, 0.1])
    assert report.target == 0.0
    assert [row.scaled for row in report.rows] == [0.0, 0.0]
    assert report.estimate == 0.0
    assert report.label == "ESTIMATE"
    assert ASSUMPTION in report.notes


def test_omega_probe_rejects_bad_grid(zeros_head):
    """Test deltas outside (0, 1/4) are refused."""
    with pytest.raises(DomainError):
        omega_probe(2.0, JACKSON, zeros_head, [0.3])


def test_omega_probe_at_lambda_two(zeros_head):
    """Test the lambda = 2 probe targets -A^E and orders rows by decreasing delta."""
    report = omega_probe(2.0, JACKSON, zeros_head, [0.1, 0.2])
    assert report.target == pytest.approx(-JACKSON.A_E)
    assert [row.delta for row in report.rows] == [0.2, 0.1]
    assert report.estimate is not None


def test_omega_probe_logs_rows_dominated_by_tail(zeros_head, mock_logger):
    """Test a warning is logged for each delta whose tail estimate exceeds its value."""
    report = omega_probe(2.0, JACKSON, zeros_head, [0.2, 0.1], logger=mock_logger)
    logged = [call.kwargs["delta"] for call in mock_logger.warning.call_args_list]
    expected = [row.delta for row in report.rows if row.tail_estimate > abs(row.scaled)]
    assert logged == expected
    assert all(call.args[0] == "Tail exceeds value" for call in mock_logger.warning.call_args_list)


def test_omega_probe_at_lambda_one_logs_nothing(zeros_head, mock_logger):
    """Test the exact zero rows at lambda = 1 raise no warnings."""
    omega_probe(1.0, JACKSON, zeros_head, [0.2, 0.1], logger=mock_logger)
    mock_logger.warning.assert_not_called()


def test_pair_correlation_is_even(zeros_head):
    """Test F(alpha) = F(-alpha)."""
    for alpha in (0.25, 0.5, 1.0, 2.0):
        plus = pair_correlation_F(alpha, zeros_head, zeros_head.last)
        minus = pair_correlation_F(-alpha, zeros_head, zeros_head.last)
        assert plus == pytest.approx(minus, abs=1e-12)


def test_pair_correlation_at_zero(zeros_head):
    """Test F(0) is of the order of log T."""
    height = zeros_head.last
    ratio = pair_correlation_F(0.0, zeros_head, height) / math.log(height)
    assert 0.05 < ratio < 1.0


def test_pair_correlation_height_range(zeros_head):
    """Test T must lie in (gamma_1, gamma_last]."""
    with pytest.raises(CapacityError):
        pair_correlation_F(1.0, zeros_head, 200.0)
    with pytest.raises(DomainError):
        pair_correlation_F(1.0, zeros_head, 10.0)


def test_montgomery_prediction():
    """Test the prediction is log T at 0 and 1 from alpha = 1 on."""
    assert montgomery_prediction(0.0, 100.0) == pytest.approx(math.log(100.0))
    assert montgomery_prediction(1.5, 100.0) == 1.0
    assert montgomery_prediction(-0.5, 100.0) == montgomery_prediction(0.5, 100.0)


def test_thread_count_does_not_change_values(synthetic_zeros):
    """Test block sums are identical for one and several workers."""
    height = synthetic_zeros.last
    assert pair_correlation_F(0.8, synthetic_zeros, height, threads=1) == pair_correlation_F(
        0.8, synthetic_zeros, height, threads=4
    )
    single = sigma4(0.6 + 0j, 2.0, JACKSON, synthetic_zeros, threads=1)
    multi = sigma4(0.6 + 0j, 2.0, JACKSON, synthetic_zeros, threads=3)
    assert single.value == multi.value
    cutoff = cutoff_for_count(synthetic_zeros, 150)
    assert (
        sigma2_square(0.7 + 0j, 4.0, JACKSON, synthetic_zeros, cutoff, threads=1).value
        == sigma2_square(0.7 + 0j, 4.0, JACKSON, synthetic_zeros, cutoff, threads=3).value
    )


def test_g_lambda_at_two(zeros_head):
    """Test G^2 is Sigma^2 - Sigma^1 - R(2)/(s - 1/2) with its tails and assumption."""
    s = 0.55 + 0j
    cutoff = cutoff_for_count(zeros_head, 30)
    result = g_lambda(s, 2.0, JACKSON, zeros_head, cutoff)
    upper = sigma_lambda(s, 2.0, JACKSON, zeros_head, cutoff)
    lower = sigma_lambda(s, 1.0, JACKSON, zeros_head, cutoff)
    remainder = result.metadata["remainder_R"]
    assert remainder == pytest.approx(-JACKSON.A_E)
    expected = upper.value - lower.value - remainder / (s - 0.5)
    assert result.value == pytest.approx(expected, rel=1e-12)
    assert math.isfinite(result.value_re)
    assert result.tail_estimate == pytest.approx(upper.tail_estimate + lower.tail_estimate)
    assert result.tail_estimate > 0
    assert result.terms_used == upper.terms_used + lower.terms_used
    assert result.metadata["assumption"] == ASSUMPTION
    assert result.cutoff == cutoff


def test_g_lambda_conjugate_symmetry(zeros_head):
    """Test G(conj s) = conj G(s)."""
    s = 0.6 + 0.8j
    cutoff = cutoff_for_count(zeros_head, 20)
    value = g_lambda(s, 2.0, FEJER, zeros_head, cutoff).value
    mirrored = g_lambda(s.conjugate(), 2.0, FEJER, zeros_head, cutoff).value
    scale = 1.0 + sum(
        abs(sigma_lambda(s, lam, FEJER, zeros_head, cutoff).value) for lam in (1.0, 2.0)
    )
    assert abs(mirrored - value.conjugate()) <= 1e-9 * scale


@pytest.mark.parametrize("sigma", [0.55, 0.75, 0.9])
def test_sigma1_is_real_at_real_s(zeros_head, sigma):
    """Test sigma1 has no imaginary part on the real axis."""
    result = sigma1(complex(sigma), 2.0, JACKSON, zeros_head, cutoff_for_count(zeros_head, 30))
    assert math.isfinite(result.value_re)
    assert result.value_im == pytest.approx(0.0, abs=1e-12 * max(1.0, abs(result.value_re)))


@pytest.mark.parametrize("kernel", [FEJER, JACKSON])
@pytest.mark.parametrize("s", [0.75 + 0j, 0.6 + 1j])
@pytest.mark.parametrize("zero_sum", [sigma1, sigma2_square])
def test_doubling_zero_count_stays_within_tail(zeros_head, zero_sum, kernel, s):
    """Test going from 15 to 30 zeros moves the sum by less than the 15-zero tail estimate."""
    first = zero_sum(s, 4.0, kernel, zeros_head, cutoff_for_count(zeros_head, 15))
    second = zero_sum(s, 4.0, kernel, zeros_head, cutoff_for_count(zeros_head, 30))
    assert first.tail_estimate > 0
    assert abs(second.value - first.value) <= first.tail_estimate


@pytest.mark.parametrize("delta", [0.08, 0.15])
def test_sigma4_doubling_zero_count_stays_within_tail(zeros_head, delta):
    """Test the banded sum over 30 zeros stays within the 15-zero tail estimate."""
    s = complex(0.5 + delta)
    first = sigma4(s, 2.0, JACKSON, zeros_head.truncate(15))
    second = sigma4(s, 2.0, JACKSON, zeros_head)
    assert abs(second.value - first.value) <= first.tail_estimate


def test_pair_correlation_ignores_ordinates_above_height(zeros_head):
    """Test F(alpha, T) depends only on the ordinates up to T."""
    height = float(zeros_head.ordinates[14])
    short = pair_correlation_F(0.7, zeros_head.truncate(15), height)
    assert pair_correlation_F(0.7, zeros_head, height) == short
