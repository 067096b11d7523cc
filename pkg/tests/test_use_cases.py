"""Tests for the use cases behind the CLI subcommands."""

from unittest.mock import Mock

import pytest

from prime_pair_zeros.domain.entities import ProbeReport, SeriesResult
from prime_pair_zeros.domain.errors import DomainError, KernelError
from prime_pair_zeros.engine.kernels import JACKSON
from prime_pair_zeros.usecases.constants_table import ConstantsTableUseCase
from prime_pair_zeros.usecases.count_pairs import CountPairsUseCase
from prime_pair_zeros.usecases.dirichlet_series import DirichletSeriesUseCase
from prime_pair_zeros.usecases.kernel_eval import KernelEvalUseCase
from prime_pair_zeros.usecases.pair_correlation import PairCorrelationUseCase
from prime_pair_zeros.usecases.prime_tables import PrimeTableProvider
from prime_pair_zeros.usecases.zero_sums import ZeroSumUseCase


@pytest.fixture
def tables(metrics_adapter, mock_logger):
    """Prime table provider with small segments."""
    return PrimeTableProvider(metrics_adapter, mock_logger, segment_size=2**12)


def test_prime_table_provider_reuses_larger_table(tables, metrics_adapter):
    """Test a request below the cached limit does not sieve again."""
    big = tables.get(50_000)
    assert tables.get(10_000) is big
    assert tables.get(60_000).limit == 60_000
    assert metrics_adapter.get_count("sieve.primes") == 5133 + 6057


def test_count_pairs_cold_then_warm(tables, cache_adapter, metrics_adapter, mock_logger):
    """Test the first run sieves and writes the cache, the second only reads it."""
    use_case = CountPairsUseCase(tables, cache_adapter, metrics_adapter, mock_logger)

    records = use_case.execute([2, 6, 210], [10_000, 1000])
    assert [(r.two_r, r.x, r.count) for r in records] == [
        (2, 1000, 35),
        (2, 10_000, 205),
        (6, 1000, 74),
        (6, 10_000, 411),
        (210, 1000, 107),
        (210, 10_000, 641),
    ]
    assert metrics_adapter.get_count("cache.miss") == 3
    assert metrics_adapter.get_count("cache.write") == 3

    # Warm run: the sieve must not be touched
    warm_tables = Mock()
    warm = CountPairsUseCase(warm_tables, cache_adapter, metrics_adapter, mock_logger)
    assert warm.execute([2, 6, 210], [1000, 10_000]) == records
    warm_tables.get.assert_not_called()
    assert metrics_adapter.get_count("cache.hit") == 3


def test_count_pairs_partial_cache(tables, cache_adapter, metrics_adapter, mock_logger):
    """Test a new checkpoint under the same max_x re-sieves only the missing difference."""
    use_case = CountPairsUseCase(tables, cache_adapter, metrics_adapter, mock_logger)
    use_case.execute([2], [1000], max_x=10_000)
    records = use_case.execute([2, 4], [1000], max_x=10_000)

    assert [r.count for r in records] == [35, 41]
    assert metrics_adapter.get_count("cache.hit") == 1
    assert cache_adapter.load(10_000, 4) == {1000: 41}


def test_count_pairs_validation(tables, cache_adapter, metrics_adapter, mock_logger):
    """Test odd differences and checkpoints above max_x are refused."""
    use_case = CountPairsUseCase(tables, cache_adapter, metrics_adapter, mock_logger)
    with pytest.raises(DomainError):
        use_case.execute([3], [1000])
    with pytest.raises(DomainError):
        use_case.execute([2], [1000], max_x=100)
    with pytest.raises(DomainError):
        use_case.execute([], [1000])


def test_count_pairs_csv_layout(tables, cache_adapter, metrics_adapter, mock_logger):
    """Test the CSV has one row per difference and one column per checkpoint."""
    use_case = CountPairsUseCase(tables, cache_adapter, metrics_adapter, mock_logger)
    records = use_case.execute([2, 6, 210], [1000, 10_000])
    assert CountPairsUseCase.to_csv(records) == (
        "two_r,1000,10000\n2,35,205\n6,74,411\n210,107,641\n"
    )


def test_constants_table(mock_logger):
    """Test the C_2r rows carry exact ratios and the L_2 row rounds."""
    result = ConstantsTableUseCase(mock_logger, prime_limit=10**6).execute(15, [1000])
    rows = {row.two_r: row for row in result["rows"]}
    assert (rows[6].ratio_num, rows[6].ratio_den) == (2, 1)
    assert (rows[30].ratio_num, rows[30].ratio_den) == (8, 3)
    assert rows[2].c_2r == pytest.approx(0.6601618, abs=1e-5)
    assert result["l2"][0]["rounded"] == 46
    csv_text = ConstantsTableUseCase.to_csv(result["rows"][:1])
    assert csv_text.startswith("r,two_r,ratio_num,ratio_den,c_2r\n1,2,1,1,0.66016")


def test_kernel_eval(mock_logger):
    """Test Mellin, residue and weight evaluations by kernel name."""
    use_case = KernelEvalUseCase(mock_logger)
    assert use_case.mellin("jackson", 1.0, 0j).value == pytest.approx(1.0, abs=1e-10)
    residue = use_case.residue("fejer", 2.0)
    assert residue["residue_re"] == pytest.approx(residue["expected"], abs=1e-6)
    weight = use_case.weight("jackson", 2.0, 1.0)
    assert weight["E_lambda"] == pytest.approx(0.25)
    with pytest.raises(KernelError):
        use_case.mellin("gauss", 1.0, 0j)


def test_series_dispatch(tables, metrics_adapter, mock_logger):
    """Test series operations dispatch and count their terms."""
    use_case = DirichletSeriesUseCase(tables, metrics_adapter, mock_logger)

    result = use_case.execute("vlambda", 2.0, 1000, lam=2.0)
    assert isinstance(result, SeriesResult)
    assert result.value == 0

    d2 = use_case.execute("d2r", 2.0, 1000, two_r=2)
    assert d2.value_re > 0
    assert metrics_adapter.get_count("series.terms") == d2.terms_used

    residual = use_case.execute("identity", 0.75, 1000, lam=4.0)
    assert residual.relative < 1e-12


def test_series_probe_needs_deltas(tables, metrics_adapter, mock_logger):
    """Test probes without a delta grid and unknown ops are refused."""
    use_case = DirichletSeriesUseCase(tables, metrics_adapter, mock_logger)
    with pytest.raises(DomainError):
        use_case.execute("d0pole", 0.75, 1000)
    with pytest.raises(DomainError):
        use_case.execute("zeta", 2.0, 1000)


def test_series_reach():
    """Test the table margin past N for each operation."""
    assert DirichletSeriesUseCase.reach("d2r", 210, 1.0) == 210
    assert DirichletSeriesUseCase.reach("d0pole", 2, 1.0) == 0
    assert DirichletSeriesUseCase.reach("vlambda", 2, 7.5) == 6
    assert DirichletSeriesUseCase.reach("tlambda", 2, 7.5) == 7


def test_zero_sum_dispatch(zeros_adapter, zeros_file, metrics_adapter, mock_logger):
    """Test zero-sum operations load the table and dispatch."""
    use_case = ZeroSumUseCase(zeros_adapter, metrics_adapter, mock_logger)

    result = use_case.execute("glambda", zeros_file, 0.6 + 0j, 1.0)
    assert result.value == 0

    square = use_case.execute("sigma2", zeros_file, 0.7 + 0j, 4.0, count=20)
    assert square.cutoff.zeros_below == 20
    assert square.metadata["kernel"] == JACKSON.name

    report = use_case.execute("omega", zeros_file, 0.75 + 0j, 1.0, deltas=[0.2, 0.1])
    assert isinstance(report, ProbeReport)


def test_zero_sum_u3_needs_no_table(metrics_adapter, mock_logger):
    """Test the U_3 constituent is computed without touching the zeros port."""
    zeros_port = Mock()
    use_case = ZeroSumUseCase(zeros_port, metrics_adapter, mock_logger)
    result = use_case.execute("u3", "", 0.75 + 0j, 2.0)
    assert result.terms_used == 0
    zeros_port.load.assert_not_called()


def test_zero_sum_validation(zeros_adapter, zeros_file, metrics_adapter, mock_logger):
    """Test unknown ops and missing parameters are domain errors."""
    use_case = ZeroSumUseCase(zeros_adapter, metrics_adapter, mock_logger)
    with pytest.raises(DomainError):
        use_case.execute("sigma9", zeros_file, 0.75 + 0j, 2.0)
    with pytest.raises(DomainError):
        use_case.execute("sigma4diff", zeros_file, 0.6 + 0j, 2.0)
    with pytest.raises(DomainError):
        use_case.execute("omega", zeros_file, 0.6 + 0j, 2.0)


def test_pair_correlation_use_case(zeros_adapter, zeros_file, metrics_adapter, mock_logger):
    """Test points carry the value and the prediction at the last ordinate."""
    use_case = PairCorrelationUseCase(zeros_adapter, metrics_adapter, mock_logger)
    points = use_case.execute(zeros_file, [0.5, -0.5, 1.5], count=25)

    assert [p.zeros_used for p in points] == [25, 25, 25]
    assert points[0].value == pytest.approx(points[1].value, abs=1e-12)
    assert points[2].prediction == 1.0
    assert metrics_adapter.get_count("zeros.pairs") == 3 * 300
