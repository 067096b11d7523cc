"""CLI application using Typer."""

import csv
import io
import json
from decimal import Decimal, InvalidOperation
from typing import Annotated, Any, Callable, Dict, List, Optional

import numpy as np
import typer
from dotenv import load_dotenv
from pydantic import BaseModel

from ..domain.entities import (
    BoundCheckReport,
    IdentityResidual,
    MellinValue,
    OutputMetadata,
    ProbeReport,
    RunConfig,
    RunOutput,
    SeriesResult,
    VerificationReport,
)
from ..domain.errors import ConfigurationError, PrimePairsError
from ..domain.policies import ExitCodePolicy
from ..domain.value_objects import ComplexPoint
from ..engine.zetazeros import ASSUMPTION
from ..infrastructure.expectations_yaml_adapter import ExpectationsYamlAdapter
from ..infrastructure.hashing import sha256_config, sha256_file
from ..infrastructure.logger_structlog_adapter import LoggerStructlogAdapter
from ..infrastructure.metrics_memory_adapter import MetricsMemoryAdapter
from ..infrastructure.pair_cache_csv_adapter import PairCacheCsvAdapter
from ..infrastructure.settings import Settings
from ..infrastructure.zeros_text_adapter import ZerosTextAdapter
from ..usecases.constants_table import ConstantsTableUseCase
from ..usecases.count_pairs import CountPairsUseCase
from ..usecases.dirichlet_series import SERIES_OPS, DirichletSeriesUseCase
from ..usecases.kernel_eval import KernelEvalUseCase
from ..usecases.pair_correlation import PairCorrelationUseCase
from ..usecases.prime_tables import PrimeTableProvider
from ..usecases.verify import VerifyUseCase
from ..usecases.zero_sums import ZERO_SUM_OPS, ZeroSumUseCase

# Load environment variables
load_dotenv()

app = typer.Typer(help="Prime pairs, Hardy-Littlewood constants and zeta-zero sums")

CSV_DIGITS = 10

Verbose = Annotated[bool, typer.Option("--verbose", help="Debug logging on stderr")]
Threads = Annotated[
    Optional[int], typer.Option("--threads", min=1, envvar="PPZ_THREADS", help="Worker threads")
]
CacheDir = Annotated[
    Optional[str], typer.Option("--cache-dir", envvar="PPZ_CACHE_DIR", help="Pair-count cache")
]
ZerosFile = Annotated[
    Optional[str],
    typer.Option("--zeros-file", envvar="PPZ_ZEROS_FILE", help="Zeta-zero ordinates table"),
]
KernelName = Annotated[str, typer.Option("--kernel", "--type", help="fejer or jackson")]


def _output_option(default: str) -> Any:
    return typer.Option(default, "--output", help="csv or json")


def _parse_point(text: str) -> complex:
    try:
        return ComplexPoint.parse(text).value
    except ValueError as exc:
        raise typer.BadParameter(str(exc)) from exc


def _parse_int(text: str) -> int:
    """Integers in decimal or scientific form (1e7)."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation as exc:
        raise typer.BadParameter(f"Not a number: {text!r}") from exc
    if value != value.to_integral_value():
        raise typer.BadParameter(f"Not an integer: {text!r}")
    return int(value)


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise typer.BadParameter(f"Not a number: {text!r}") from exc


def _split(values: Optional[List[str]], parse: Callable[[str], Any]) -> List[Any]:
    """Accept repeated options and comma-separated lists alike."""
    items: List[Any] = []
    for value in values or []:
        items.extend(parse(part) for part in value.split(",") if part.strip())
    return items


def _check_output(output: str) -> str:
    if output not in ("csv", "json"):
        raise typer.BadParameter(f"--output must be csv or json, got {output!r}")
    return output


def _get_adapters(
    verbose: bool = False, cache_dir: Optional[str] = None, threads: Optional[int] = None
) -> dict:
    """Get all adapters (dependency injection)."""
    settings = Settings.from_env(dotenv=False)
    logger = LoggerStructlogAdapter(log_level="DEBUG" if verbose else settings.log_level)
    metrics = MetricsMemoryAdapter()
    threads = threads or settings.threads
    tables = PrimeTableProvider(metrics, logger, settings.segment_size, threads)
    return {
        "settings": settings,
        "logger": logger,
        "metrics": metrics,
        "tables": tables,
        "cache": PairCacheCsvAdapter(cache_dir or settings.cache_dir),
        "zeros": ZerosTextAdapter(),
        "threads": threads,
    }


def _run_config(
    adapters: dict,
    subcommand: str,
    flags: Dict[str, Any],
    output: str,
    cache_dir: Optional[str] = None,
    zeros_file: Optional[str] = None,
) -> RunConfig:
    settings = adapters["settings"]
    return RunConfig(
        subcommand=subcommand,
        flags=flags,
        cache_dir=cache_dir or settings.cache_dir,
        output_format=output,
        zeros_file=zeros_file,
        threads=adapters["threads"],
    )


def _jsonable(value: Any) -> Any:
    """Plain JSON types; floats keep their shortest round-trip repr."""
    if isinstance(value, BaseModel):
        return _jsonable(value.model_dump())
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _csv_cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.{CSV_DIGITS}g}"
    if value is None:
        return ""
    return str(value)


def _json_cell(value: Any) -> str:
    return json.dumps(_jsonable(value))


def _csv_table(header: List[str], rows: List[List[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue()


def _to_csv(result: Any) -> str:
    """Human table for any result; tabular results keep their row layout."""
    if isinstance(result, ProbeReport):
        columns = list(result.rows[0].model_fields) if result.rows else ["delta"]
        return _csv_table(
            columns, [[getattr(row, name) for name in columns] for row in result.rows]
        )
    if isinstance(result, VerificationReport):
        return _csv_table(
            ["suite", "name", "passed", "measured", "expected"],
            [
                [c.suite, c.name, c.passed, _json_cell(c.measured), _json_cell(c.expected)]
                for c in result.checks
            ],
        )
    if isinstance(result, BoundCheckReport):
        return _csv_table(
            ["y", "modulus", "ratio"], [[s.y, s.modulus, s.ratio] for s in result.samples]
        )
    if isinstance(result, list) and result and isinstance(result[0], BaseModel):
        columns = list(type(result[0]).model_fields)
        return _csv_table(columns, [[getattr(item, name) for name in columns] for item in result])
    if isinstance(result, (SeriesResult, IdentityResidual, MellinValue)):
        data = result.model_dump(exclude={"metadata", "cutoff"})
    else:
        data = dict(result)
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, (list, tuple)) and len(value) == 2:
            flat[f"{key}_re"], flat[f"{key}_im"] = value
        elif not isinstance(value, (list, tuple, dict)):
            flat[key] = value
    return _csv_table(list(flat), [list(flat.values())])


def _emit(
    command: str,
    result: Any,
    config: RunConfig,
    adapters: dict,
    csv_text: Optional[str] = None,
    assumption: Optional[str] = None,
) -> None:
    """Write the result to stdout; JSON carries the reproducibility metadata."""
    if config.output_format == "csv":
        typer.echo(csv_text if csv_text is not None else _to_csv(result), nl=False)
        return
    config_data = _jsonable(config)
    metadata = OutputMetadata(
        config=config_data,
        config_sha256=sha256_config(config_data),
        metrics=adapters["metrics"].get_all(),
        assumption=assumption,
    )
    document = {"command": command, "result": _jsonable(result), "metadata": _jsonable(metadata)}
    typer.echo(json.dumps(document, indent=2))


def _fail(error: PrimePairsError) -> typer.Exit:
    typer.echo(f"✗ {type(error).__name__}: {error}", err=True)
    return typer.Exit(ExitCodePolicy.for_error(error))


def _zeros_flags(zeros_file: Optional[str], required: bool = True) -> Dict[str, Any]:
    if not zeros_file:
        if required:
            raise ConfigurationError(
                "A zeros table is required: pass --zeros-file or set PPZ_ZEROS_FILE"
            )
        return {}
    try:
        return {"zeros_sha256": sha256_file(zeros_file)}
    except OSError:
        # Unreadable files are reported by the zeros adapter with the parse context.
        return {}


@app.command()
def count(
    two_r: Annotated[List[str], typer.Option("--two-r", help="Even differences, e.g. 2,6,210")],
    checkpoints: Annotated[
        List[str], typer.Option("--checkpoints", help="Checkpoints x, e.g. 1e3,1e4")
    ],
    max_x: Annotated[Optional[str], typer.Option("--max-x", help="Sieve limit / cache key")] = None,
    output: str = _output_option("csv"),
    cache_dir: CacheDir = None,
    threads: Threads = None,
    verbose: Verbose = False,
):
    """Count prime pairs pi_2r(x) on a (two_r, x) grid, through the CSV cache."""
    output = _check_output(output)
    two_rs = _split(two_r, _parse_int)
    xs = _split(checkpoints, _parse_int)
    limit = _parse_int(max_x) if max_x else None
    adapters = _get_adapters(verbose, cache_dir, threads)
    flags = {"two_r": two_rs, "checkpoints": xs, "max_x": limit}
    try:
        config = _run_config(adapters, "count", flags, output, cache_dir)
        use_case = CountPairsUseCase(
            tables=adapters["tables"],
            cache_port=adapters["cache"],
            metrics_port=adapters["metrics"],
            logger=adapters["logger"].bind(op="count"),
        )
        records = use_case.execute(two_rs, xs, limit)
    except PrimePairsError as e:
        raise _fail(e)
    _emit("count", records, config, adapters, csv_text=CountPairsUseCase.to_csv(records))


@app.command()
def constants(
    m: Annotated[int, typer.Option("--m", min=1, help="Largest r of the C_2r table")] = 12,
    l2: Annotated[
        Optional[List[str]], typer.Option("--l2", help="Checkpoints for 2 C_2 li_2(x)")
    ] = None,
    output: str = _output_option("csv"),
    verbose: Verbose = False,
):
    """Twin-prime constant C_2 and the C_2r table."""
    output = _check_output(output)
    checkpoints = _split(l2, _parse_int)
    adapters = _get_adapters(verbose)
    flags = {"m": m, "l2": checkpoints}
    try:
        config = _run_config(adapters, "constants", flags, output)
        use_case = ConstantsTableUseCase(logger=adapters["logger"].bind(op="constants"))
        result = use_case.execute(m, checkpoints)
    except PrimePairsError as e:
        raise _fail(e)
    csv_text = ConstantsTableUseCase.to_csv(result["rows"])
    _emit("constants", result, config, adapters, csv_text=csv_text)


@app.command()
def kernel(
    kernel_name: KernelName = "jackson",
    lam: Annotated[float, typer.Option("--lambda", help="Dilation lambda > 0")] = 1.0,
    eval_mellin: Annotated[
        Optional[str], typer.Option("--eval-mellin", help="z as <re>,<im>")
    ] = None,
    eval_e: Annotated[Optional[float], typer.Option("--eval-e", help="nu for E^lambda")] = None,
    residue: Annotated[bool, typer.Option("--residue", help="Residue of M^lambda at 1")] = False,
    bound_x: Annotated[
        Optional[float], typer.Option("--bound-x", help="Re z of the growth check")
    ] = None,
    bound_y: Annotated[
        Optional[List[str]], typer.Option("--bound-y", help="Im z samples for --bound-x")
    ] = None,
    output: str = _output_option("json"),
    verbose: Verbose = False,
):
    """Evaluate a sieving kernel: M^lambda(z), E^lambda(nu), the residue or a growth bound."""
    output = _check_output(output)
    modes = [eval_mellin is not None, eval_e is not None, residue, bound_x is not None]
    if sum(modes) != 1:
        raise typer.BadParameter(
            "choose exactly one of --eval-mellin, --eval-e, --residue, --bound-x"
        )
    adapters = _get_adapters(verbose)
    use_case = KernelEvalUseCase(logger=adapters["logger"].bind(op="kernel"))
    flags: Dict[str, Any] = {"kernel": kernel_name, "lambda": lam}
    try:
        if eval_mellin is not None:
            z = _parse_point(eval_mellin)
            flags["eval_mellin"] = [z.real, z.imag]
            result: Any = use_case.mellin(kernel_name, lam, z)
        elif eval_e is not None:
            flags["eval_e"] = eval_e
            result = use_case.weight(kernel_name, lam, eval_e)
        elif residue:
            flags["residue"] = True
            result = use_case.residue(kernel_name, lam)
        else:
            samples = _split(bound_y, _parse_float) or [1.0, 10.0, 100.0, 1000.0]
            flags.update({"bound_x": bound_x, "bound_y": samples})
            result = use_case.bound(kernel_name, lam, bound_x, samples)
        config = _run_config(adapters, "kernel", flags, output)
    except PrimePairsError as e:
        raise _fail(e)
    _emit("kernel", result, config, adapters)


@app.command()
def zerosum(
    op: Annotated[str, typer.Option("--op", help=" | ".join(ZERO_SUM_OPS))],
    s: Annotated[str, typer.Option("--s", help="s as <re>,<im>, 1/2 < re < 1")] = "0.75,0",
    lam: Annotated[float, typer.Option("--lambda", help="Dilation lambda > 0")] = 1.0,
    kernel_name: KernelName = "jackson",
    zeros_file: ZerosFile = None,
    cutoff: Annotated[Optional[float], typer.Option("--cutoff", help="Height T")] = None,
    count: Annotated[
        Optional[int], typer.Option("--count", min=1, help="Use the first n zeros")
    ] = None,
    delta: Annotated[Optional[float], typer.Option("--delta", help="delta of sigma4diff")] = None,
    deltas: Annotated[
        Optional[List[str]], typer.Option("--deltas", help="delta grid of omega")
    ] = None,
    output: str = _output_option("json"),
    threads: Threads = None,
    verbose: Verbose = False,
):
    """Sums over zeta zeros (Sigma^lambda_1..4, G^lambda, the omega probe, U^lambda_3)."""
    output = _check_output(output)
    point = _parse_point(s)
    grid = _split(deltas, _parse_float)
    adapters = _get_adapters(verbose, threads=threads)
    flags: Dict[str, Any] = {
        "op": op,
        "s": [point.real, point.imag],
        "lambda": lam,
        "kernel": kernel_name,
        "cutoff": cutoff,
        "count": count,
        "delta": delta,
        "deltas": grid,
    }
    try:
        flags.update(_zeros_flags(zeros_file, required=op != "u3"))
        config = _run_config(adapters, "zerosum", flags, output, zeros_file=zeros_file)
        use_case = ZeroSumUseCase(
            zeros_port=adapters["zeros"],
            metrics_port=adapters["metrics"],
            logger=adapters["logger"],
        )
        result = use_case.execute(
            op,
            zeros_file or "",
            point,
            lam,
            kernel_name=kernel_name,
            cutoff_height=cutoff,
            count=count,
            delta=delta,
            deltas=grid,
            threads=config.threads,
        )
    except PrimePairsError as e:
        raise _fail(e)
    _emit("zerosum", result, config, adapters, assumption=None if op == "u3" else ASSUMPTION)


@app.command()
def series(
    op: Annotated[str, typer.Option("--op", help=" | ".join(SERIES_OPS))],
    s: Annotated[str, typer.Option("--s", help="s as <re>,<im>, re > 1/2")] = "2,0",
    two_r: Annotated[int, typer.Option("--two-r", help="Even difference 2r")] = 2,
    lam: Annotated[float, typer.Option("--lambda", help="Dilation lambda > 0")] = 1.0,
    terms: Annotated[int, typer.Option("--terms", help="Truncation N")] = 1000,
    kernel_name: KernelName = "jackson",
    deltas: Annotated[
        Optional[List[str]], typer.Option("--deltas", help="delta grid of the probes")
    ] = None,
    strict: Annotated[
        bool, typer.Option("--strict", help="Capped truncation is an error")
    ] = False,
    output: str = _output_option("json"),
    threads: Threads = None,
    verbose: Verbose = False,
):
    """Truncated Dirichlet series over prime pairs and their pole/residue probes."""
    output = _check_output(output)
    point = _parse_point(s)
    grid = _split(deltas, _parse_float)
    adapters = _get_adapters(verbose, threads=threads)
    flags = {
        "op": op,
        "s": [point.real, point.imag],
        "two_r": two_r,
        "lambda": lam,
        "terms": terms,
        "kernel": kernel_name,
        "deltas": grid,
        "strict": strict,
    }
    try:
        config = _run_config(adapters, "series", flags, output)
        use_case = DirichletSeriesUseCase(
            tables=adapters["tables"], metrics_port=adapters["metrics"], logger=adapters["logger"]
        )
        result = use_case.execute(
            op,
            point,
            terms,
            two_r=two_r,
            lam=lam,
            kernel_name=kernel_name,
            deltas=grid,
            strict=strict,
            threads=config.threads,
        )
    except PrimePairsError as e:
        raise _fail(e)
    _emit("series", result, config, adapters)


@app.command()
def paircorr(
    alpha: Annotated[List[str], typer.Option("--alpha", help="alpha values, e.g. 0.5,1.0")],
    zeros_file: ZerosFile = None,
    count: Annotated[
        Optional[int], typer.Option("--count", min=2, help="Use the first n zeros")
    ] = None,
    height: Annotated[Optional[float], typer.Option("--height", help="Height T")] = None,
    output: str = _output_option("json"),
    threads: Threads = None,
    verbose: Verbose = False,
):
    """Montgomery pair correlation F_w(alpha, T) next to its predicted leading terms."""
    output = _check_output(output)
    alphas = _split(alpha, _parse_float)
    adapters = _get_adapters(verbose, threads=threads)
    flags: Dict[str, Any] = {"alpha": alphas, "count": count, "height": height}
    try:
        flags.update(_zeros_flags(zeros_file))
        config = _run_config(adapters, "paircorr", flags, output, zeros_file=zeros_file)
        use_case = PairCorrelationUseCase(
            zeros_port=adapters["zeros"],
            metrics_port=adapters["metrics"],
            logger=adapters["logger"].bind(op="paircorr"),
        )
        points = use_case.execute(zeros_file, alphas, count, height, config.threads)
    except PrimePairsError as e:
        raise _fail(e)
    _emit("paircorr", points, config, adapters, assumption=ASSUMPTION)


@app.command()
def verify(
    suite: Annotated[
        Optional[List[str]], typer.Option("--suite", help="Suite name(s); default all")
    ] = None,
    full: Annotated[bool, typer.Option("--full", help="Include the 10^8 column")] = False,
    zeros_file: ZerosFile = None,
    output: str = _output_option("json"),
    cache_dir: CacheDir = None,
    threads: Threads = None,
    verbose: Verbose = False,
):
    """Run the acceptance suites; exit status 1 when any check fails."""
    output = _check_output(output)
    suites = _split(suite, str.strip)
    adapters = _get_adapters(verbose, cache_dir, threads)
    logger = adapters["logger"].bind(op="verify")
    flags: Dict[str, Any] = {"suite": suites, "full": full}
    try:
        flags.update(_zeros_flags(zeros_file, required=False))
        config = _run_config(
            adapters, "verify", flags, output, cache_dir, zeros_file=zeros_file
        )
        count_pairs = CountPairsUseCase(
            tables=adapters["tables"],
            cache_port=adapters["cache"],
            metrics_port=adapters["metrics"],
            logger=logger,
        )
        use_case = VerifyUseCase(
            expectations_port=ExpectationsYamlAdapter(adapters["settings"].expectations_file),
            count_pairs=count_pairs,
            tables=adapters["tables"],
            zeros_port=adapters["zeros"],
            metrics_port=adapters["metrics"],
            logger=logger,
        )
        report = use_case.execute(suites or None, full, zeros_file, config.threads)
    except PrimePairsError as e:
        raise _fail(e)
    _emit("verify", report, config, adapters, assumption=ASSUMPTION if zeros_file else None)
    if not report.passed:
        for check in report.failed:
            typer.echo(
                f"✗ {check.suite}/{check.name}: {check.measured} != {check.expected}", err=True
            )
        raise typer.Exit(ExitCodePolicy.VERIFICATION_FAILED)


@app.command()
def schema():
    """Print the JSON schema every JSON output validates against."""
    typer.echo(json.dumps(RunOutput.model_json_schema(), indent=2))


if __name__ == "__main__":
    app()
