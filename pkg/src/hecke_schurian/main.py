"""
Command-line front end for hecke-schurian.

Text output goes through rich; ``--json`` payloads are written to stdout with
plain ``click.echo`` so they stay machine-readable. Logging goes to stderr.
Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import functools
import json
import sys
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TypeVar

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from . import __version__
from .algebra.column_cache import ColumnCache, get_column_cache
from .algebra.fock import decomp_submatrix
from .algebra.jantzen import jantzen_coeffs, jantzen_zero_deduction
from .algebra.laurent import LaurentPoly
from .certify.certificate import Certificate, Verdict, certify_block, replay
from .certify.sweep import sweep as run_sweep
from .certify.targets import TARGETS
from .config import bind_context, configure_logging, get_settings, log_error
from .core.abacus import (
    AbacusDisplay,
    BlockId,
    canonical_bead_count,
    core_and_weight,
    core_bead_counts,
    format_quotient,
    from_quotient,
    parse_multipartition,
    quotient,
    runner_positions,
)
from .core.partitions import Partition, parse_partition, parse_partition_list
from .core.scopes import (
    ScopesClass,
    class_of_block,
    conjugate_class,
    is_rouquier,
    normalize_class,
    scopes_path,
    transport,
)
from .utils.error_handling import (
    CacheError,
    CertificateError,
    HeckeError,
    PartitionError,
    QuantumCharacteristicError,
    format_error_for_user,
    handle_errors,
)

console = Console()
err_console = Console(stderr=True)

F = TypeVar("F", bound=Callable[..., Any])


@dataclass
class CliState:
    cache: ColumnCache
    runner_reduction: bool


class PartitionParam(click.ParamType):
    name = "partition"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> Partition:
        if isinstance(value, Partition):
            return value
        try:
            return parse_partition(value)
        except PartitionError as e:
            self.fail(e.message, param, ctx)


class PartitionListParam(click.ParamType):
    name = "partitions"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> list[Partition]:
        if isinstance(value, list):
            return value
        try:
            rows = parse_partition_list(value)
        except PartitionError as e:
            self.fail(e.message, param, ctx)
        if not rows:
            self.fail("at least one partition is required", param, ctx)
        return rows


PARTITION = PartitionParam()
PARTITIONS = PartitionListParam()


def report_error(error: HeckeError, operation: str) -> None:
    log_error(error, operation=operation, details=error.details)
    err_console.print(f"[red]{escape(format_error_for_user(error))}[/red]", highlight=False)


def domain_errors(func: F) -> F:
    """Report HeckeError without a traceback and exit with status 1."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except HeckeError as e:
            report_error(e, operation=func.__name__)
            sys.exit(1)

    return wrapper  # type: ignore[return-value]


def emit_json(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def resolve_block(e: int, weight: int, core: Partition | None, class_text: str | None) -> BlockId:
    if (core is None) == (class_text is None):
        raise click.UsageError("give exactly one of --core and --class")
    if class_text is not None:
        try:
            cls = ScopesClass.parse(class_text, weight)
        except PartitionError as err:
            raise click.BadParameter(err.message, param_hint="--class") from err
        if cls.e != e:
            raise click.BadParameter(
                f"class {class_text} has {cls.e} entries but --e is {e}", param_hint="--class"
            )
        return cls.block()
    assert core is not None
    return BlockId(e=e, core=core, weight=weight)


def poly_text(poly: LaurentPoly) -> str:
    return str(poly) if poly else "·"


def matrix_table(
    title: str, rows: list[Partition], columns: list[Partition], matrix: list[list[Any]]
) -> Table:
    table = Table(title=title)
    table.add_column("λ \\ μ", style="cyan")
    for mu in columns:
        table.add_column(str(mu), justify="center")
    for lam, entries in zip(rows, matrix, strict=True):
        table.add_row(str(lam), *entries)
    return table


def check_quantum_characteristic(
    ctx: click.Context, param: click.Parameter, value: int | None
) -> int | None:
    """Reject e < 3 as a domain error (exit 1) before the command runs."""
    if value is not None and value < 3:
        report_error(QuantumCharacteristicError(value), operation=ctx.info_name or "cli")
        ctx.exit(1)
    return value


e_option = click.option(
    "--e",
    "e",
    type=int,
    required=True,
    callback=check_quantum_characteristic,
    help="Quantum characteristic e (at least 3)",
)
weight_option = click.option("--weight", "-w", type=int, required=True, help="Block weight")
core_option = click.option("--core", type=PARTITION, default=None, help='e-core, e.g. "5,2,2"')
class_option = click.option("--class", "class_text", default=None, help='Scopes class, e.g. "[1,4,7]"')
json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON on stdout")


@click.group()
@click.version_option(version=__version__, prog_name="hecke-schurian")
@click.option("--debug", is_flag=True, help="Enable debug mode with verbose logging")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default=None,
    help="Override the configured log level",
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also write log records to this rotating file (overrides HECKE_LOG_FILE)",
)
@click.option(
    "--cache-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory of the LLT column cache (overrides HECKE_CACHE_DIR)",
)
@click.option(
    "--enable-runner-reduction",
    is_flag=True,
    help="Shrink e by runner deletion before LLT (verified against the direct result)",
)
@click.pass_context
def cli(
    ctx: click.Context,
    debug: bool,
    log_level: str | None,
    log_file: Path | None,
    cache_dir: Path | None,
    enable_runner_reduction: bool,
) -> None:
    """
    Hecke Schurian - abacus combinatorics, LLT decomposition numbers and
    Schurian-infiniteness certificates for Hecke algebra blocks.
    """
    configure_logging(log_level=log_level, debug=debug or None, log_file=log_file)
    settings = get_settings()
    if cache_dir is not None:
        cache = ColumnCache(
            path=cache_dir.expanduser() / settings.cache_file.name,
            persist=settings.persist_cache,
            lock_timeout=settings.lock_timeout,
        )
    else:
        cache = get_column_cache()
    runner_reduction = enable_runner_reduction or settings.enable_runner_reduction
    ctx.obj = CliState(cache=cache, runner_reduction=runner_reduction)
    ctx.call_on_close(cache.flush)
    bind_context(command=ctx.invoked_subcommand)


@cli.command()
@e_option
@click.argument("partition", type=PARTITION)
@click.option("--beads", "-r", type=int, default=None, help="Number of beads (default: canonical frame)")
@json_option
@domain_errors
def abacus(e: int, partition: Partition, beads: int | None, as_json: bool) -> None:
    """Render the abacus display of PARTITION."""
    display = AbacusDisplay.of(partition, e, beads)
    if as_json:
        emit_json(
            {
                "partition": list(partition),
                "e": e,
                "bead_count": display.bead_count,
                "runners": [list(levels) for levels in display.runners],
                "display": display.render(),
            }
        )
        return
    console.print(f"[bold]{partition}[/bold] at e={e}, {display.bead_count} beads")
    console.print(display.render(), highlight=False)


@cli.command("block-info")
@e_option
@weight_option
@core_option
@class_option
@json_option
@domain_errors
def block_info(
    e: int, weight: int, core: Partition | None, class_text: str | None, as_json: bool
) -> None:
    """Core, runner positions and Scopes class data of a block."""
    block = resolve_block(e, weight, core, class_text)
    r = canonical_bead_count(block.core, e)
    normalized = normalize_class(block)
    info = {
        "e": e,
        "core": list(block.core),
        "weight": block.weight,
        "size": block.size,
        "bead_count": r,
        "runner_positions": list(runner_positions(block.core, e, r)),
        "bead_counts": list(core_bead_counts(block.core, e, r)),
        "class": str(class_of_block(block)),
        "normalized_class": str(normalized),
        "conjugate_class": str(conjugate_class(normalized)),
        "rouquier": is_rouquier(block),
    }
    if as_json:
        emit_json(info)
        return
    table = Table(title=str(block), show_header=False)
    table.add_column("field", style="cyan")
    table.add_column("value")
    for key, value in info.items():
        table.add_row(key.replace("_", " "), str(value))
    console.print(table)


@cli.command("quotient")
@e_option
@click.argument("partition", type=PARTITION, required=False)
@core_option
@click.option("--components", default=None, help='Quotient as "1|2,1||" (with --core)')
@json_option
@domain_errors
def quotient_command(
    e: int,
    partition: Partition | None,
    core: Partition | None,
    components: str | None,
    as_json: bool,
) -> None:
    """Core, weight and e-quotient of PARTITION, or the partition of --core/--components."""
    if partition is None:
        if core is None or components is None:
            raise click.UsageError("give PARTITION, or both --core and --components")
        try:
            parts = parse_multipartition(components, e)
        except PartitionError as err:
            raise click.BadParameter(err.message, param_hint="--components") from err
        partition = from_quotient(core, parts, e)
    block_core, weight = core_and_weight(partition, e)
    parts = quotient(partition, e)
    if as_json:
        emit_json(
            {
                "partition": list(partition),
                "e": e,
                "core": list(block_core),
                "weight": weight,
                "quotient": [list(c) for c in parts],
            }
        )
        return
    console.print(f"partition  {partition}", highlight=False)
    console.print(f"core       {block_core}", highlight=False)
    console.print(f"weight     {weight}", highlight=False)
    console.print(f"quotient   {format_quotient(parts)}", highlight=False)


@cli.command("scopes-normalize")
@e_option
@weight_option
@core_option
@class_option
@click.option("--rows", type=PARTITIONS, default=None, help="Partitions to carry along, ';'-separated")
@json_option
@domain_errors
def scopes_normalize(
    e: int,
    weight: int,
    core: Partition | None,
    class_text: str | None,
    rows: list[Partition] | None,
    as_json: bool,
) -> None:
    """Normalize a block's Scopes class, optionally transporting partitions."""
    block = resolve_block(e, weight, core, class_text)
    path = scopes_path(block)
    moved = [transport(lam, e, path) for lam in rows] if rows else []
    payload = {
        "class": str(class_of_block(block)),
        "normalized_class": str(normalize_class(block)),
        "moves": [list(move) for move in path],
        "rows": [[list(lam), list(mu)] for lam, mu in zip(rows or [], moved, strict=True)],
    }
    if as_json:
        emit_json(payload)
        return
    console.print(f"{payload['class']} → [bold]{payload['normalized_class']}[/bold]", highlight=False)
    for i, r in path:
        console.print(f"  swap runners {i - 1},{i} with {r} beads", highlight=False)
    for lam, mu in zip(rows or [], moved, strict=True):
        console.print(f"  {lam} ↦ {mu}", highlight=False)


@cli.command()
@e_option
@click.option("--rows", type=PARTITIONS, required=True, help='Row partitions, e.g. "7,1;6,2"')
@click.option("--columns", type=PARTITIONS, default=None, help="Column partitions (default: the rows)")
@json_option
@click.pass_obj
@domain_errors
def decomp(
    state: CliState,
    e: int,
    rows: list[Partition],
    columns: list[Partition] | None,
    as_json: bool,
) -> None:
    """Graded characteristic-0 decomposition numbers d_{λμ}(v) via LLT."""
    matrix = decomp_submatrix(rows, e, columns=columns, cache=state.cache)
    columns = columns or rows
    matches = [
        target.name.value
        for target in TARGETS.values()
        if columns == rows and target.match(matrix) is not None
    ]
    if as_json:
        emit_json(
            {
                "e": e,
                "rows": [list(lam) for lam in rows],
                "columns": [list(mu) for mu in columns],
                "matrix": [[c.to_dict() for c in row] for row in matrix],
                "target": matches[0] if matches else None,
            }
        )
        return
    entries = [[poly_text(c) for c in row] for row in matrix]
    console.print(matrix_table(f"d_λμ(v) at e={e}", rows, columns, entries))
    if matches:
        console.print(f"[green]✓ equals {TARGETS[matches[0]]}[/green]")


@cli.command()
@e_option
@click.option("--p", "p", type=int, required=True, help="Characteristic of the field")
@click.argument("partition", type=PARTITION)
@click.option("--mu", type=PARTITION, default=None, help="Check d_{λμ}(1) = 0 against this column")
@json_option
@domain_errors
def jantzen(e: int, p: int, partition: Partition, mu: Partition | None, as_json: bool) -> None:
    """Jantzen sum formula coefficients J_{λσ} of PARTITION."""
    row = jantzen_coeffs(partition, e, p)
    token = jantzen_zero_deduction(partition, mu, e, p) if mu is not None else None
    if as_json:
        payload = row.to_dict()
        if mu is not None:
            payload["zero_deduction"] = token.to_dict() if token else None
        emit_json(payload)
        return
    table = Table(title=f"J_λσ for λ = {partition}, e={e}, p={p}")
    table.add_column("σ", style="cyan")
    table.add_column("J", justify="right")
    for sigma in row.support():
        table.add_row(str(sigma), str(row.coefficient(sigma)))
    console.print(table)
    if mu is not None:
        if token is not None:
            console.print(f"[green]✓ d_{{λμ}}(1) = 0 for μ = {mu}[/green]")
        else:
            console.print(f"[yellow]no conclusion for μ = {mu}[/yellow]")


def print_certificate(cert: Certificate) -> None:
    colour = "green" if cert.verdict is Verdict.SCHURIAN_INFINITE else "yellow"
    console.print(
        f"[{colour}]{cert.verdict.value}[/{colour}]  e={cert.e} p={cert.p} "
        f"class {cert.scopes_class} weight {cert.block.weight}",
        highlight=False,
    )
    console.print(f"route       {cert.route}", highlight=False)
    console.print(f"witness     {cert.witness.get('construction')} ({cert.witness.get('citation')})", highlight=False)
    if cert.partitions:
        rows = cert.rows
        entries = [[poly_text(c) for c in row] for row in cert.char0_matrix()]
        console.print(matrix_table("characteristic 0", rows, rows, entries))
        if cert.evidence.get("matrix"):
            values = [
                [str(k["lower"]) if k["lower"] == k["upper"] else "?" for k in row]
                for row in cert.evidence["matrix"]
            ]
            console.print(matrix_table(f"characteristic {cert.p} at v=1", rows, rows, values))
    for anchor in cert.assumptions:
        console.print(f"[dim]assumes {escape(anchor)}[/dim]", highlight=False)
    if cert.diagnostic:
        console.print(f"[yellow]{escape(cert.diagnostic)}[/yellow]", highlight=False)


@cli.command()
@click.option(
    "--e",
    "e",
    type=int,
    default=None,
    callback=check_quantum_characteristic,
    help="Quantum characteristic e (at least 3)",
)
@click.option("--p", "p", type=int, default=None, help="Characteristic of the field")
@click.option("--weight", "-w", type=int, default=None, help="Block weight")
@core_option
@class_option
@click.option("--purist", is_flag=True, help="Reject certificates that rest on external results")
@click.option(
    "--replay",
    "replay_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Recompute a saved certificate instead of certifying",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
@json_option
@click.pass_obj
@domain_errors
@handle_errors(CertificateError)
def certify(
    state: CliState,
    e: int | None,
    p: int | None,
    weight: int | None,
    core: Partition | None,
    class_text: str | None,
    purist: bool,
    replay_path: Path | None,
    output: Path | None,
    as_json: bool,
) -> None:
    """Certify a block Schurian-infinite, or replay a saved certificate."""
    if replay_path is not None:
        cert = Certificate.load(replay_path)
        problems = replay(cert)
        if as_json:
            emit_json({"certificate": str(replay_path), "ok": not problems, "problems": problems})
        elif problems:
            for problem in problems:
                err_console.print(f"[red]✗ {escape(problem)}[/red]", highlight=False)
        else:
            console.print(f"[green]✓ {replay_path} replays ({cert.verdict.value})[/green]")
        if problems:
            sys.exit(1)
        return

    if e is None or p is None or weight is None:
        raise click.UsageError("certify needs --e, --p and --weight (or --replay FILE)")
    bind_context(command="certify", e=e, p=p)
    block = resolve_block(e, weight, core, class_text)
    cert = certify_block(
        e, p, block, cache=state.cache, purist=purist, runner_reduction=state.runner_reduction
    )
    if output is not None:
        cert.save(output)
    if as_json:
        click.echo(cert.to_json())
    else:
        print_certificate(cert)
        if output is not None:
            console.print(f"[green]✓ Certificate saved to {output}[/green]")


@cli.command()
@e_option
@click.option("--p", "p", type=int, required=True, help="Characteristic of the field")
@weight_option
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads")
@click.option("--purist", is_flag=True, help="Reject certificates that rest on external results")
@json_option
@click.pass_obj
@domain_errors
def sweep(
    state: CliState,
    e: int,
    p: int,
    weight: int,
    threads: int | None,
    purist: bool,
    as_json: bool,
) -> None:
    """Certify every normalized Scopes class of weight WEIGHT."""
    bind_context(command="sweep", e=e, p=p)
    result = run_sweep(e, p, weight, max_workers=threads, cache=state.cache, purist=purist)
    if as_json:
        emit_json(
            {
                "summary": result.summary(),
                "certificates": [c.to_dict() for c in result.certificates],
            }
        )
        return
    table = Table(title=f"e={e}, p={p}, weight {weight}")
    table.add_column("class", style="cyan")
    table.add_column("route")
    table.add_column("target")
    table.add_column("verdict")
    for cert in result.certificates:
        verdict = cert.verdict.value
        if cert.verdict is Verdict.SCHURIAN_INFINITE:
            verdict = f"[green]{verdict}[/green]"
        else:
            verdict = f"[yellow]{verdict}[/yellow]"
        table.add_row(cert.scopes_class, cert.route, cert.target.value if cert.target else "-", verdict)
    console.print(table)
    summary = result.summary()
    console.print(
        ", ".join(f"{count} {name}" for name, count in summary["verdicts"].items()),
        highlight=False,
    )


@cli.group()
def cache() -> None:
    """Inspect or reset the LLT column cache."""


@cache.command()
@json_option
@click.pass_obj
@domain_errors
def stats(state: CliState, as_json: bool) -> None:
    """Columns held per e and file size."""
    data = state.cache.stats()
    if as_json:
        emit_json(data)
        return
    table = Table(title="LLT column cache", show_header=False)
    table.add_column("field", style="cyan")
    table.add_column("value")
    for key, value in data.items():
        table.add_row(key.replace("_", " "), str(value))
    console.print(table)


@cache.command()
@click.option("--yes", is_flag=True, help="Do not ask for confirmation")
@click.pass_obj
@domain_errors
@handle_errors(CacheError, user_message="Could not remove the column cache file")
def clear(state: CliState, yes: bool) -> None:
    """Drop every stored column."""
    if not yes:
        click.confirm("Delete all cached LLT columns?", abort=True)
    dropped = state.cache.clear()
    console.print(f"[green]✓ Dropped {dropped} columns[/green]")


@cache.command()
@json_option
@click.pass_obj
@domain_errors
def verify(state: CliState, as_json: bool) -> None:
    """Re-check unitriangularity and positivity of every stored column."""
    bad = state.cache.verify()
    if as_json:
        emit_json(
            {
                "checked": len(state.cache),
                "bad": [
                    {"e": key[0], "convention": key[1], "mu": list(key[2]), "problems": problems}
                    for key, problems in bad.items()
                ],
            }
        )
    elif bad:
        for key, problems in bad.items():
            err_console.print(f"[red]✗ e={key[0]} μ={key[2]}: {escape('; '.join(problems))}[/red]", highlight=False)
    else:
        console.print(f"[green]✓ {len(state.cache)} columns verified[/green]")
    if bad:
        sys.exit(1)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
