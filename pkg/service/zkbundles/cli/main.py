"""
Command line front-end: `python -m zkbundles.cli.main <command>`.

Exit codes: 0 success, 2 parse or usage error, 3 canonical window violation, 4 stabilisation
failure. Failed scan points or selftest checks exit with 1.
"""

import functools
import json
import logging
from dataclasses import replace
from fractions import Fraction
from typing import Callable, List, Optional

import click

from zkbundles.bundle.bundle_spec import BundleSpec, embed_phi
from zkbundles.cli.selftest import run_selftest
from zkbundles.config.env_config import EnvConfig
from zkbundles.errors import (
    CanonicalWindowError,
    PolynomialParseError,
    StabilisationError,
    UsageError,
)
from zkbundles.moduli.balance import balance, validate_admissible
from zkbundles.moduli.bounds import Bounds
from zkbundles.moduli.invariants import EngineSettings, invariants
from zkbundles.moduli.reports import (
    FORMATS,
    render_bounds,
    render_report,
    render_sequence,
    render_table,
)
from zkbundles.moduli.scan import scan_strata
from zkbundles.utils.utils import init_logging, version_string
from zkbundles.width.duals import presentation_dump

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_WINDOW = 3
EXIT_STABILISATION = 4

_format_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True
)
_k_option = click.option("--k", "k", type=int, required=True, help="Self-intersection -k of l.")
_j_option = click.option("--j", "j", type=int, required=True, help="Splitting type (j, -j).")
_p_option = click.option(
    "--p", "p", default="0", show_default=True, help='Extension class, e.g. "z^-1*u + z^4*u^2".'
)


def _handle_errors(command: Callable) -> Callable:
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (PolynomialParseError, UsageError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_USAGE)
        except CanonicalWindowError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_WINDOW)
        except StabilisationError as exc:
            logger.error(f"Stabilisation failure: {exc}")
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_STABILISATION)

    return wrapper


def _settings(ctx: click.Context, window_scale: Optional[int] = None) -> EngineSettings:
    settings: EngineSettings = ctx.obj["settings"]
    if window_scale is not None:
        settings = replace(settings, window_scale=window_scale)
    return settings


def _parse_list(text: str, what: str, convert: Callable) -> List:
    try:
        return [convert(item.strip()) for item in text.split(",") if item.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"Malformed {what}: {text!r}")


@click.group()
@click.version_option(version=version_string(), message="%(version)s")
@click.pass_context
def cli(ctx: click.Context):
    config = EnvConfig()
    try:
        init_logging(config=config)
        settings = EngineSettings.from_config(config)
    except (ValueError, UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        raise SystemExit(EXIT_USAGE)
    ctx.obj = {"settings": settings}


@cli.command("invariants")
@_k_option
@_j_option
@_p_option
@_format_option
@click.option("--window-scale", type=int, default=None, help="Height enumeration window multiplier.")
@click.option("--dump-presentations", is_flag=True, help="Print module presentations as JSON; p must have a single u-degree.")
@click.pass_context
@_handle_errors
def cmd_invariants(
    ctx: click.Context,
    k: int,
    j: int,
    p: str,
    fmt: str,
    window_scale: Optional[int],
    dump_presentations: bool,
):
    b = BundleSpec.parse(k, j, p)
    dump = presentation_dump(b) if dump_presentations else None
    report = invariants(b, _settings(ctx, window_scale))
    click.echo(render_report(report, fmt), nl=False)
    if dump is not None:
        click.echo(dump.to_json(indent=2))


@cli.command("scan")
@_k_option
@_j_option
@click.option("--coeffs", default="0,1", show_default=True, help="Comma separated coefficient set.")
@click.option("--max-terms", type=int, default=None, help="Largest number of nonzero coefficients.")
@click.option("--max-points", type=int, default=None, help="Grid size limit.")
@click.option("--workers", type=int, default=None, help="Worker processes.")
@click.option("--window-scale", type=int, default=None, help="Height enumeration window multiplier.")
@_format_option
@click.pass_context
@_handle_errors
def cmd_scan(
    ctx: click.Context,
    k: int,
    j: int,
    coeffs: str,
    max_terms: Optional[int],
    max_points: Optional[int],
    workers: Optional[int],
    window_scale: Optional[int],
    fmt: str,
):
    settings = _settings(ctx, window_scale)
    if workers is not None:
        settings = replace(settings, scan_worker_count=workers)
    coefficients = _parse_list(coeffs, "coefficient set", Fraction)
    table = scan_strata(k, j, coefficients, max_terms, settings, max_points)
    click.echo(render_table(table, fmt), nl=False)
    if not table.ok:
        raise SystemExit(EXIT_FAILURE)


@cli.command("balance")
@_k_option
@click.option("--type", "splitting_type", required=True, help="Nonincreasing splitting type, e.g. 3,-3.")
@_format_option
@_handle_errors
def cmd_balance(k: int, splitting_type: str, fmt: str):
    degrees = _parse_list(splitting_type, "splitting type", int)
    seq = balance(k, degrees)
    violations = validate_admissible(seq, k, degrees)
    if violations:
        raise StabilisationError(f"Balancing produced an inadmissible sequence: {violations}")
    click.echo(render_sequence(seq, fmt), nl=False)


@cli.command("bounds")
@_k_option
@_j_option
@_format_option
@_handle_errors
def cmd_bounds(k: int, j: int, fmt: str):
    if k < 1 or j < 1:
        raise UsageError(f"Bounds need k >= 1 and j >= 1, got k={k}, j={j}")
    click.echo(render_bounds(k, j, Bounds.of(k, j), fmt), nl=False)


@cli.command("embed")
@_k_option
@_j_option
@_p_option
@click.option("--invariants", "with_invariants", is_flag=True, help="Also report the image's invariants.")
@_format_option
@click.pass_context
@_handle_errors
def cmd_embed(ctx: click.Context, k: int, j: int, p: str, with_invariants: bool, fmt: str):
    image = embed_phi(BundleSpec.parse(k, j, p))
    if fmt == "json":
        data = image.to_record().to_dict()
        if with_invariants:
            data["invariants"] = invariants(image, _settings(ctx)).to_dict()
        click.echo(json.dumps(data, indent=2))
        return
    click.echo(image.describe())
    if with_invariants:
        click.echo(render_report(invariants(image, _settings(ctx)), fmt), nl=False)


@cli.command("selftest")
@_format_option
@click.pass_context
def cmd_selftest(ctx: click.Context, fmt: str):
    results = run_selftest(_settings(ctx))
    if fmt == "json":
        click.echo(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            status = "ok" if r.passed else f"FAILED (expected {r.expected}, got {r.actual})"
            click.echo(f"{r.name}: {status}")
        passed = sum(1 for r in results if r.passed)
        click.echo(f"{passed}/{len(results)} passed")
    if not all(r.passed for r in results):
        raise SystemExit(EXIT_FAILURE)


if __name__ == "__main__":
    cli()
