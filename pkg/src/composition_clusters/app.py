import logging
import os
import sys
from collections.abc import Callable
from typing import Literal

import click
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .analysis import GrowthError, MomentFitError, growth, moments, rank_patterns
from .analysis.normality import DEFAULT_LADDER
from .analysis.ranking import WORKERS
from .cluster import avoider_gf, explain_system, joint_gf
from .compositions import (
    ORACLE_GUARD,
    CompositionError,
    EnumerationGuardError,
    PatternParseError,
    PatternSet,
    oracle_avoider_count,
    oracle_joint_counts,
    parse_patterns,
)
from .polyrat import PolyratError, marker_names, series_coefficients
from .runner import get_reproduction, run_reproduction
from .spec import REPRODUCTION_REGISTRY
from .utils import dump_report

logger = logging.getLogger(__name__)

LOG_LEVEL = os.environ.get("COMPOSITION_CLUSTERS_LOG_LEVEL", "INFO").upper()

Command = Literal["gf", "series", "asym", "joint", "moments", "rank", "oracle", "explain", "reproduce"]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PATTERN_SET = 3
EXIT_GUARD = 4
EXIT_ENGINE = 5
EXIT_ANALYSIS = 6


class CliConfig(BaseModel):
    """Validated options of one CLI invocation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    command: Command
    patterns: PatternSet | None = None
    n: int = Field(default=30, ge=0)
    order: int = Field(default=6, ge=2)
    digits: int = Field(default=12, ge=1)
    max_sum: int = Field(default=6, ge=2)
    workers: int = Field(default=WORKERS, ge=1)
    oracle_guard: int = Field(default=ORACLE_GUARD, ge=0)
    ladder: tuple[int, ...] = DEFAULT_LADDER
    output_format: Literal["text", "json"] = "text"
    joint: bool = False
    ids: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_command_requirements(self) -> "CliConfig":
        if self.command not in ("rank", "reproduce") and self.patterns is None:
            raise ValueError(f"{self.command} requires --patterns")
        if self.command in ("moments", "explain") and self.patterns is not None and not len(self.patterns):
            raise ValueError(f"{self.command} needs at least one pattern")
        if any(rung < 1 for rung in self.ladder):
            raise ValueError("--ladder sizes must be positive")
        return self


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (PatternParseError, ValidationError)):
        return EXIT_USAGE
    if isinstance(exc, EnumerationGuardError):
        return EXIT_GUARD
    if isinstance(exc, CompositionError):
        return EXIT_PATTERN_SET
    if isinstance(exc, PolyratError):
        return EXIT_ENGINE
    if isinstance(exc, (MomentFitError, GrowthError)):
        return EXIT_ANALYSIS
    return EXIT_FAILURE


def _message(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        parts = []
        for error in exc.errors():
            text = error["msg"].removeprefix("Value error, ")
            location = ".".join(str(part) for part in error["loc"])
            parts.append(f"{location}: {text}" if location else text)
        return "; ".join(parts)
    return getattr(exc, "message", None) or str(exc)


def _execute(build: Callable[[], CliConfig], action: Callable[[CliConfig], tuple[dict, str]]) -> None:
    """Validate the config, run the command and print its report; exit with the mapped code on failure."""
    try:
        config = build()
        payload, text = action(config)
    except Exception as exc:
        logger.debug("Command failed", exc_info=True)
        click.echo(f"error: {_message(exc)}", err=True)
        sys.exit(_exit_code(exc))
    if config.output_format == "json":
        click.echo(dump_report(config.command, payload))
    else:
        click.echo(text)


def _output(as_json: bool) -> str:
    return "json" if as_json else "text"


def _patterns(text: str | None) -> PatternSet | None:
    # parsed outside the model so parse errors keep their own type and position
    return None if text is None else parse_patterns(text)


def shared_options(func):
    func = click.option("--patterns", "patterns_text", help='Pattern set, e.g. "2,3,4;4,3,2"')(func)
    func = click.option("--json", "as_json", is_flag=True, help="Emit the JSON report")(func)
    return func


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level")
def main(verbose: bool):
    """Exact enumeration of compositions avoiding sub-composition patterns."""
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s", stream=sys.stderr)


@main.command()
@shared_options
def gf(patterns_text: str | None, as_json: bool):
    """Generating function F(x) of the avoiders."""

    def action(config: CliConfig):
        result = avoider_gf(config.patterns)
        payload = {"patterns": str(config.patterns), **result.to_dict(), "text": result.F.render()}
        return payload, f"F(x) = {result.F}"

    _execute(
        lambda: CliConfig(command="gf", patterns=_patterns(patterns_text), output_format=_output(as_json)),
        action,
    )


@main.command()
@shared_options
@click.option("--n", "n", type=int, default=30, show_default=True, help="Last index of the series")
def series(patterns_text: str | None, as_json: bool, n: int):
    """Series coefficients a(0..n)."""

    def action(config: CliConfig):
        terms = series_coefficients(avoider_gf(config.patterns).F, config.n).as_integers()
        payload = {"patterns": str(config.patterns), "n": str(config.n), "terms": [str(a) for a in terms]}
        return payload, ", ".join(str(a) for a in terms)

    _execute(
        lambda: CliConfig(
            command="series", patterns=_patterns(patterns_text), n=n, output_format=_output(as_json)
        ),
        action,
    )


@main.command()
@shared_options
@click.option("--digits", type=int, default=12, show_default=True, help="Significant digits")
def asym(patterns_text: str | None, as_json: bool, digits: int):
    """Growth constant lambda and amplitude C with a(n) ~ C * lambda^n."""

    def action(config: CliConfig):
        estimate = growth(config.patterns, config.digits)
        lines = [f"lambda = {estimate.rate}"]
        if estimate.subexponential:
            lines.append("subexponential growth (denominator vanishes at x = 1)")
        elif estimate.amplitude is not None:
            lines.append(f"C = {estimate.amplitude}")
        if estimate.dominant is False:
            lines.append("warning: the dominance check failed; lambda may not be the growth rate")
        return {"patterns": str(config.patterns), "growth": estimate.to_dict()}, "\n".join(lines)

    _execute(
        lambda: CliConfig(
            command="asym", patterns=_patterns(patterns_text), digits=digits, output_format=_output(as_json)
        ),
        action,
    )


@main.command()
@shared_options
@click.option("--text", "as_text", is_flag=True, help="Render the fraction as text instead of JSON")
def joint(patterns_text: str | None, as_json: bool, as_text: bool):
    """Joint generating function F(x; X1..Xr); Xi marks occurrences of the i-th pattern."""

    def action(config: CliConfig):
        F = joint_gf(config.patterns)
        markers = dict(zip(marker_names(len(config.patterns)), (p.label for p in config.patterns)))
        payload = {"patterns": str(config.patterns), "markers": markers, "F": F.to_json()}
        return payload, f"F(x; {', '.join(markers)}) = {F}"

    _execute(
        lambda: CliConfig(
            command="joint", patterns=_patterns(patterns_text), output_format=_output(as_json or not as_text)
        ),
        action,
    )


@main.command(name="moments")
@shared_options
@click.option("--order", type=int, default=6, show_default=True, help="Highest moment order")
@click.option("--ladder", type=int, multiple=True, help="Sizes n for the normality table (repeatable)")
def moments_command(patterns_text: str | None, as_json: bool, order: int, ladder: tuple[int, ...]):
    """Expectation, variance, covariance and correlation of occurrence counts."""

    def action(config: CliConfig):
        report = moments(config.patterns, config.order, ladder=config.ladder)
        return report.to_dict(), report.render()

    _execute(
        lambda: CliConfig(
            command="moments",
            patterns=_patterns(patterns_text),
            order=order,
            ladder=ladder or DEFAULT_LADDER,
            output_format=_output(as_json),
        ),
        action,
    )


@main.command()
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report")
@click.option("--max-sum", type=int, default=6, show_default=True, help="Largest pattern sum")
@click.option("--digits", type=int, default=12, show_default=True, help="Significant digits")
@click.option("--workers", type=int, default=None, help="Worker threads (default: COMPOSITION_CLUSTERS_WORKERS)")
def rank(as_json: bool, max_sum: int, digits: int, workers: int | None):
    """Growth constants of all single patterns up to a given sum."""

    def action(config: CliConfig):
        table = rank_patterns(config.max_sum, config.digits, config.workers)
        return table.to_dict(), table.render()

    _execute(
        lambda: CliConfig(
            command="rank",
            max_sum=max_sum,
            digits=digits,
            workers=WORKERS if workers is None else workers,
            output_format=_output(as_json),
        ),
        action,
    )


@main.command()
@shared_options
@click.option("--n", "n", type=int, required=True, help="Composition size (at most the oracle guard)")
@click.option("--joint", "with_joint", is_flag=True, help="Count by occurrence vector instead")
@click.option(
    "--oracle-guard", type=int, default=None, help="Largest n enumerated (default: COMPOSITION_CLUSTERS_ORACLE_GUARD)"
)
def oracle(patterns_text: str | None, as_json: bool, n: int, with_joint: bool, oracle_guard: int | None):
    """Brute-force count of compositions of n, for cross-checking the engine."""

    def action(config: CliConfig):
        payload = {"patterns": str(config.patterns), "n": str(config.n)}
        if config.joint:
            counts = oracle_joint_counts(config.n, config.patterns, config.oracle_guard)
            rows = sorted(counts.items(), key=lambda item: item[0].counts)
            payload["joint"] = {str(vector): str(count) for vector, count in rows}
            return payload, "\n".join(f"{vector}: {count}" for vector, count in rows)
        count = oracle_avoider_count(config.n, config.patterns, config.oracle_guard)
        payload["count"] = str(count)
        return payload, str(count)

    _execute(
        lambda: CliConfig(
            command="oracle",
            patterns=_patterns(patterns_text),
            n=n,
            joint=with_joint,
            oracle_guard=ORACLE_GUARD if oracle_guard is None else oracle_guard,
            output_format=_output(as_json),
        ),
        action,
    )


@main.command()
@shared_options
def explain(patterns_text: str | None, as_json: bool):
    """Walk through the cluster system: states, equations, solutions, G and F."""

    def action(config: CliConfig):
        report = explain_system(config.patterns)
        return report.to_dict(), report.render()

    _execute(
        lambda: CliConfig(command="explain", patterns=_patterns(patterns_text), output_format=_output(as_json)),
        action,
    )


@main.command()
@click.argument("ids", nargs=-1)
@click.option("--json", "as_json", is_flag=True, help="Emit the JSON report")
@click.option("--workers", type=int, default=None, help="Worker threads for the ranking reproduction")
def reproduce(ids: tuple[str, ...], as_json: bool, workers: int | None):
    """Check registered published results; all of them when no ID is given."""
    try:
        config = CliConfig(
            command="reproduce",
            ids=ids,
            workers=WORKERS if workers is None else workers,
            output_format=_output(as_json),
        )
        specs = [get_reproduction(i) for i in config.ids] if config.ids else list(REPRODUCTION_REGISTRY)
    except (ValidationError, KeyError) as exc:
        click.echo(f"error: {_message(exc) if isinstance(exc, ValidationError) else exc.args[0]}", err=True)
        sys.exit(EXIT_USAGE)

    entries, lines = [], []
    for spec in specs:
        try:
            outcome = run_reproduction(spec, config.workers)
        except Exception as exc:
            click.echo(f"error: {spec.id}: {_message(exc)}", err=True)
            sys.exit(_exit_code(exc))
        entries.append({"id": spec.id, "passed": outcome.passed, "checks": outcome.checks})
        failed = [name for name, ok in outcome.checks.items() if not ok]
        lines.append(f"{spec.id}: {'ok' if outcome.passed else 'FAILED (' + ', '.join(failed) + ')'}")

    if config.output_format == "json":
        click.echo(dump_report("reproduce", {"reproductions": entries}))
    else:
        click.echo("\n".join(lines))
    sys.exit(EXIT_OK if all(entry["passed"] for entry in entries) else EXIT_FAILURE)


def run(argv: list[str] | None = None) -> int:
    """Invoke the CLI in-process and return its exit code instead of exiting."""
    try:
        main.main(args=argv, prog_name="composition-clusters", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return EXIT_FAILURE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_FAILURE
    return EXIT_OK
