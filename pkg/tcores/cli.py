"""
Command-line front end.

Every subcommand builds a validated :class:`CliConfig` and hands it to
:func:`run`, which prints one JSON document on stdout (or CSV where asked).
Failures print exactly one ``error: <kind>: <message>`` line on stderr and
exit with 2 (validation) or 1 (budget / runtime).
"""
from __future__ import annotations

import json
import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

import rich_click as click
from click.exceptions import Abort, UsageError
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as ConfigValidationError

from tcores import __version__
from tcores.abacus import core_descriptor, core_size, t_core_fast, t_quotient, to_abacus
from tcores.coredist import (
    core_probability,
    enumerate_with_core,
    exact_core_size_distribution,
    expected_core_size,
    fixed_core_count,
    fixed_core_genfun,
    runner_sizes,
)
from tcores.counting import (
    asymptotic_constant_exact,
    count_t_cores,
    count_t_cores_exact_frame,
    count_t_cores_large_s,
    goddard_integral,
    swanepoel_check,
)
from tcores.exceptions import BudgetExceededError, TCoresError, ValidationError
from tcores.montecarlo import (
    distribution_histogram,
    gamma_fit_report,
    gamma_params,
    histogram,
    pgf_large_s,
    sample_core_sizes,
)
from tcores.partition_core import Box, Partition
from tcores.utils.config import get_settings
from tcores.utils.serialization import format_rational, parse_rational
from tcores.utils.utils import configure_logging, get_logger

logger = get_logger()

click.rich_click.SHOW_ARGUMENTS = True
click.rich_click.GROUP_ARGUMENTS_OPTIONS = True


# ============================================================================
# CONFIGURATION MODEL
# ============================================================================

class Command(str, Enum):
    COUNT_CORES = "count-cores"
    COUNT_FRAME = "count-frame"
    LARGE_S_COUNT = "large-s-count"
    ASYMPTOTIC = "asymptotic"
    GODDARD = "goddard"
    SWANEPOEL = "swanepoel"
    CORE = "core"
    FIXED_CORE = "fixed-core"
    EXPECTED_SIZE = "expected-size"
    EXACT_DISTRIBUTION = "exact-distribution"
    PGF = "pgf"
    SAMPLE = "sample"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


# Flags each command cannot do without
REQUIRED_FLAGS: Dict[Command, Tuple[str, ...]] = {
    Command.COUNT_CORES: ("r", "s", "t"),
    Command.COUNT_FRAME: ("r", "s", "t"),
    Command.LARGE_S_COUNT: ("r", "t"),
    Command.ASYMPTOTIC: ("t", "kappa"),
    Command.GODDARD: ("t",),
    Command.SWANEPOEL: ("t", "x"),
    Command.CORE: ("partition", "t"),
    Command.FIXED_CORE: ("r", "s", "t", "core"),
    Command.EXPECTED_SIZE: ("r", "s", "t"),
    Command.EXACT_DISTRIBUTION: ("r", "s", "t"),
    Command.PGF: ("r", "t"),
    Command.SAMPLE: ("r", "s", "t", "n_samples"),
}

CSV_COMMANDS = {Command.SAMPLE, Command.EXACT_DISTRIBUTION}


class CliConfig(BaseModel):
    """Validated flags of one CLI invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    r: Optional[int] = Field(None, ge=0, description="Rows of the box")
    s: Optional[int] = Field(None, ge=0, description="Columns of the box")
    t: Optional[int] = Field(None, ge=2, description="Modulus of the cores")
    kappa: Optional[str] = Field(None, description="Aspect ratio s/r as a rational literal, e.g. 3/2")
    partition: Optional[str] = Field(None, description="Partition literal, e.g. 5,4,4,1")
    core: Optional[str] = Field(None, description="Core literal, e.g. 2,2,1,1")
    x: Optional[float] = Field(None, gt=0)
    terms: int = Field(10**6, ge=1)
    n_samples: Optional[int] = Field(None, ge=1)
    seed: int = Field(default_factory=lambda: get_settings().seed, ge=0)
    tol: float = Field(default_factory=lambda: get_settings().tol, gt=0)
    budget: int = Field(default_factory=lambda: get_settings().budget, ge=1)
    bins: int = Field(default_factory=lambda: get_settings().histogram_bins, ge=1)
    workers: Optional[int] = Field(None, ge=1)
    list_partitions: bool = False
    histogram: bool = False
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[Path] = None

    @field_validator("kappa")
    @classmethod
    def _positive_rational(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and parse_rational(value) <= 0:
            raise ValueError(f"kappa must be positive, got {value}")
        return value

    @field_validator("partition", "core")
    @classmethod
    def _partition_literal(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            Partition.parse(value)
        return value

    @model_validator(mode="after")
    def _flags_match_command(self) -> "CliConfig":
        missing = [name for name in REQUIRED_FLAGS[self.command] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command.value} needs " + ", ".join(f"--{m.replace('_', '-')}" for m in missing))
        if self.output_format is OutputFormat.CSV and self.command not in CSV_COMMANDS:
            raise ValueError(f"--format csv is only available for {', '.join(sorted(c.value for c in CSV_COMMANDS))}")
        if self.histogram and (self.command is not Command.EXACT_DISTRIBUTION or self.output_path is None):
            raise ValueError("--histogram belongs to exact-distribution and needs --output")
        if self.histogram and (self.r == 0 or self.s == 0):
            raise ValueError("--histogram needs r >= 1 and s >= 1")
        return self

    @property
    def box(self) -> Box:
        return Box(self.r, self.s)

    @property
    def kappa_value(self) -> Fraction:
        return parse_rational(self.kappa)


def _config_error(exc: ConfigValidationError) -> str:
    parts = []
    for error in exc.errors():
        where = ".".join(str(loc) for loc in error["loc"])
        parts.append(f"{where}: {error['msg']}" if where else error["msg"])
    return "; ".join(parts)


# ============================================================================
# HANDLERS
# ============================================================================

Payload = Optional[dict]


def _count_cores(config: CliConfig) -> Payload:
    return {"count": str(count_t_cores(config.box, config.t))}


def _count_frame(config: CliConfig) -> Payload:
    return {"count": str(count_t_cores_exact_frame(config.box, config.t))}


def _large_s_count(config: CliConfig) -> Payload:
    return {"count": str(count_t_cores_large_s(config.r, config.t))}


def _asymptotic(config: CliConfig) -> Payload:
    constant = asymptotic_constant_exact(config.t, config.kappa_value)
    return {
        "t": config.t,
        "kappa": format_rational(config.kappa_value),
        "A": format_rational(constant),
        "A_float": float(constant),
        "limit": float(constant / config.t ** (config.t - 1)),
    }


def _goddard(config: CliConfig) -> Payload:
    return {
        "t": config.t,
        "tol": config.tol,
        "value": goddard_integral(config.t, config.tol),
        "A": float(asymptotic_constant_exact(config.t, 1)),
    }


def _swanepoel(config: CliConfig) -> Payload:
    return swanepoel_check(config.t, config.x, config.terms).to_json()


def _core(config: CliConfig) -> Payload:
    partition = Partition.parse(config.partition)
    descriptor = core_descriptor(partition, config.t)
    return {
        "partition": partition.to_json(),
        "core": t_core_fast(partition, config.t).to_json(),
        "quotient": [mu.to_json() for mu in t_quotient(partition, config.t)],
        "descriptor": descriptor.to_json(),
        "core_size": core_size(descriptor),
        "abacus": to_abacus(partition).to_json(),
    }


def _fixed_core(config: CliConfig) -> Payload:
    core = Partition.parse(config.core)
    box, t = config.box, config.t
    payload = {
        "count": str(fixed_core_count(core, box, t)),
        "genfun": fixed_core_genfun(core, box, t).to_json(),
        "runner_sizes": list(runner_sizes(core, box, t)),
        "descriptor": core_descriptor(core, t).to_json(),
        "probability": format_rational(core_probability(core, box, t)),
    }
    if config.list_partitions:
        payload["partitions"] = [p.to_json() for p in sorted(enumerate_with_core(core, box, t), reverse=True)]
    return payload


def _expected_size(config: CliConfig) -> Payload:
    return {"mean": format_rational(expected_core_size(config.box, config.t))}


def _exact_distribution(config: CliConfig) -> Payload:
    box, t = config.box, config.t
    dist = exact_core_size_distribution(box, t, config.budget)
    if config.histogram:
        frame = distribution_histogram(
            dist, Fraction(t, box.rows), math.comb(box.semiperimeter, box.rows), gamma_params(t, Fraction(box.cols, box.rows))
        )
        frame.to_csv(config.output_path, index=False, lineterminator="\n")
        logger.info(f"wrote exact histogram to {config.output_path}")
    if config.output_format is OutputFormat.CSV:
        for line in ["size,p"] + [f"{row['size']},{row['p']}" for row in dist.to_json()]:
            click.echo(line)
        return None
    return {
        "distribution": dist.to_json(),
        "mean": format_rational(dist.mean),
        "variance": format_rational(dist.variance),
    }


def _pgf(config: CliConfig) -> Payload:
    phi = pgf_large_s(config.r, config.t)
    return {
        "coefficients": phi.to_json(),
        "value_at_1": format_rational(phi.evaluate(1)),
        "derivative_at_1": format_rational(phi.derivative().evaluate(1)),
    }


def _sample(config: CliConfig) -> Payload:
    box, t = config.box, config.t
    if box.cols == 0:
        raise ValidationError("sample needs s >= 1 to define the limiting Gamma law")
    run = sample_core_sizes(box, t, config.n_samples, config.seed, workers=config.workers)
    gamma = gamma_params(t, Fraction(box.cols, box.rows))
    report = gamma_fit_report(run, gamma, with_covariance=True)
    payload = {
        "box": {"r": box.rows, "s": box.cols},
        "t": t,
        "n_samples": run.n_samples,
        "seed": run.seed,
        "gamma": {"shape": format_rational(gamma.shape), "rate": format_rational(gamma.rate)},
        "exact_mean": format_rational(Fraction(t, box.rows) * expected_core_size(box, t)),
        "report": report.to_json(),
    }
    if config.output_path is not None:
        config.output_path.mkdir(parents=True, exist_ok=True)
        run.to_csv(config.output_path / "values.csv")
        histogram(run.values, config.bins, gamma).to_csv(
            config.output_path / "histogram.csv", index=False, lineterminator="\n"
        )
        (config.output_path / "report.json").write_text(json.dumps(payload) + "\n")
        logger.info(f"wrote values.csv, histogram.csv and report.json to {config.output_path}")
    if config.output_format is OutputFormat.CSV:
        click.echo(run.header())
        click.echo(run.to_frame().to_csv(index=False, float_format="%.10g", lineterminator="\n"), nl=False)
        return None
    return payload


HANDLERS: Dict[Command, Callable[[CliConfig], Payload]] = {
    Command.COUNT_CORES: _count_cores,
    Command.COUNT_FRAME: _count_frame,
    Command.LARGE_S_COUNT: _large_s_count,
    Command.ASYMPTOTIC: _asymptotic,
    Command.GODDARD: _goddard,
    Command.SWANEPOEL: _swanepoel,
    Command.CORE: _core,
    Command.FIXED_CORE: _fixed_core,
    Command.EXPECTED_SIZE: _expected_size,
    Command.EXACT_DISTRIBUTION: _exact_distribution,
    Command.PGF: _pgf,
    Command.SAMPLE: _sample,
}


def _fail(kind: str, message: str, code: int) -> int:
    logger.opt(exception=True).debug(f"{kind} failure: {message}")
    click.echo(f"error: {kind}: {message}", err=True)
    return code


def run(config: CliConfig) -> int:
    """Execute one validated command; returns the process exit code."""
    with logger.contextualize(command=config.command.value):
        logger.debug(f"running {config.command.value} with {config.model_dump(exclude_defaults=True)}")
        try:
            payload = HANDLERS[config.command](config)
        except ValidationError as exc:
            return _fail("validation", str(exc), 2)
        except BudgetExceededError as exc:
            return _fail("budget", str(exc), 1)
        except TCoresError as exc:
            return _fail("runtime", str(exc), 1)
        except OSError as exc:
            return _fail("runtime", str(exc), 1)
        if payload is not None:
            click.echo(json.dumps(payload))
        return 0


# ============================================================================
# CLICK SURFACE
# ============================================================================

def _dispatch(command: Command, flags: dict) -> None:
    ctx = click.get_current_context()
    flags = {k: v for k, v in flags.items() if v is not None}
    if "output_format" in flags:
        flags["output_format"] = flags["output_format"].lower()
    try:
        config = CliConfig(command=command, **flags)
    except ConfigValidationError as exc:
        ctx.exit(_fail("validation", _config_error(exc), 2))
    ctx.exit(run(config))


def _options(*decorators):
    def apply(func):
        for decorator in reversed(decorators):
            func = decorator(func)
        return func

    return apply


R = click.option("--r", "r", type=int, help="Rows of the box (max number of parts).")
S = click.option("--s", "s", type=int, help="Columns of the box (max part size).")
T = click.option("--t", "t", type=int, help="Modulus t >= 2.")
KAPPA = click.option("--kappa", type=str, help="Aspect ratio s/r, e.g. 1 or 3/2.")
SEED = click.option("--seed", type=int, help="Seed of the sampler (default from TCORES_SEED, else 0).")
TOL = click.option("--tol", type=float, help="Absolute tolerance (default 1e-8).")
BUDGET = click.option("--budget", type=int, help="Maximum number of compositions to enumerate.")
FORMAT = click.option("--format", "output_format", type=click.Choice(["json", "csv"], case_sensitive=False))
OUTPUT = click.option("--output", "output_path", type=click.Path(path_type=Path), help="File or directory to write.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="tcores")
def main():
    """
    t-cores of partitions in an r x s box: exact counts, distributions and the Gamma limit.

    All exact numbers are printed as decimal strings or "num/den" rationals.
    """


@main.command("count-cores")
@_options(R, S, T)
def count_cores_cmd(**flags):
    """Number of t-cores fitting in the box."""
    _dispatch(Command.COUNT_CORES, flags)


@main.command("count-frame")
@_options(R, S, T)
def count_frame_cmd(**flags):
    """Number of t-cores with exactly r parts and largest part exactly s."""
    _dispatch(Command.COUNT_FRAME, flags)


@main.command("large-s-count")
@_options(R, T)
def large_s_count_cmd(**flags):
    """Number of t-cores with at most r parts once s >= rt."""
    _dispatch(Command.LARGE_S_COUNT, flags)


@main.command("asymptotic")
@_options(T, KAPPA)
def asymptotic_cmd(**flags):
    """Limiting constant A(t, kappa) of the t-core count."""
    _dispatch(Command.ASYMPTOTIC, flags)


@main.command("goddard")
@_options(T, TOL)
def goddard_cmd(**flags):
    """A(t, 1) as (1/pi) * integral of (2 sin x / x)^t."""
    _dispatch(Command.GODDARD, flags)


@main.command("swanepoel")
@_options(T, click.option("--x", type=float, help="Point in (0, 2pi/t]."), click.option("--terms", type=int))
def swanepoel_cmd(**flags):
    """Both sides of the sine-power series identity at x."""
    _dispatch(Command.SWANEPOEL, flags)


@main.command("core")
@_options(click.option("--partition", type=str, help="Partition, e.g. 5,4,4,1."), T)
def core_cmd(**flags):
    """t-core, t-quotient and descriptor of a partition."""
    _dispatch(Command.CORE, flags)


@main.command("fixed-core")
@_options(
    R,
    S,
    T,
    click.option("--core", type=str, help="A t-core, e.g. 2,2,1,1."),
    click.option("--enumerate", "list_partitions", is_flag=True, help="List every partition."),
)
def fixed_core_cmd(**flags):
    """Partitions in the box with a given t-core: count, generating function, list."""
    _dispatch(Command.FIXED_CORE, flags)


@main.command("expected-size")
@_options(R, S, T)
def expected_size_cmd(**flags):
    """Exact expected size of the t-core of a uniform partition in the box."""
    _dispatch(Command.EXPECTED_SIZE, flags)


@main.command("exact-distribution")
@_options(
    R,
    S,
    T,
    BUDGET,
    FORMAT,
    OUTPUT,
    click.option("--histogram", is_flag=True, help="Write the scaled histogram CSV to --output."),
)
def exact_distribution_cmd(**flags):
    """Exact law of the t-core size of a uniform partition in the box."""
    _dispatch(Command.EXACT_DISTRIBUTION, flags)


@main.command("pgf")
@_options(R, T)
def pgf_cmd(**flags):
    """Probability generating function of the core size as s -> infinity."""
    _dispatch(Command.PGF, flags)


@main.command("sample")
@_options(
    R,
    S,
    T,
    click.option("--n", "n_samples", type=int, help="Number of samples."),
    SEED,
    click.option("--workers", type=int, help="Sampling threads (results do not depend on it)."),
    click.option("--bins", type=int, help="Histogram bins."),
    FORMAT,
    OUTPUT,
)
def sample_cmd(**flags):
    """Monte Carlo sample of t|core|/r with a Gamma goodness-of-fit report."""
    _dispatch(Command.SAMPLE, flags)


def cli_entry(argv: Optional[Sequence[str]] = None) -> int:
    """Process entry point: configures logging, runs the CLI, returns the exit code."""
    configure_logging(get_settings())
    try:
        code = main.main(args=list(argv) if argv is not None else None, prog_name="tcores", standalone_mode=False)
    except UsageError as exc:
        click.echo(f"error: validation: {exc.format_message()}", err=True)
        return 2
    except Abort:
        click.echo("error: runtime: aborted", err=True)
        return 1
    return code or 0
