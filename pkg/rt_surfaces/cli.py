"""Command line front end: generate, verify, rotation and singular."""
from __future__ import annotations

import argparse
from collections.abc import Sequence
from dataclasses import dataclass, field
import logging
import math
import sys
from typing import Any, TextIO

import voluptuous as vol

from .const import (
    _LOGGER,
    COMMAND_GENERATE,
    COMMAND_ROTATION,
    COMMAND_SINGULAR,
    COMMAND_VERIFY,
    COMMANDS,
    CONF_A,
    CONF_B,
    CONF_CSV,
    CONF_DEBUG,
    CONF_F,
    CONF_G,
    CONF_MAX_CONDITION,
    CONF_OUT,
    CONF_RANGE,
    CONF_SAMPLES,
    CONF_STEP,
    CONF_TOL_DET,
    CONF_TOL_EQUIVALENCE,
    CONF_TOL_GAUSS,
    CONF_TOL_ORACLE,
    CONF_TOL_POSITION,
    CONF_TOL_RESIDUAL,
    CONF_U1,
    CONF_U2,
    DEFAULT_DET_EPS,
    DEFAULT_EQUIVALENCE_TOL,
    DEFAULT_FD_STEP,
    DEFAULT_GAUSS_EPS,
    DEFAULT_MAX_CONDITION,
    DEFAULT_ORACLE_TOL,
    DEFAULT_POSITION_RTOL,
    DEFAULT_RESIDUAL_TOL,
    DEFAULT_ROTATION_U1,
    DEFAULT_ROTATION_U2,
    DEFAULT_SCAN_SAMPLES,
    DEFAULT_SINGULAR_RANGE,
    DOMAIN,
    EXIT_OK,
    EXIT_TOLERANCE,
    EXIT_USAGE,
)
from .exceptions import ConsistencyError, RTSurfaceError
from .export import format_float, write_csv, write_obj
from .expression import ExprNode, parse
from .models import (
    GeneratorPair,
    GridSpec,
    RotationParams,
    Thresholds,
    VerifyTolerances,
)
from .rotation import singular_u1
from .sampler import sample
from .verify import verify_generator, verify_rotation


class UsageError(Exception):
    """Error to indicate the command line could not be understood."""


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports errors instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def finite_float(value: Any) -> float:
    """Validate a finite real number."""
    try:
        number = float(value)
    except (TypeError, ValueError) as err:
        raise vol.Invalid(f"Not a number: {value!r}") from err
    if not math.isfinite(number):
        raise vol.Invalid(f"Not finite: {value!r}")
    return number


def condition_limit(value: Any) -> float:
    """Validate a condition number bound; inf disables the bound."""
    try:
        number = float(value)
    except (TypeError, ValueError) as err:
        raise vol.Invalid(f"Not a number: {value!r}") from err
    if math.isnan(number) or number < 1:
        raise vol.Invalid(f"Condition bound must be at least 1, got {value!r}")
    return number


def interval(value: Any) -> tuple[float, float]:
    """Validate a lo:hi range."""
    parts = str(value).split(":")
    if len(parts) != 2:
        raise vol.Invalid(f"Expected lo:hi, got {value!r}")
    lo, hi = (finite_float(p) for p in parts)
    if not lo < hi:
        raise vol.Invalid(f"Range needs lo < hi, got {value!r}")
    return lo, hi


def axis(value: Any) -> tuple[float, float, int]:
    """Validate a lo:hi:count grid axis."""
    parts = str(value).split(":")
    if len(parts) != 3:
        raise vol.Invalid(f"Expected lo:hi:count, got {value!r}")
    lo, hi = interval(f"{parts[0]}:{parts[1]}")
    try:
        count = int(parts[2])
    except ValueError as err:
        raise vol.Invalid(f"Node count must be an integer, got {parts[2]!r}") from err
    if count < 2:
        raise vol.Invalid(f"Node count must be at least 2, got {count}")
    return lo, hi, count


def expression(value: Any) -> ExprNode:
    """Validate and parse holomorphic expression text."""
    try:
        return parse(str(value))
    except RTSurfaceError as err:
        raise vol.Invalid(str(err)) from err


POSITIVE = vol.All(finite_float, vol.Range(min=0, min_included=False))

GENERATOR_SCHEMA = {
    vol.Required(CONF_F): expression,
    vol.Required(CONF_G): expression,
    vol.Required(CONF_U1): axis,
    vol.Required(CONF_U2): axis,
    vol.Optional(CONF_TOL_GAUSS, default=DEFAULT_GAUSS_EPS): POSITIVE,
    vol.Optional(CONF_TOL_DET, default=DEFAULT_DET_EPS): POSITIVE,
    vol.Optional(CONF_DEBUG, default=False): bool,
}

GENERATE_SCHEMA = vol.Schema(
    {
        **GENERATOR_SCHEMA,
        vol.Required(CONF_OUT): str,
        vol.Optional(CONF_CSV): str,
    }
)

VERIFY_SCHEMA = vol.Schema(
    {
        **GENERATOR_SCHEMA,
        vol.Optional(CONF_STEP, default=DEFAULT_FD_STEP): POSITIVE,
        vol.Optional(CONF_TOL_RESIDUAL, default=DEFAULT_RESIDUAL_TOL): POSITIVE,
        vol.Optional(CONF_TOL_ORACLE, default=DEFAULT_ORACLE_TOL): POSITIVE,
        vol.Optional(CONF_TOL_POSITION, default=DEFAULT_POSITION_RTOL): POSITIVE,
        vol.Optional(
            CONF_MAX_CONDITION, default=DEFAULT_MAX_CONDITION
        ): condition_limit,
    }
)

ROTATION_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_A): finite_float,
        vol.Optional(CONF_B, default=0.0): finite_float,
        vol.Optional(CONF_U1, default=DEFAULT_ROTATION_U1): axis,
        vol.Optional(CONF_U2, default=DEFAULT_ROTATION_U2): axis,
        vol.Required(CONF_OUT): str,
        vol.Optional(CONF_CSV): str,
        vol.Optional(CONF_TOL_EQUIVALENCE, default=DEFAULT_EQUIVALENCE_TOL): POSITIVE,
        vol.Optional(CONF_TOL_GAUSS, default=DEFAULT_GAUSS_EPS): POSITIVE,
        vol.Optional(CONF_TOL_DET, default=DEFAULT_DET_EPS): POSITIVE,
        vol.Optional(CONF_DEBUG, default=False): bool,
    }
)

SINGULAR_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_A): finite_float,
        vol.Optional(CONF_B, default=0.0): finite_float,
        vol.Optional(CONF_RANGE, default=DEFAULT_SINGULAR_RANGE): interval,
        vol.Optional(CONF_SAMPLES, default=DEFAULT_SCAN_SAMPLES): vol.All(
            vol.Coerce(int), vol.Range(min=2)
        ),
        vol.Optional(CONF_DEBUG, default=False): bool,
    }
)

COMMAND_SCHEMAS = {
    COMMAND_GENERATE: GENERATE_SCHEMA,
    COMMAND_VERIFY: VERIFY_SCHEMA,
    COMMAND_ROTATION: ROTATION_SCHEMA,
    COMMAND_SINGULAR: SINGULAR_SCHEMA,
}

# Flags per command; every flag except --debug takes a value.
COMMAND_FLAGS = {
    COMMAND_GENERATE: [
        CONF_F,
        CONF_G,
        CONF_U1,
        CONF_U2,
        CONF_OUT,
        CONF_CSV,
        CONF_TOL_GAUSS,
        CONF_TOL_DET,
    ],
    COMMAND_VERIFY: [
        CONF_F,
        CONF_G,
        CONF_U1,
        CONF_U2,
        CONF_STEP,
        CONF_TOL_RESIDUAL,
        CONF_TOL_ORACLE,
        CONF_TOL_POSITION,
        CONF_MAX_CONDITION,
        CONF_TOL_GAUSS,
        CONF_TOL_DET,
    ],
    COMMAND_ROTATION: [
        CONF_A,
        CONF_B,
        CONF_U1,
        CONF_U2,
        CONF_OUT,
        CONF_CSV,
        CONF_TOL_EQUIVALENCE,
        CONF_TOL_GAUSS,
        CONF_TOL_DET,
    ],
    COMMAND_SINGULAR: [CONF_A, CONF_B, CONF_RANGE, CONF_SAMPLES],
}


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


VALUE_FLAGS = {_flag(key) for flags in COMMAND_FLAGS.values() for key in flags}


@dataclass
class CliConfig:
    """Validated command line configuration."""

    command: str
    generators: GeneratorPair | None = None
    rotation: RotationParams | None = None
    grid: GridSpec | None = None
    search: tuple[float, float] | None = None
    samples: int = DEFAULT_SCAN_SAMPLES
    out: str | None = None
    csv: str | None = None
    equivalence_tol: float = DEFAULT_EQUIVALENCE_TOL
    thresholds: Thresholds = field(default_factory=Thresholds)
    tolerances: VerifyTolerances = field(default_factory=VerifyTolerances)
    debug: bool = False

    @classmethod
    def from_options(cls, command: str, options: dict[str, Any]) -> CliConfig:
        """Build the configuration from schema-validated options."""
        config = cls(
            command=command,
            out=options.get(CONF_OUT),
            csv=options.get(CONF_CSV),
            debug=options[CONF_DEBUG],
        )
        if CONF_F in options:
            config.generators = GeneratorPair(options[CONF_F], options[CONF_G])
        if CONF_A in options:
            config.rotation = RotationParams(options[CONF_A], options[CONF_B])
        if CONF_U1 in options:
            (lo1, hi1, n1), (lo2, hi2, n2) = options[CONF_U1], options[CONF_U2]
            config.grid = GridSpec(lo1, hi1, lo2, hi2, n1, n2)
        if CONF_RANGE in options:
            config.search = options[CONF_RANGE]
            config.samples = options[CONF_SAMPLES]
        if CONF_TOL_GAUSS in options:
            config.thresholds = Thresholds(
                gauss_eps=options[CONF_TOL_GAUSS], det_eps=options[CONF_TOL_DET]
            )
        if command == COMMAND_VERIFY:
            config.tolerances = VerifyTolerances(
                residual=options[CONF_TOL_RESIDUAL],
                oracle=options[CONF_TOL_ORACLE],
                position=options[CONF_TOL_POSITION],
                step=options[CONF_STEP],
                max_condition=options[CONF_MAX_CONDITION],
            )
        config.equivalence_tol = options.get(
            CONF_TOL_EQUIVALENCE, DEFAULT_EQUIVALENCE_TOL
        )
        return config


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per operation."""
    parser = _Parser(prog="rt", description="Construct and verify RT-surfaces.")
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )
    for command in COMMANDS:
        sub = commands.add_parser(command)
        for key in COMMAND_FLAGS[command]:
            sub.add_argument(_flag(key), dest=key)
        sub.add_argument("--debug", dest=CONF_DEBUG, action="store_true")
    return parser


def _attach_values(argv: Sequence[str]) -> list[str]:
    """Join value flags with their value so values like -3:3 are not read as flags."""
    joined: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in VALUE_FLAGS:
            value = next(tokens, None)
            joined.append(token if value is None else f"{token}={value}")
        else:
            joined.append(token)
    return joined


def parse_config(argv: Sequence[str]) -> CliConfig:
    """Parse and validate argv into a CliConfig."""
    namespace = build_parser().parse_args(_attach_values(argv))
    command = namespace.command
    options = {
        k: v
        for k, v in vars(namespace).items()
        if k != "command" and v is not None
    }
    try:
        validated = COMMAND_SCHEMAS[command](options)
    except vol.Invalid as err:
        raise UsageError(str(err)) from err
    return CliConfig.from_options(command, validated)


def _emit(stream: TextIO, **values: Any) -> None:
    for key, value in values.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, float):
            value = format_float(value)
        print(f"{key}={value}", file=stream)


def _generate(config: CliConfig, stream: TextIO) -> int:
    mesh, rows = sample(config.generators, config.grid, config.thresholds)
    write_obj(mesh, config.out)
    if config.csv:
        write_csv(rows, config.csv)
    _emit(
        stream,
        valid=mesh.valid_count,
        masked=mesh.valid_mask.size - mesh.valid_count,
        faces=len(mesh.faces),
    )
    return EXIT_OK


def _verify(config: CliConfig, stream: TextIO) -> int:
    report = verify_generator(
        config.generators, config.grid, config.thresholds, config.tolerances
    )
    passed = report.passed(config.tolerances)
    _emit(
        stream,
        evaluated=report.evaluated,
        masked=report.masked,
        oracle_compared=report.oracle_compared,
        oracle_skipped=report.oracle_skipped,
        max_residual=report.max_residual,
        max_oracle_deviation=report.max_oracle_deviation,
        max_position_deviation=report.max_position_deviation,
        a2_plus_deviation=report.a2_plus_deviation,
        a2_minus_deviation=report.a2_minus_deviation,
        passed=passed,
    )
    return EXIT_OK if passed else EXIT_TOLERANCE


def _rotation(config: CliConfig, stream: TextIO) -> int:
    deviation = verify_rotation(config.rotation, config.grid, config.equivalence_tol)
    mesh, rows = sample(config.rotation, config.grid, config.thresholds)
    write_obj(mesh, config.out)
    if config.csv:
        write_csv(rows, config.csv)
    _emit(
        stream,
        max_equivalence_deviation=deviation,
        valid=mesh.valid_count,
        masked=mesh.valid_mask.size - mesh.valid_count,
        faces=len(mesh.faces),
    )
    return EXIT_OK


def _singular(config: CliConfig, stream: TextIO) -> int:
    result = singular_u1(config.rotation, config.search, config.samples)
    _emit(stream, a=config.rotation.a, b=config.rotation.b, roots=len(result.roots))
    for index, root in enumerate(result.roots):
        _emit(
            stream,
            **{
                f"root.{index}.u1": root.u1,
                f"root.{index}.residual": root.residual,
                f"root.{index}.certified": root.certified,
                f"root.{index}.candidate": root.nearest_candidate or "none",
                f"root.{index}.candidate_deviation": (
                    "none"
                    if root.candidate_deviation is None
                    else root.candidate_deviation
                ),
            },
        )
    for index, candidate in enumerate(result.candidates):
        _emit(
            stream,
            **{
                f"candidate.{index}.case": candidate.label,
                f"candidate.{index}.applies": candidate.applies,
                f"candidate.{index}.u1": (
                    "none" if candidate.u1 is None else candidate.u1
                ),
            },
        )
    return EXIT_OK


HANDLERS = {
    COMMAND_GENERATE: _generate,
    COMMAND_VERIFY: _verify,
    COMMAND_ROTATION: _rotation,
    COMMAND_SINGULAR: _singular,
}


def run(argv: Sequence[str], stream: TextIO | None = None) -> int:
    """Run one command and return its exit code."""
    stream = stream or sys.stdout
    try:
        config = parse_config(argv)
    except UsageError as err:
        print(f"{DOMAIN}: {err}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.DEBUG if config.debug else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return HANDLERS[config.command](config, stream)
    except ConsistencyError as err:
        _LOGGER.error("Tolerance exceeded: %s", err)
        return EXIT_TOLERANCE
    except (RTSurfaceError, OSError) as err:
        _LOGGER.error("%s failed: %s", config.command, err)
        return EXIT_USAGE


def main() -> None:
    """Entry point of the rt console script."""
    sys.exit(run(sys.argv[1:]))
