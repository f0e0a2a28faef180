# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import argparse
import json
import logging
import os
from pathlib import Path

from bifurcation_toolkit.cli.classes import RunConfig
from bifurcation_toolkit.cli.config import (
    ANALYZE,
    COMMANDS,
    CONVERGE,
    PREDICT,
    SIMULATE,
    SPECTRUM,
    default_log_level,
)
from bifurcation_toolkit.cli.model import (
    cmd_analyze,
    cmd_converge,
    cmd_predict,
    cmd_simulate,
    cmd_spectrum,
)
from bifurcation_toolkit.example_models.config import MODEL_IDS
from bifurcation_toolkit.helpers.constants import (
    EXIT_NUMERICAL,
    EXIT_SUCCESS,
    EXIT_USAGE,
    LOG_LEVEL_ENV,
)
from bifurcation_toolkit.helpers.errors import NUMERICAL_ERRORS, NotBogdanovTakensError

log = logging.getLogger(__name__)

HANDLERS = {
    ANALYZE: cmd_analyze,
    PREDICT: cmd_predict,
    CONVERGE: cmd_converge,
    SIMULATE: cmd_simulate,
    SPECTRUM: cmd_spectrum,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifurcation_toolkit",
        description="Bogdanov-Takens normal forms and homoclinic predictors for delay equations.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--model", choices=MODEL_IDS)
    parser.add_argument("--config", type=Path, help="JSON file whose keys mirror the flags")
    parser.add_argument("--eps", type=float, nargs="+")
    parser.add_argument("--order", type=int, nargs="+", choices=[1, 3])
    parser.add_argument("--out", type=Path)
    parser.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VALUE",
        help="numerical setting, e.g. fsc_tol=1e-9; may be repeated",
    )
    parser.add_argument("--seed", type=int)
    parser.add_argument("--reverse", action="store_true", default=None)
    parser.add_argument("--bound", type=float)
    parser.add_argument("--nf", type=Path, help="normal form JSON written by analyze")
    parser.add_argument("--log-level", dest="log_level")
    return parser


def _parse_tolerances(items: list[str]) -> dict[str, str]:
    tolerances = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            msg = f"--tol expects NAME=VALUE, got {item!r}"
            raise ValueError(msg)
        tolerances[name.strip()] = value.strip()
    return tolerances


def run_config(args: argparse.Namespace) -> RunConfig:
    """Merge the JSON config file with the flags; flags win."""
    settings = {}
    if args.config is not None:
        with args.config.open(encoding="utf-8") as f:
            settings = json.load(f)
    flags = {
        key: value
        for key, value in vars(args).items()
        if key not in ("config", "tol") and value is not None
    }
    settings.update(flags)
    if args.tol:
        settings["tolerances"] = {
            **settings.get("tolerances", {}),
            **_parse_tolerances(args.tol),
        }
    if "model" not in settings:
        msg = "a model is required, from --model or the config file"
        raise ValueError(msg)
    return RunConfig(**settings)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(
            args.log_level or os.environ.get(LOG_LEVEL_ENV, default_log_level)
        ).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = run_config(args)
        HANDLERS[config.command](config)
    except NotBogdanovTakensError:
        log.exception("%s: no Bogdanov-Takens point at the given settings", args.command)
        return EXIT_USAGE
    except NUMERICAL_ERRORS:
        log.exception("%s failed", args.command)
        return EXIT_NUMERICAL
    except (ValueError, OSError):
        log.exception("%s rejected its input", args.command)
        return EXIT_USAGE
    return EXIT_SUCCESS
