# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
from pathlib import Path
from typing import Any

from pydantic import BaseModel, field_validator

from bifurcation_toolkit.cli.config import (
    COMMANDS,
    default_eps,
    default_kick,
    default_log_level,
    default_orders,
    default_out,
    default_region,
    default_seed,
    default_simulation_span,
)
from bifurcation_toolkit.example_models.config import MODEL_IDS
from bifurcation_toolkit.helpers.defaults import DEFAULT_DDE_BOUND


class RunConfig(BaseModel):
    """Settings of one command line run, from flags or a JSON file."""

    command: str
    model: str
    eps: list[float] = default_eps
    order: list[int] = default_orders
    out: Path = Path(default_out)
    tolerances: dict[str, Any] = {}
    overrides: dict[str, float] = {}
    seed: int = default_seed
    reverse: bool = False
    bound: float = DEFAULT_DDE_BOUND
    span: float = default_simulation_span
    kick: float = default_kick
    region: tuple[float, float, float, float] = default_region
    nf: Path | None = None
    log_level: str = default_log_level

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            msg = f"unknown command {value!r}, expected one of {COMMANDS}"
            raise ValueError(msg)
        return value

    @field_validator("model")
    @classmethod
    def _known_model(cls, value: str) -> str:
        if value not in MODEL_IDS:
            msg = f"unknown model {value!r}, expected one of {MODEL_IDS}"
            raise ValueError(msg)
        return value

    @field_validator("eps")
    @classmethod
    def _positive_eps(cls, value: list[float]) -> list[float]:
        if not value:
            msg = "at least one eps value is required"
            raise ValueError(msg)
        if any(e <= 0 for e in value):
            msg = f"eps values must be positive, got {value}"
            raise ValueError(msg)
        return value

    @field_validator("order")
    @classmethod
    def _known_order(cls, value: list[int]) -> list[int]:
        if not value or any(o not in (1, 3) for o in value):
            msg = f"orders must be taken from (1, 3), got {value}"
            raise ValueError(msg)
        return value

    @field_validator("bound", "span")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            msg = f"expected a positive value, got {value}"
            raise ValueError(msg)
        return value
