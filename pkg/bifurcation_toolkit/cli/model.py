# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
"""The command implementations. Each one takes a RunConfig and writes artifacts."""

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from bifurcation_toolkit.analyze_bt_point.api import AnalyzeBtPoint
from bifurcation_toolkit.cli.classes import RunConfig
from bifurcation_toolkit.cli.config import (
    branch_suffixes,
    convergence_file,
    curves_file,
    profile_file,
    slopes_file,
    stable_summary,
    unstable_summary,
)
from bifurcation_toolkit.dde_simulation.model import trajectory_frame
from bifurcation_toolkit.helpers.constants import (
    NORMAL_FORM_FILE,
    SPECTRUM_FILE,
    TRAJECTORY_FILE,
)
from bifurcation_toolkit.helpers.errors import PredictorRangeError, UsageError
from bifurcation_toolkit.helpers.progress_batch_callback import ProgressBatchCallback
from bifurcation_toolkit.helpers.toolkit_configuration import ToolkitConfiguration
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.normal_form.config import GENERIC
from bifurcation_toolkit.planar_oracle.model import convergence_slopes
from bifurcation_toolkit.predictors.model import curve_frame, profile_frame

log = logging.getLogger(__name__)


class LoggingProgressCallback(ProgressBatchCallback):
    """Reports sweep progress through the module logger."""

    def on_batch_change(self, current: int, total: int, message: str = ""):
        super().on_batch_change(current, total, message)
        log.info("%s/%s %s", current, total, message)


def workflow(config: RunConfig) -> AnalyzeBtPoint:
    """Build the model and, when ``config.nf`` is set, reuse the stored normal form."""
    analysis = AnalyzeBtPoint.from_model_id(
        config.model,
        config.overrides or None,
        ToolkitConfiguration(config.tolerances),
    )
    if config.nf is not None:
        with config.nf.open(encoding="utf-8") as f:
            analysis.set_normal_form(BtNormalForm.from_json_dict(json.load(f)))
        log.info("normal form loaded from %s", config.nf)
    return analysis


def _output_dir(config: RunConfig) -> Path:
    config.out.mkdir(parents=True, exist_ok=True)
    return config.out


def _write_csv(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, float_format="%.15e")
    log.info("wrote %s", path)


def _write_json(data: dict, path: Path) -> None:
    with path.open("w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    log.info("wrote %s", path)


def summary(nf: BtNormalForm) -> str:
    """Human readable coefficients and the periodic orbit stability they imply."""
    lines = [
        f"case: {nf.case}",
        f"a = {nf.a:.15g}",
        f"b = {nf.b:.15g}",
        stable_summary if nf.a * nf.b < 0 else unstable_summary,
    ]
    lines += [f"theta{label} = {nf.theta[label]:.15g}" for label in sorted(nf.theta)]
    lines += [
        f"K{label} = {np.array2string(nf.k[label], precision=12)}"
        for label in sorted(nf.k)
    ]
    return "\n".join(lines)


def cmd_analyze(config: RunConfig) -> BtNormalForm:
    analysis = workflow(config)
    nf = analysis.normal_form()
    _write_json(nf.to_json_dict(), _output_dir(config) / NORMAL_FORM_FILE)
    print(summary(nf))
    return nf


def branches(case: str) -> dict[int, str]:
    """Branch sign and file suffix; the generic case has a single unsuffixed branch."""
    return {1: ""} if case == GENERIC else dict(branch_suffixes)


def cmd_predict(config: RunConfig) -> list[Path]:
    """Homoclinic profiles for every (eps, order) and the codimension-one curves."""
    analysis = workflow(config)
    out = _output_dir(config)
    callbacks = [LoggingProgressCallback()]
    written = []
    curves = []
    for i, eps in enumerate(config.eps):
        for callback in callbacks:
            callback.on_batch_change(i + 1, len(config.eps), f"eps={eps}")
        curves.append(curve_frame(analysis.equilibrium_curves(eps)))
        for sign, suffix in branches(analysis.case).items():
            for order in config.order:
                try:
                    predictor = analysis.homoclinic(eps, order, sign)
                except PredictorRangeError:
                    log.exception("no predictor at eps=%s order %s sign %s", eps, order, sign)
                    continue
                path = out / profile_file.format(eps=eps, order=order, suffix=suffix)
                _write_csv(profile_frame(predictor), path)
                written.append(path)
    path = out / curves_file
    _write_csv(pd.concat(curves, ignore_index=True), path)
    written.append(path)
    return written


def cmd_converge(
    config: RunConfig,
) -> dict[int, tuple[pd.DataFrame, dict[str, float] | None]]:
    """Oracle distances for each eps and branch.

    Slopes are skipped for a branch with fewer than two fitted rows.
    """
    analysis = workflow(config)
    out = _output_dir(config)
    results = {}
    for sign, suffix in branches(analysis.case).items():
        table = analysis.convergence_table(
            config.eps, sign=sign, callbacks=[LoggingProgressCallback()]
        )
        _write_csv(table, out / convergence_file.format(suffix=suffix))
        try:
            slopes = {
                against: convergence_slopes(table, against) for against in ("eps", "A0")
            }
        except UsageError as e:
            log.warning("no slopes fitted for branch %s: %s", sign, e)
            results[sign] = (table, None)
            continue
        _write_json(slopes, out / slopes_file.format(suffix=suffix))
        for against, fitted in slopes.items():
            values = ", ".join(f"{k}={v:.4f}" for k, v in fitted.items())
            print(f"branch {sign:+d} slopes vs {against}: {values}")
        results[sign] = (table, slopes)
    return results


def cmd_simulate(config: RunConfig) -> pd.DataFrame:
    """Integrate from a seeded perturbation of the equilibrium at the critical parameters."""
    analysis = workflow(config)
    rng = np.random.default_rng(config.seed)
    history = analysis.equilibrium + config.kick * rng.standard_normal(
        analysis.model.n
    )
    solution = analysis.simulate(
        (0.0, config.span), history=history, bound=config.bound, reverse=config.reverse
    )
    if solution.terminated:
        log.warning("simulation stopped at t=%s: %s", solution.t[-1], solution.events)
    frame = trajectory_frame(solution)
    _write_csv(frame, _output_dir(config) / TRAJECTORY_FILE)
    return frame


def cmd_spectrum(config: RunConfig) -> pd.DataFrame:
    analysis = workflow(config)
    frame = analysis.spectrum(config.region)
    _write_csv(frame, _output_dir(config) / SPECTRUM_FILE)
    print(frame.to_string(index=False))
    return frame
