# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import json

import numpy as np
import pandas as pd
import pytest

from bifurcation_toolkit.analyze_bt_point.api import AnalyzeBtPoint
from bifurcation_toolkit.cli.classes import RunConfig
from bifurcation_toolkit.cli.config import stable_summary, unstable_summary
from bifurcation_toolkit.cli.model import (
    cmd_analyze,
    cmd_converge,
    cmd_predict,
    cmd_simulate,
    cmd_spectrum,
    summary,
    workflow,
)
from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.helpers.constants import (
    CONVERGENCE_COLUMNS,
    NORMAL_FORM_FILE,
    SPECTRUM_COLUMNS,
    SPECTRUM_FILE,
    TRAJECTORY_FILE,
)
from bifurcation_toolkit.helpers.errors import UsageError
from bifurcation_toolkit.normal_form.classes import (
    BtNormalForm,
    GenericBtNormalForm,
    TranscriticalBtNormalForm,
)
from bifurcation_toolkit.normal_form.config import GENERIC, TRANSCRITICAL

WORKFLOW = "bifurcation_toolkit.cli.model.workflow"


def planar_nf(case: str, a: float = 1.0, b: float = 1.0) -> BtNormalForm:
    target = GenericBtNormalForm if case == GENERIC else TranscriticalBtNormalForm
    return target(
        case=case,
        a=a,
        b=b,
        q0=np.array([1.0, 0.0]),
        q1=np.array([0.0, 1.0]),
        p1=np.array([0.0, 1.0]),
        p0=np.array([1.0, 0.0]),
        equilibrium=np.zeros(2),
        parameters=np.zeros(2),
        delays=np.array([0.0]),
        theta={"1000": 0.25},
        k={"10": np.array([1.0, 0.0]), "01": np.array([0.0, 1.0])},
        h={},
    )


def planar_analysis(case: str = GENERIC) -> AnalyzeBtPoint:
    """x1' = x2, x2' = unfolding + x1^2 + x1 x2 with its normal form preset."""

    def rhs(xi, alpha):
        x1, x2 = xi[0, 0], xi[1, 0]
        linear = alpha[0] if case == GENERIC else alpha[0] * x1
        return np.array([x2, linear + alpha[1] * x2 + x1**2 + x1 * x2])

    analysis = AnalyzeBtPoint(DdeModel(2, [0.0], rhs), [0.0, 0.0], [0.0, 0.0], case)
    analysis.set_normal_form(planar_nf(case))
    return analysis


def run_config(command: str, tmp_path, **settings) -> RunConfig:
    return RunConfig(command=command, model="vdpo", out=tmp_path, **settings)


class TestSummary:
    def test_unstable_orbits(self) -> None:
        text = summary(planar_nf(GENERIC, a=0.5, b=2.0))
        assert unstable_summary in text
        assert "a = 0.5" in text
        assert "theta1000 = 0.25" in text

    def test_stable_orbits(self) -> None:
        assert stable_summary in summary(planar_nf(TRANSCRITICAL, a=0.13, b=-0.29))


class TestWorkflow:
    def test_loads_a_stored_normal_form(self, tmp_path) -> None:
        path = tmp_path / NORMAL_FORM_FILE
        path.write_text(json.dumps(planar_nf(TRANSCRITICAL).to_json_dict()), encoding="utf-8")
        analysis = workflow(run_config("predict", tmp_path, nf=path))
        assert analysis.normal_form().theta == {"1000": 0.25}

    def test_case_mismatch(self, tmp_path) -> None:
        path = tmp_path / NORMAL_FORM_FILE
        path.write_text(json.dumps(planar_nf(GENERIC).to_json_dict()), encoding="utf-8")
        with pytest.raises(UsageError):
            workflow(run_config("predict", tmp_path, nf=path))

    def test_tolerances_reach_the_configuration(self, tmp_path) -> None:
        config = run_config("analyze", tmp_path, tolerances={"fsc_tol": "1e-9"})
        assert workflow(config).configuration.fsc_tol == 1e-9


class TestCommands:
    def test_analyze_writes_the_normal_form(self, mocker, tmp_path, capsys) -> None:
        mocker.patch(WORKFLOW, return_value=planar_analysis())
        nf = cmd_analyze(run_config("analyze", tmp_path))
        stored = json.loads((tmp_path / NORMAL_FORM_FILE).read_text(encoding="utf-8"))
        assert stored["case"] == GENERIC
        assert stored["a"] == nf.a
        assert unstable_summary in capsys.readouterr().out

    def test_predict_generic(self, mocker, tmp_path) -> None:
        mocker.patch(WORKFLOW, return_value=planar_analysis())
        written = cmd_predict(run_config("predict", tmp_path, eps=[0.1]))
        assert [path.name for path in written] == [
            "profile_eps0.1_order1.csv",
            "profile_eps0.1_order3.csv",
            "curves.csv",
        ]
        profile = pd.read_csv(written[0])
        assert list(profile.columns) == ["t", "x_1", "x_2"]
        curves = pd.read_csv(written[-1])
        assert list(curves["label"]) == ["fold", "hopf"]

    def test_predict_transcritical_writes_both_branches(self, mocker, tmp_path) -> None:
        mocker.patch(WORKFLOW, return_value=planar_analysis(TRANSCRITICAL))
        written = cmd_predict(run_config("predict", tmp_path, eps=[0.1], order=[3]))
        assert [path.name for path in written] == [
            "profile_eps0.1_order3_plus.csv",
            "profile_eps0.1_order3_minus.csv",
            "curves.csv",
        ]

    def test_converge_without_enough_rows(self, mocker, tmp_path) -> None:
        analysis = planar_analysis()
        table = pd.DataFrame([[0.1, 0.06, 1e-2, 1e-4]], columns=CONVERGENCE_COLUMNS)
        mocker.patch.object(analysis, "convergence_table", return_value=table)
        mocker.patch(WORKFLOW, return_value=analysis)
        results = cmd_converge(run_config("converge", tmp_path))
        assert list(results) == [1]
        _, slopes = results[1]
        assert slopes is None
        assert (tmp_path / "convergence.csv").exists()
        assert not (tmp_path / "slopes.json").exists()

    def test_converge_fits_slopes(self, mocker, tmp_path) -> None:
        analysis = planar_analysis()
        eps = np.array([0.05, 0.1, 0.2])
        table = pd.DataFrame({
            "eps": eps,
            "A0": 6.0 * eps**2,
            "delta_order1": eps,
            "delta_order3": eps**3,
        })
        mocker.patch.object(analysis, "convergence_table", return_value=table)
        mocker.patch(WORKFLOW, return_value=analysis)
        _, slopes = cmd_converge(run_config("converge", tmp_path))[1]
        assert slopes["eps"]["delta_order3"] == pytest.approx(3.0)
        assert slopes["A0"]["delta_order1"] == pytest.approx(0.5)
        stored = json.loads((tmp_path / "slopes.json").read_text(encoding="utf-8"))
        assert set(stored) == {"eps", "A0"}

    def test_converge_sweeps_both_branches(self, mocker, tmp_path, capsys) -> None:
        analysis = planar_analysis(TRANSCRITICAL)
        eps = np.array([0.05, 0.1, 0.2])
        table = pd.DataFrame({
            "eps": eps,
            "A0": 6.0 * eps**2,
            "delta_order1": eps,
            "delta_order3": eps**3,
        })
        sweep = mocker.patch.object(analysis, "convergence_table", return_value=table)
        mocker.patch(WORKFLOW, return_value=analysis)
        results = cmd_converge(run_config("converge", tmp_path))
        assert list(results) == [1, -1]
        assert [call.kwargs["sign"] for call in sweep.call_args_list] == [1, -1]
        for suffix in ("_plus", "_minus"):
            assert (tmp_path / f"convergence{suffix}.csv").exists()
            assert (tmp_path / f"slopes{suffix}.json").exists()
        assert not (tmp_path / "convergence.csv").exists()
        out = capsys.readouterr().out
        assert "branch +1 slopes vs eps" in out
        assert "branch -1 slopes vs eps" in out

    def test_simulate_is_reproducible(self, mocker, tmp_path) -> None:
        mocker.patch(WORKFLOW, side_effect=lambda config: planar_analysis())
        first = tmp_path / "first"
        second = tmp_path / "second"
        cmd_simulate(run_config("simulate", first, span=2.0, seed=3))
        cmd_simulate(run_config("simulate", second, span=2.0, seed=3))
        content = (first / TRAJECTORY_FILE).read_bytes()
        assert content == (second / TRAJECTORY_FILE).read_bytes()
        frame = pd.read_csv(first / TRAJECTORY_FILE)
        assert frame["t"].iloc[-1] == pytest.approx(2.0)
        assert np.abs(frame[["x_1", "x_2"]].to_numpy()).max() < 1e-2

    def test_spectrum(self, mocker, tmp_path, capsys) -> None:
        decay = DdeModel(1, [0.0], lambda xi, alpha: np.array([-xi[0, 0]]))
        mocker.patch(WORKFLOW, return_value=AnalyzeBtPoint(decay, [0.0], [0.0, 0.0], GENERIC))
        frame = cmd_spectrum(run_config("spectrum", tmp_path))
        assert list(frame.columns) == SPECTRUM_COLUMNS
        assert frame["re"].to_numpy() == pytest.approx([-1.0])
        assert (tmp_path / SPECTRUM_FILE).exists()
        assert "abs_det" in capsys.readouterr().out
