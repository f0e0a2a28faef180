# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic.warnings import PydanticDeprecatedSince20

from bifurcation_toolkit.dde_simulation.classes import DdeSolution
from bifurcation_toolkit.example_models.classes import BamStabilityBoundary, BtPointSpec
from bifurcation_toolkit.helpers.classes import BifurcationWorkflow
from bifurcation_toolkit.helpers.constants import state_columns
from bifurcation_toolkit.helpers.defaults import DEFAULT_FSC_TOL, DEFAULT_UNIT_NORM
from bifurcation_toolkit.helpers.errors import (
    NUMERICAL_ERRORS,
    USAGE_ERRORS,
    ConvergenceError,
    DimensionError,
    InconsistentRightHandSideError,
    StiffnessError,
    UsageError,
)
from bifurcation_toolkit.helpers.order_fit import fit_order
from bifurcation_toolkit.helpers.progress_batch_callback import (
    ProgressBatchCallback,
    notify,
)
from bifurcation_toolkit.helpers.toolkit_configuration import ToolkitConfiguration
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.planar_oracle.classes import CorrectedOrbit, PlanarSeed, Trajectory
from bifurcation_toolkit.predictors.classes import EquilibriumCurvePoint, HomoclinicPredictor
from bifurcation_toolkit.spectral.classes import JordanChain

RECORDS = [
    BamStabilityBoundary,
    BtNormalForm,
    BtPointSpec,
    CorrectedOrbit,
    DdeSolution,
    EquilibriumCurvePoint,
    HomoclinicPredictor,
    JordanChain,
    PlanarSeed,
    Trajectory,
]


class TestToolkitConfiguration:
    def test_defaults(self, monkeypatch) -> None:
        monkeypatch.delenv("BT_FSC_TOL", raising=False)
        monkeypatch.delenv("BT_UNIT_NORM", raising=False)
        config = ToolkitConfiguration()
        assert config.fsc_tol == DEFAULT_FSC_TOL
        assert config.unit_norm is DEFAULT_UNIT_NORM

    def test_environment(self, monkeypatch) -> None:
        monkeypatch.setenv("BT_FSC_TOL", "1e-6")
        monkeypatch.setenv("BT_UNIT_NORM", "no")
        monkeypatch.setenv("BT_ORACLE_INTERVALS", "40")
        config = ToolkitConfiguration()
        assert config.fsc_tol == 1e-6
        assert config.unit_norm is False
        assert config.oracle_intervals == 40

    def test_explicit_settings_win(self, monkeypatch) -> None:
        monkeypatch.setenv("BT_ROOT_TOL", "1e-6")
        config = ToolkitConfiguration({"root_tol": "1e-13", "fd_accuracy": 2})
        assert config.root_tol == 1e-13
        assert config.fd_accuracy == 2

    def test_stencil_accuracy(self) -> None:
        with pytest.raises(ValueError, match="fd_accuracy"):
            ToolkitConfiguration({"fd_accuracy": 3})

    def test_workflow_configuration(self) -> None:
        workflow = BifurcationWorkflow()
        assert isinstance(workflow.configuration, ToolkitConfiguration)
        replacement = ToolkitConfiguration({"newton_maxiter": 5})
        workflow.set_configuration(replacement)
        assert workflow.configuration.newton_maxiter == 5


class TestErrors:
    def test_usage_errors_are_value_errors(self) -> None:
        assert issubclass(DimensionError, ValueError)
        assert issubclass(DimensionError, USAGE_ERRORS)

    def test_numerical_errors_carry_a_magnitude(self) -> None:
        error = InconsistentRightHandSideError("slack too large", magnitude=0.5)
        assert error.magnitude == 0.5
        assert isinstance(error, NUMERICAL_ERRORS)
        assert not isinstance(error, UsageError)

    def test_stiffness_is_a_convergence_failure(self) -> None:
        assert isinstance(StiffnessError("stopped", magnitude=1.0), ConvergenceError)


class TestFitOrder:
    @given(
        order=st.floats(0.5, 6.0),
        constant=st.floats(0.1, 10.0),
    )
    def test_power_law(self, order, constant) -> None:
        scales = np.array([0.2, 0.1, 0.05])
        assert fit_order(scales, constant * scales**order) == pytest.approx(order, rel=1e-9)

    def test_drops_unusable_points(self) -> None:
        scales = [0.2, 0.1, 0.05, 0.025]
        errors = [4e-2, np.nan, 2.5e-3, 0.0]
        assert fit_order(scales, errors) == pytest.approx(2.0)

    def test_needs_two_points(self) -> None:
        with pytest.raises(UsageError):
            fit_order([0.1, 0.2], [1e-3, np.inf])


class TestProgress:
    def test_notify_updates_every_callback(self) -> None:
        callbacks = [ProgressBatchCallback(), ProgressBatchCallback()]
        notify(callbacks, 2, 5, "eps=0.1")
        for callback in callbacks:
            assert (callback.current_batch, callback.total_batches) == (2, 5)
            assert callback.message == "eps=0.1"

    def test_notify_without_callbacks(self) -> None:
        notify(None, 1, 1)


def test_state_columns() -> None:
    assert state_columns(3) == ["x_1", "x_2", "x_3"]


class TestRecords:
    @pytest.mark.parametrize("record", RECORDS, ids=lambda record: record.__name__)
    def test_config_dict(self, record) -> None:
        assert "Config" not in vars(record)
        assert record.model_config.get("arbitrary_types_allowed") is True

    def test_no_deprecation_warning(self) -> None:
        with warnings.catch_warnings():
            warnings.simplefilter("error", PydanticDeprecatedSince20)
            spec = BtPointSpec(
                model_id="toy",
                equilibrium=np.zeros(2),
                parameters=np.zeros(2),
                case="generic",
                fixed={},
            )
        assert spec.model_id == "toy"
