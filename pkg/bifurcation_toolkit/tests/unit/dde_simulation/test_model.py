# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

import numpy as np
import pytest

from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.dde_simulation.config import (
    CONSTANT_HISTORY,
    FUNCTION_HISTORY,
    SAMPLED_HISTORY,
)
from bifurcation_toolkit.dde_simulation.model import (
    defect,
    history_function,
    integrate,
    trajectory_frame,
)
from bifurcation_toolkit.helpers.errors import DimensionError, UsageError

# x' = c x(t - 1) has the solution exp(-t / 2) for this c
RATE = -0.5
COUPLING = RATE * np.exp(RATE)


def delayed_decay(coupling: float = -1.0) -> DdeModel:
    return DdeModel(1, [0.0, 1.0], lambda xi, alpha: np.array([coupling * xi[0, 1]]))


def growth() -> DdeModel:
    return DdeModel(1, [0.0], lambda xi, alpha: np.array([xi[0, 0]]))


def chebyshev_times(start: float, end: float, points: int) -> np.ndarray:
    return 0.5 * (start + end) - 0.5 * (end - start) * np.cos(
        np.pi * np.arange(points) / (points - 1)
    )


class TestHistoryFunction:
    def test_kinds(self) -> None:
        model = delayed_decay()
        assert history_function(model, [1.0], 0.0)[1] == CONSTANT_HISTORY
        assert history_function(model, np.cos, 0.0)[1] == FUNCTION_HISTORY
        times = np.linspace(-1.0, 0.0, 11)
        past, kind = history_function(model, (times, np.sin(times)[None, :]), 0.0)
        assert kind == SAMPLED_HISTORY
        assert past(-0.5)[0] == pytest.approx(np.sin(-0.5), abs=1e-5)

    def test_constant_of_wrong_size(self) -> None:
        with pytest.raises(DimensionError):
            history_function(delayed_decay(), [1.0, 2.0], 0.0)

    def test_samples_must_cover_the_delay(self) -> None:
        times = np.linspace(-0.5, 0.0, 6)
        with pytest.raises(UsageError):
            history_function(delayed_decay(), (times, np.zeros((1, 6))), 0.0)


class TestIntegrate:
    def test_method_of_steps(self) -> None:
        # x = 1 - t on [0, 1] and 1 - t + (t - 1)^2 / 2 on [1, 2]
        solution = integrate(delayed_decay(), [0.0, 0.0], [1.0], (0.0, 2.0))
        assert solution.x[0, -1] == pytest.approx(-0.5, abs=1e-12)
        assert solution(1.5)[0] == pytest.approx(-0.375, abs=1e-12)
        assert solution(-0.3)[0] == 1.0
        assert not solution.terminated

    def test_fourth_order_in_the_step(self) -> None:
        model = delayed_decay(COUPLING)

        def history(t: float) -> np.ndarray:
            return np.array([np.exp(RATE * t)])

        def error(step: float) -> float:
            solution = integrate(model, [0.0, 0.0], history, (0.0, 3.0), step=step)
            return abs(solution.x[0, -1] - np.exp(RATE * 3.0))

        assert error(0.1) / error(0.05) == pytest.approx(16.0, rel=0.2)

    def test_ordinary_equation(self) -> None:
        model = DdeModel(1, [0.0], lambda xi, alpha: np.array([-xi[0, 0]]))
        solution = integrate(model, [0.0, 0.0], [1.0], (0.0, 2.0))
        assert solution.x[0, -1] == pytest.approx(np.exp(-2.0), rel=1e-10)

    def test_bound_stops_the_run(self) -> None:
        solution = integrate(growth(), [0.0, 0.0], [1.0], (0.0, 20.0), bound=10.0)
        assert solution.terminated
        assert solution.t[-1] == pytest.approx(np.log(10.0), abs=0.05)
        assert solution.events[0].startswith("bound")

    def test_reverse_flips_the_field(self) -> None:
        model = DdeModel(1, [0.0], lambda xi, alpha: np.array([-xi[0, 0]]))
        solution = integrate(model, [0.0, 0.0], [1.0], (0.0, 1.0), reverse=True)
        assert solution.reverse
        assert solution.x[0, -1] == pytest.approx(np.e, rel=1e-10)

    @pytest.mark.parametrize(
        "kwargs",
        [{"tspan": (1.0, 0.0)}, {"step": 2.0}, {"step": -0.1}, {"bound": 0.0}],
    )
    def test_rejected_arguments(self, kwargs) -> None:
        settings = {"tspan": (0.0, 2.0), **kwargs}
        with pytest.raises(UsageError):
            integrate(delayed_decay(), [0.0, 0.0], [1.0], **settings)

    def test_trajectory_frame(self) -> None:
        solution = integrate(delayed_decay(), [0.0, 0.0], [1.0], (0.0, 1.0), step=0.25)
        frame = trajectory_frame(solution)
        assert list(frame.columns) == ["t", "x_1"]
        np.testing.assert_allclose(frame["t"], [0.0, 0.25, 0.5, 0.75, 1.0])


class TestDefect:
    def test_exact_solution(self) -> None:
        times = chebyshev_times(0.0, 5.0, 61)
        profile = np.exp(RATE * times)[None, :]
        assert defect(delayed_decay(COUPLING), [0.0, 0.0], times, profile) < 1e-9

    def test_equilibrium_profile(self) -> None:
        times = chebyshev_times(0.0, 4.0, 41)
        assert defect(delayed_decay(), [0.0, 0.0], times, np.zeros((1, 41))) <= 1e-10

    def test_wrong_solution(self) -> None:
        times = chebyshev_times(0.0, 5.0, 61)
        profile = np.exp(0.8 * RATE * times)[None, :]
        assert defect(delayed_decay(COUPLING), [0.0, 0.0], times, profile) > 1e-3

    def test_window_shorter_than_the_delay(self) -> None:
        times = chebyshev_times(0.0, 0.5, 11)
        with pytest.raises(UsageError):
            defect(delayed_decay(), [0.0, 0.0], times, np.zeros((1, 11)))

    def test_profile_shape(self) -> None:
        with pytest.raises(DimensionError):
            defect(delayed_decay(), [0.0, 0.0], np.linspace(0.0, 3.0, 5), np.zeros((2, 5)))
