# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np
import pandas as pd

from bifurcation_toolkit.characteristic_matrix.classes import CharMatrix
from bifurcation_toolkit.characteristic_matrix.model import (
    refine_root,
    spectrum_frame,
    spectrum_scan,
)
from bifurcation_toolkit.dde_model.classes import DdeModel
from bifurcation_toolkit.dde_simulation.classes import DdeSolution
from bifurcation_toolkit.dde_simulation.model import defect, integrate
from bifurcation_toolkit.example_models.classes import BtPointSpec
from bifurcation_toolkit.example_models.model import build
from bifurcation_toolkit.helpers.classes import BifurcationWorkflow
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_DDE_BOUND,
    DEFAULT_PREDICTOR_MESH,
    DEFAULT_SCAN_GRID,
)
from bifurcation_toolkit.helpers.errors import UsageError
from bifurcation_toolkit.helpers.progress_batch_callback import ProgressBatchCallback
from bifurcation_toolkit.helpers.toolkit_configuration import ToolkitConfiguration
from bifurcation_toolkit.normal_form.classes import BtNormalForm
from bifurcation_toolkit.normal_form.config import CASES, GENERIC, TRANSCRITICAL
from bifurcation_toolkit.normal_form.generic import generic_normal_form
from bifurcation_toolkit.normal_form.residual import residual_order, system_defects
from bifurcation_toolkit.normal_form.transcritical import transcritical_normal_form
from bifurcation_toolkit.planar_oracle.model import convergence_table
from bifurcation_toolkit.predictors.classes import (
    EquilibriumCurvePoint,
    HomoclinicPredictor,
)
from bifurcation_toolkit.predictors.config import (
    GENERIC as GENERIC_PREDICTOR,
)
from bifurcation_toolkit.predictors.config import (
    TRANSCRITICAL_MINUS,
    TRANSCRITICAL_PLUS,
)
from bifurcation_toolkit.predictors.indicators import curve_indicator
from bifurcation_toolkit.predictors.model import equilibrium_curves, homoclinic
from bifurcation_toolkit.spectral.classes import CenterSpace, JordanChain
from bifurcation_toolkit.spectral.model import compute_jordan

log = logging.getLogger(__name__)


class AnalyzeBtPoint(BifurcationWorkflow):
    """Normal form, predictors and checks at one Bogdanov-Takens point.

    Intermediate results are computed on first use and cached.
    """

    def __init__(
        self,
        model: DdeModel,
        equilibrium,
        parameters,
        case: str,
        configuration: ToolkitConfiguration | None = None,
    ) -> None:
        super().__init__(configuration)
        if case not in CASES:
            msg = f"case must be {GENERIC!r} or {TRANSCRITICAL!r}, got {case!r}"
            raise UsageError(msg)
        self.model = model
        self.equilibrium = np.asarray(equilibrium, dtype=float)
        self.parameters = np.asarray(parameters, dtype=float)
        self.case = case
        self._charmat: CharMatrix | None = None
        self._chain: JordanChain | None = None
        self._nf: BtNormalForm | None = None

    @classmethod
    def from_spec(
        cls,
        model: DdeModel,
        spec: BtPointSpec,
        configuration: ToolkitConfiguration | None = None,
    ) -> "AnalyzeBtPoint":
        return cls(model, spec.equilibrium, spec.parameters, spec.case, configuration)

    @classmethod
    def from_model_id(
        cls,
        model_id: str,
        overrides: dict | None = None,
        configuration: ToolkitConfiguration | None = None,
    ) -> "AnalyzeBtPoint":
        model, spec = build(model_id, overrides)
        return cls.from_spec(model, spec, configuration)

    def characteristic_matrix(self) -> CharMatrix:
        if self._charmat is None:
            self._charmat = CharMatrix(
                self.model,
                self.model.equilibrium_history(self.equilibrium),
                self.parameters,
                self.configuration.fd_accuracy,
            )
        return self._charmat

    def jordan_chain(self) -> JordanChain:
        if self._chain is None:
            self._chain = compute_jordan(
                self.characteristic_matrix(),
                nullspace_tol=self.configuration.nullspace_tol,
                fsc_tol=self.configuration.fsc_tol,
                unit_norm=self.configuration.unit_norm,
            )
        return self._chain

    def center_space(self) -> CenterSpace:
        return CenterSpace(self.characteristic_matrix(), self.jordan_chain())

    def leading_eigenvalue(self) -> complex:
        """Characteristic root refined from zero, a numerical zero at the point."""
        return refine_root(
            self.characteristic_matrix(),
            0.0,
            tol=self.configuration.root_tol,
            maxiter=self.configuration.newton_maxiter,
        )

    def normal_form(self) -> BtNormalForm:
        if self._nf is None:
            cascade = (
                generic_normal_form if self.case == GENERIC else transcritical_normal_form
            )
            self._nf = cascade(
                self.model,
                self.center_space(),
                self.equilibrium,
                self.parameters,
                fsc_tol=self.configuration.fsc_tol,
                accuracy=self.configuration.fd_accuracy,
            )
            log.info("%s normal form a=%s b=%s", self.case, self._nf.a, self._nf.b)
        return self._nf

    def set_normal_form(self, nf: BtNormalForm) -> None:
        """Use a previously computed normal form, e.g. one reloaded from JSON."""
        if nf.case != self.case:
            msg = f"normal form case {nf.case!r} does not match {self.case!r}"
            raise UsageError(msg)
        self._nf = nf

    def predictor_case(self, sign: int = 1) -> str:
        if self.case == GENERIC:
            return GENERIC_PREDICTOR
        return TRANSCRITICAL_PLUS if sign == 1 else TRANSCRITICAL_MINUS

    def homoclinic(
        self,
        eps: float,
        order: int = 3,
        sign: int = 1,
        points: int = DEFAULT_PREDICTOR_MESH,
    ) -> HomoclinicPredictor:
        return homoclinic(self.normal_form(), eps, order, sign, points=points)

    def equilibrium_curves(self, eps: float) -> list[EquilibriumCurvePoint]:
        return equilibrium_curves(self.normal_form(), eps)

    def curve_indicators(self, eps_values) -> pd.DataFrame:
        """Test function values at the predicted curve points, one row per label and eps."""
        rows = []
        for eps in eps_values:
            for point in self.equilibrium_curves(eps):
                value = curve_indicator(
                    self.model,
                    self.normal_form(),
                    point,
                    self.configuration.fd_accuracy,
                )
                rows.append({"label": point.label, "eps": eps, "indicator": value})
        return pd.DataFrame(rows, columns=["label", "eps", "indicator"])

    def residual_order(self, direction=(1.0, 1.0, 1.0, 1.0)) -> tuple[float, list[float]]:
        return residual_order(self.normal_form(), self.model, direction)

    def system_defects(self) -> dict[str, float]:
        return system_defects(
            self.normal_form(),
            self.model,
            self.center_space(),
            self.configuration.fd_accuracy,
        )

    def convergence_table(
        self,
        eps_values,
        sign: int = 1,
        callbacks: list[ProgressBatchCallback] | None = None,
    ) -> pd.DataFrame:
        nf = self.normal_form()
        return convergence_table(
            self.predictor_case(sign),
            nf.a,
            nf.b,
            eps_values,
            intervals=self.configuration.oracle_intervals,
            callbacks=callbacks,
        )

    def defect(self, predictor: HomoclinicPredictor) -> float:
        """Defect of a predicted profile in the full delay equation."""
        return defect(self.model, predictor.alpha, predictor.mesh, predictor.profile)

    def simulate(
        self,
        tspan: tuple[float, float],
        history=None,
        alpha=None,
        step: float | None = None,
        bound: float = DEFAULT_DDE_BOUND,
        reverse: bool = False,
    ) -> DdeSolution:
        """Integrate from ``history`` (default: the equilibrium) at ``alpha`` (default: the point)."""
        return integrate(
            self.model,
            self.parameters if alpha is None else alpha,
            self.equilibrium if history is None else history,
            tspan,
            step=step,
            bound=bound,
            reverse=reverse,
            step_fraction=self.configuration.dde_step_fraction,
        )

    def spectrum(self, region, grid=DEFAULT_SCAN_GRID) -> pd.DataFrame:
        charmat = self.characteristic_matrix()
        return spectrum_frame(charmat, spectrum_scan(charmat, region, grid))
