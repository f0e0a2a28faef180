# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import json

from bifurcation_toolkit.cli.main import main
from bifurcation_toolkit.example_models.config import VAN_DER_POL
from bifurcation_toolkit.helpers.constants import EXIT_SUCCESS, NORMAL_FORM_FILE


def run_pipeline(out) -> None:
    common = ["--model", VAN_DER_POL, "--out", str(out)]
    assert main(["analyze", *common]) == EXIT_SUCCESS
    nf = str(out / NORMAL_FORM_FILE)
    assert main(["predict", *common, "--nf", nf, "--eps", "0.05", "0.1"]) == EXIT_SUCCESS
    assert main(["simulate", *common, "--seed", "11"]) == EXIT_SUCCESS


class TestPipeline:
    def test_artifacts_are_byte_identical(self, tmp_path) -> None:
        first = tmp_path / "first"
        second = tmp_path / "second"
        run_pipeline(first)
        run_pipeline(second)

        names = sorted(path.name for path in first.iterdir())
        assert names == sorted(path.name for path in second.iterdir())
        assert "curves.csv" in names
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_stored_normal_form(self, tmp_path) -> None:
        assert main(["analyze", "--model", VAN_DER_POL, "--out", str(tmp_path)]) == EXIT_SUCCESS
        stored = json.loads((tmp_path / NORMAL_FORM_FILE).read_text(encoding="utf-8"))
        assert stored["case"] == "transcritical"
        assert stored["a"] * stored["b"] < 0
