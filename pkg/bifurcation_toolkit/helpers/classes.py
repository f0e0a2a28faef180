# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#

from bifurcation_toolkit.helpers.toolkit_configuration import ToolkitConfiguration


class BifurcationWorkflow:
    # Base class for all analysis workflows
    def __init__(self, configuration: ToolkitConfiguration | None = None) -> None:
        self.configuration = configuration or ToolkitConfiguration()

    def set_configuration(self, configuration: ToolkitConfiguration) -> None:
        self.configuration = configuration
