# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#


class ProgressBatchCallback:
    """Class for progress callbacks over perturbation sweeps."""

    def __init__(self):
        self.current_batch = 0
        self.total_batches = 0
        self.message = ""

    def on_batch_change(self, current: int, total: int, message: str = ""):
        """Handle when a sweep moves to the next perturbation value."""
        self.current_batch = current
        self.total_batches = total
        self.message = message


def notify(
    callbacks: list[ProgressBatchCallback] | None,
    current: int,
    total: int,
    message: str = "",
) -> None:
    for callback in callbacks or []:
        callback.on_batch_change(current, total, message)
