# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np
import pandas as pd

import bifurcation_toolkit.characteristic_matrix.config as config
from bifurcation_toolkit.characteristic_matrix.classes import BorderedSolve, CharMatrix
from bifurcation_toolkit.helpers.constants import SPECTRUM_COLUMNS
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_BORDERED_COND_LIMIT,
    DEFAULT_FSC_TOL,
    DEFAULT_NEWTON_MAXITER,
    DEFAULT_ROOT_DEDUPE_TOL,
    DEFAULT_ROOT_TOL,
    DEFAULT_SCAN_GRID,
)
from bifurcation_toolkit.helpers.errors import ConvergenceError, UsageError

log = logging.getLogger(__name__)


def delta(charmat: CharMatrix, k: int, z: complex) -> np.ndarray:
    return charmat.delta(k, z)


def scaled_determinant(charmat: CharMatrix, z: complex) -> tuple[float, float]:
    """Return |det Delta(z)| and the scale 1 + ||Delta(z)||_F."""
    matrix = charmat.delta(0, z)
    return abs(np.linalg.det(matrix)), 1.0 + float(np.linalg.norm(matrix))


def _newton_step(charmat: CharMatrix, z: complex) -> complex:
    # -det/det' written through the SVD so that it stays finite near a root
    u, s, vh = np.linalg.svd(charmat.delta(0, z))
    if s[-1] == 0.0:
        return 0j
    weights = s[-1] / s
    inverse = vh.conj().T @ np.diag(weights) @ u.conj().T
    trace = np.trace(inverse @ charmat.delta(1, z))
    if trace == 0:
        msg = f"derivative of det Delta vanishes at z={z}"
        raise ConvergenceError(msg)
    return -s[-1] / trace


def refine_root(
    charmat: CharMatrix,
    z0: complex,
    tol: float = DEFAULT_ROOT_TOL,
    maxiter: int = DEFAULT_NEWTON_MAXITER,
) -> complex:
    """Newton iteration on det Delta starting at ``z0``.

    Linear convergence towards a multiple root is detected from the ratio
    of successive steps and the step is multiplied by the estimated
    multiplicity.
    """
    z = complex(z0)
    previous = None
    low, high = config.acceleration_window
    for iteration in range(maxiter):
        det, scale = scaled_determinant(charmat, z)
        if det <= config.determinant_noise_floor * scale**charmat.n:
            break
        step = _newton_step(charmat, z)
        size = abs(step)
        if size <= config.step_tolerance * (1.0 + abs(z)):
            z += step
            break
        if previous is not None and low < size / previous < high:
            multiplicity = round(1.0 / (1.0 - size / previous))
            z += multiplicity * step
            previous = None
        else:
            z += step
            previous = size
        if not np.isfinite(z):
            msg = f"root refinement from {z0} diverged"
            raise ConvergenceError(msg)
        log.debug("refine_root iteration %s: z=%s |dz|=%.3e", iteration, z, size)
    det, scale = scaled_determinant(charmat, z)
    if det > tol * scale:
        msg = (
            f"root refinement from {z0} did not converge within {maxiter} "
            f"iterations, |det Delta| = {det:.3e}"
        )
        raise ConvergenceError(msg, magnitude=det)
    return z


def binv_solve(
    matrix,
    q0,
    p1,
    y,
    fsc_tol: float = DEFAULT_FSC_TOL,
    cond_limit: float = DEFAULT_BORDERED_COND_LIMIT,
) -> tuple[np.ndarray, float]:
    """Solve M x = y with q0^T x = 0 through the bordered system.

    Returns the solution and the slack; a slack above the tolerance raises
    InconsistentRightHandSideError.
    """
    return BorderedSolve(matrix, q0, p1, cond_limit).solve(y, fsc_tol)


def root_multiplicity(
    charmat: CharMatrix, z: complex, radius: float = config.multiplicity_radius
) -> int:
    """Winding number of det Delta around a small circle centred at ``z``."""
    angles = np.linspace(0.0, 2.0 * np.pi, config.multiplicity_points + 1)
    values = np.array(
        [np.linalg.det(charmat.delta(0, z + radius * np.exp(1j * a))) for a in angles]
    )
    phase = np.unwrap(np.angle(values))
    return max(1, round((phase[-1] - phase[0]) / (2.0 * np.pi)))


def _in_region(z: complex, region) -> bool:
    re_min, re_max, im_min, im_max = region
    margin = config.region_margin
    return (
        re_min - margin <= z.real <= re_max + margin
        and im_min - margin <= z.imag <= im_max + margin
    )


def spectrum_scan(
    charmat: CharMatrix,
    region,
    grid=DEFAULT_SCAN_GRID,
    dedupe_tol: float = DEFAULT_ROOT_DEDUPE_TOL,
) -> list[complex]:
    """Grid-seeded Newton sweep for characteristic roots inside a rectangle.

    This is a heuristic: roots without a seed in their basin are missed.
    Roots are repeated according to their multiplicity.
    """
    re_min, re_max, im_min, im_max = region
    if re_min >= re_max or im_min >= im_max:
        msg = f"region must be a non-empty rectangle, got {region}"
        raise UsageError(msg)
    re_count, im_count = grid
    found: list[complex] = []
    for re in np.linspace(re_min, re_max, re_count):
        for im in np.linspace(im_min, im_max, im_count):
            try:
                root = refine_root(charmat, complex(re, im))
            except ConvergenceError:
                log.debug("no root from seed %s", complex(re, im))
                continue
            if not _in_region(root, region):
                continue
            if all(abs(root - other) > dedupe_tol for other in found):
                found.append(root)
    roots = []
    for root in found:
        others = [abs(root - other) for other in found if other is not root]
        radius = min([config.multiplicity_radius] + [0.5 * d for d in others])
        roots.extend([root] * root_multiplicity(charmat, root, radius))
    roots.sort(key=lambda z: (-round(z.real, 8), round(z.imag, 8)))
    log.info("spectrum scan found %s roots in %s", len(roots), region)
    return roots


def spectrum_frame(charmat: CharMatrix, roots) -> pd.DataFrame:
    rows = []
    for root in roots:
        det, _ = scaled_determinant(charmat, root)
        rows.append([root.real, root.imag, det])
    return pd.DataFrame(rows, columns=SPECTRUM_COLUMNS)
