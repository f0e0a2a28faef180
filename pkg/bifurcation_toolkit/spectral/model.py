# Copyright (c) 2024 Microsoft Corporation. All rights reserved.
# Licensed under the MIT license. See LICENSE file in the project.
#
import logging

import numpy as np

from bifurcation_toolkit.characteristic_matrix.classes import CharMatrix
from bifurcation_toolkit.characteristic_matrix.model import binv_solve
from bifurcation_toolkit.helpers.defaults import (
    DEFAULT_DEGENERACY_TOL,
    DEFAULT_FSC_TOL,
    DEFAULT_NULLSPACE_TOL,
    DEFAULT_UNIT_NORM,
)
from bifurcation_toolkit.helpers.errors import (
    DegenerateChainError,
    InconsistentRightHandSideError,
    NotBogdanovTakensError,
    UsageError,
)
from bifurcation_toolkit.spectral.classes import CenterSpace, JordanChain, PolyFun

log = logging.getLogger(__name__)


def _psi_weights(charmat: CharMatrix, chain: JordanChain, i: int, degree: int):
    # row vector r_k with <psi_i, theta^k v> = r_k v
    p0, p1 = chain.p0, chain.p1
    weights = []
    for k in range(degree + 1):
        first = charmat.at_zero(k + 1) / (k + 1)
        if i == 1:
            weights.append(p1 @ first)
        else:
            second = charmat.at_zero(k + 2) / ((k + 1) * (k + 2))
            weights.append(p0 @ first + p1 @ second)
    return weights


def _pair(charmat: CharMatrix, chain: JordanChain, i: int, w: PolyFun) -> float:
    if i not in (0, 1):
        msg = f"adjoint eigenfunction index must be 0 or 1, got {i}"
        raise UsageError(msg)
    weights = _psi_weights(charmat, chain, i, w.degree)
    return float(sum(r @ c for r, c in zip(weights, w.coeffs, strict=True)))


def pair_psi(space: CenterSpace, i: int, w: PolyFun) -> float:
    """Pairing <psi_i, w> of an adjoint eigenfunction with a polynomial.

    Uses only Delta and its derivatives at zero, so the adjoint
    eigenfunctions are never formed.
    """
    return _pair(space.charmat, space.chain, i, w)


def pairing_matrix(space: CenterSpace) -> np.ndarray:
    """The 2 x 2 matrix of <psi_i, phi_j>."""
    phis = (space.phi0, space.phi1)
    return np.array([[pair_psi(space, i, phi) for phi in phis] for i in (0, 1)])


def compute_jordan(
    charmat: CharMatrix,
    nullspace_tol: float = DEFAULT_NULLSPACE_TOL,
    fsc_tol: float = DEFAULT_FSC_TOL,
    unit_norm: bool = DEFAULT_UNIT_NORM,
    scale: float = 1.0,
) -> JordanChain:
    """Normalized Jordan chains of Delta for the double eigenvalue zero.

    The left chain is scaled so that <psi_i, phi_j> is the identity and
    q1 is shifted along q0 so that <psi_0, phi_1> = 0. With ``unit_norm``
    q1 is further made orthogonal to q0, compensated in p0.
    """
    d0, d1 = charmat.at_zero(0), charmat.at_zero(1)
    u, s, vh = np.linalg.svd(d0)
    if s[0] == 0.0:
        null_dimension = charmat.n
    else:
        null_dimension = int(np.count_nonzero(s < nullspace_tol * s[0]))
    if null_dimension != 1:
        msg = (
            f"zero must be a geometrically simple eigenvalue, nullspace has "
            f"dimension {null_dimension} (singular values {s.tolist()})"
        )
        raise NotBogdanovTakensError(msg)
    q0 = vh[-1].conj()
    p1 = u[:, -1].conj()
    q0 = np.real(q0) * np.sign(np.real(q0)[np.argmax(np.abs(q0))]) * scale
    p1 = np.real(p1)
    try:
        q1, _ = binv_solve(d0, q0, p1, -d1 @ q0, fsc_tol)
        p0, _ = binv_solve(d0.T, p1, q0, -d1.T @ p1, fsc_tol)
    except InconsistentRightHandSideError as e:
        msg = "zero is a simple eigenvalue, no Jordan chain of length two exists"
        raise NotBogdanovTakensError(msg, magnitude=e.magnitude) from e

    chain = normalize_chain(charmat, JordanChain(q0=q0, q1=q1, p1=p1, p0=p0), unit_norm)
    log.debug("Jordan chain residuals %s", chain.residuals(charmat))
    return chain


def normalize_chain(
    charmat: CharMatrix, chain: JordanChain, unit_norm: bool = DEFAULT_UNIT_NORM
) -> JordanChain:
    """Scale and shift a Jordan chain so that the pairing matrix is the identity.

    Applying it to a normalized chain returns the same chain.
    """
    q0, q1 = chain.q0, chain.q1
    phi0 = PolyFun.constant(q0)
    norm00 = _pair(charmat, chain, 0, phi0)
    if abs(norm00) < DEFAULT_DEGENERACY_TOL:
        msg = f"<psi_0, phi_0> = {norm00:.3e} vanishes, the chain cannot be normalized"
        raise DegenerateChainError(msg, magnitude=abs(norm00))
    chain = JordanChain(q0=q0, q1=q1, p1=chain.p1 / norm00, p0=chain.p0 / norm00)
    shift = _pair(charmat, chain, 0, PolyFun.linear(q0, q1))
    chain = JordanChain(q0=q0, q1=q1 - shift * q0, p1=chain.p1, p0=chain.p0)

    if unit_norm:
        c = -float(chain.q1 @ q0) / float(q0 @ q0)
        chain = JordanChain(
            q0=q0, q1=chain.q1 + c * q0, p1=chain.p1, p0=chain.p0 - c * chain.p1
        )
    return chain


def fredholm_residual(space: CenterSpace, kappa, w: PolyFun) -> float:
    """p1 kappa - <psi_1, w>; zero exactly when binv0 is solvable."""
    return float(space.chain.p1 @ np.asarray(kappa)) - pair_psi(space, 1, w)


def binv0(
    space: CenterSpace,
    kappa,
    w: PolyFun,
    fsc_tol: float = DEFAULT_FSC_TOL,
    check: bool = True,
) -> tuple[PolyFun, np.ndarray, float]:
    """Polynomial solution v of v' = w, v'(0) - sum_j A_j v(-tau_j) = kappa.

    Returns (v, xi, slack) with xi = v(0) orthogonal to q0. Multiples of
    phi0 are not added.
    """
    kappa = np.asarray(kappa, dtype=float)
    charmat = space.charmat
    rhs = kappa.copy()
    for k, c_k in enumerate(w.coeffs):
        rhs -= charmat.at_zero(k + 1) @ c_k / (k + 1)
    xi, slack = space.bordered.solve(rhs, fsc_tol, check=check)
    xi = np.real(xi)
    v = PolyFun.constant(xi) + w.integrate_from_zero()
    return v, xi, float(slack)


def binv0_defect(space: CenterSpace, v: PolyFun, kappa, w: PolyFun) -> float:
    """Max-norm residual of the defining system of ``binv0`` at ``v``."""
    charmat = space.charmat
    samples = v.sample(charmat.delays).values
    boundary = v.derivative()(0.0) - sum(
        a_j @ samples[:, j] for j, a_j in enumerate(charmat.delay_jacobians)
    )
    ode = v.derivative() - w
    return max(
        float(np.max(np.abs(boundary - np.asarray(kappa)))),
        ode.norm(),
    )
