"""Spin^c fiber algebra: Clifford multiplication and bivector actions.

Spinors carry two complex components on the trailing axis. The four unitary
generators sigma_mu map the positive spinor bundle to the negative one; the
bivectors B_{mu nu} = -sigma_mu^dag sigma_nu act on the positive bundle, are
skew-Hermitian, and form a self-dual matrix-valued 2-form for the table built
by standard_table. All operations are pure and fiberwise, broadcasting over
any leading site axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import PLANES, hodge_star2

# standard Hermitian spin matrices, tau1 tau2 = i tau3
_TAU = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class CliffordTable:
    """Four 2x2 generators sigma_mu plus the derived plane bivectors.

    The constructor only checks shape; use relation_defect to verify the
    Clifford relations, so deliberately broken tables can still be built
    for negative controls.
    """

    sigma: np.ndarray
    bivectors: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sig = np.asarray(self.sigma, dtype=complex)
        if sig.shape != (4, 2, 2):
            raise ValueError(f"sigma must have shape (4, 2, 2), got {sig.shape}")
        biv = np.empty((6, 2, 2), dtype=complex)
        for i, (mu, nu) in enumerate(PLANES):
            biv[i] = -sig[mu].conj().T @ sig[nu]
        object.__setattr__(self, "sigma", sig)
        object.__setattr__(self, "bivectors", biv)


def standard_table() -> CliffordTable:
    """Reference table: sigma_4 = Id, sigma_k = -i tau_k.

    The -i sign on the spatial generators makes the bivectors self-dual for
    the plane ordering and Hodge star used here (+i would land them in the
    anti-self-dual fibers and kill the quadratic form's pairing with F+).
    """
    sig = np.empty((4, 2, 2), dtype=complex)
    sig[:3] = -1j * _TAU
    sig[3] = np.eye(2)
    return CliffordTable(sig)


def relation_defect(tbl: CliffordTable) -> float:
    """Worst violation of unitarity and both Clifford anticommutators."""
    sig = tbl.sigma
    eye = np.eye(2)
    worst = 0.0
    for mu in range(4):
        dag = sig[mu].conj().T
        worst = max(worst, float(np.max(np.abs(dag @ sig[mu] - eye))))
        for nu in range(4):
            want = 2.0 * eye if mu == nu else np.zeros((2, 2))
            lhs = dag @ sig[nu] + sig[nu].conj().T @ sig[mu]
            worst = max(worst, float(np.max(np.abs(lhs - want))))
            lhs = sig[mu] @ sig[nu].conj().T + sig[nu] @ dag
            worst = max(worst, float(np.max(np.abs(lhs - want))))
    return worst


def _check_spinor(phi: np.ndarray):
    if phi.shape[-1] != 2:
        raise ValueError(f"spinor fiber must have 2 components, got {phi.shape[-1]}")


def spinor_inner(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Fiberwise Hermitian product, conjugate-linear in the second slot."""
    _check_spinor(u)
    return np.einsum("...a,...a->...", u, np.conj(v))


def clifford_mult(tbl: CliffordTable, mu: int, phi: np.ndarray) -> np.ndarray:
    """Apply sigma_mu fiberwise (positive spinors to negative spinors)."""
    if not 0 <= mu < 4:
        raise ValueError(f"direction must be in 0..3, got {mu}")
    _check_spinor(phi)
    return np.einsum("ab,...b->...a", tbl.sigma[mu], phi)


def clifford_mult_adjoint(tbl: CliffordTable, mu: int, psi: np.ndarray) -> np.ndarray:
    """Apply sigma_mu^dag fiberwise (negative spinors back to positive)."""
    if not 0 <= mu < 4:
        raise ValueError(f"direction must be in 0..3, got {mu}")
    _check_spinor(psi)
    return np.einsum("ba,...b->...a", np.conj(tbl.sigma[mu]), psi)


def quadratic_form(tbl: CliffordTable, phi: np.ndarray) -> np.ndarray:
    """Quadratic spinor-to-2-form map sigma(phi).

    Components (i/4) <B_{mu nu} phi, phi> on the ordered planes. Each i B is
    Hermitian, so the values are real (the float imaginary dust is dropped),
    and for the standard table the output fiber is self-dual with
    |sigma(phi)|^2 = |phi|^4 / 8.
    """
    _check_spinor(phi)
    val = 0.25j * np.einsum(
        "iab,...b,...a->...i", tbl.bivectors, phi, np.conj(phi)
    )
    return np.ascontiguousarray(val.real)


def two_form_action(tbl: CliffordTable, omega: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Clifford action of a real 2-form fiber, sum omega_{mu nu} B_{mu nu} phi.

    Takes the full 2-form; anti-self-dual input acts as zero because the
    bivectors themselves are self-dual.
    """
    _check_spinor(phi)
    if omega.shape[-1] != 6:
        raise ValueError(f"2-form fiber must have 6 components, got {omega.shape[-1]}")
    return np.einsum("...i,iab,...b->...a", omega, tbl.bivectors, phi)


def selfdual_action(tbl: CliffordTable, omega: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Action of a self-dual 2-form on positive spinors.

    Rejects omega whose anti-self-dual part exceeds 1e-10 of its norm; use
    two_form_action when a mixed form is intended. i times the result is a
    Hermitian function of phi, and pairing against phi itself gives
    i <sum sigma(phi) B phi, phi> = 4 |sigma(phi)|^2 = |phi|^4 / 2.
    """
    omega = np.asarray(omega)
    if omega.shape[-1] != 6:
        raise ValueError(f"2-form fiber must have 6 components, got {omega.shape[-1]}")
    # omega - *omega is twice the anti-self-dual projection
    asd2 = np.linalg.norm(omega - hodge_star2(omega))
    if asd2 > 2e-10 * np.linalg.norm(omega):
        raise ValueError(
            f"2-form has anti-self-dual part {asd2 / 2.0:.3e}, beyond tolerance"
        )
    return two_form_action(tbl, omega, phi)
