"""Gauge normalization and orbit distance.

The normal form has two parts: Coulomb fixing (a divergence-free connection,
obtained by solving a Poisson equation for the gauge phase) and component
fixing (a winding transform shifting the constant harmonic part of each a_mu
into the fundamental domain [-pi/L_mu, pi/L_mu) of the torus of flat
connections). Configurations in normal form differ within a gauge orbit only
by a global constant phase, so aligning that phase yields a pseudometric on
orbits, gauge_distance.

The Sobolev bound ||a||_{1,2} <= C ||d1 a|| + C' for normalized a uses
per-lattice constants from an eigen-decomposition of the discrete Hodge
Laplacian on 1-forms (hodge_constants); they are computed once per lattice
and cached, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import Configuration, GaugeTransform, apply_gauge
from .lattice import (
    Lattice,
    codiff1,
    codiff2,
    d0,
    d1,
    l2_inner,
    l2_norm,
    poisson_solve,
    sobolev12_norm,
)


@dataclass(frozen=True)
class GaugeFixReport:
    """What a gauge-fixing step did.

    zeta: the zero-mean phase solving the Coulomb equation (zero for a pure
        component fix). winding: the integer harmonic multiples detected and
        removed (the applied transform carries the opposite sign). residual:
        ||codiff1(a')|| of the returned configuration. harmonic: the mean of
        a'_mu per direction; after component fixing it lies in
        [-pi/L_mu, pi/L_mu).
    """

    zeta: np.ndarray
    winding: tuple[int, int, int, int]
    residual: float
    harmonic: tuple[float, float, float, float]


def _report(cfg: Configuration, zeta, winding) -> GaugeFixReport:
    lat = cfg.lattice
    a = cfg.gauge.a
    residual = l2_norm(lat, codiff1(lat, a))
    harmonic = tuple(float(a[..., mu].mean()) for mu in range(4))
    return GaugeFixReport(zeta=zeta, winding=winding, residual=residual, harmonic=harmonic)


def coulomb_fix(cfg: Configuration) -> tuple[Configuration, GaugeFixReport]:
    """Gauge-transform cfg so that codiff1(a) = 0.

    Solves laplacian0(zeta) = -codiff1(a), which is always solvable on the
    periodic lattice because codiff1 output sums to zero, and applies the
    zero-mean phase zeta with no winding. The constant harmonic part of a is
    untouched (d0 of a periodic scalar has zero mean in every direction).
    """
    lat = cfg.lattice
    rho = -codiff1(lat, cfg.gauge.a)
    # the exact source sums to zero (telescoping); remove its roundoff mean
    # so the solver's solvability gate is never tripped by noise
    rho = rho - rho.mean()
    zeta = poisson_solve(lat, rho)
    fixed = apply_gauge(GaugeTransform(zeta), cfg)
    return fixed, _report(fixed, zeta, (0, 0, 0, 0))


def _round_ties_toward_zero(x: float) -> int:
    # round(2.5) must give 2: ties go toward zero so the reduced harmonic
    # part stays inside the half-open fundamental domain on the negative side.
    return int(math.copysign(math.ceil(abs(x) - 0.5), x))


def component_fix(cfg: Configuration) -> tuple[Configuration, GaugeFixReport]:
    """Shift the constant part of a_mu into [-pi/L_mu, pi/L_mu) by winding.

    The mean of a_mu is h_mu = (2 pi / L_mu) * (k_mu + r_mu) with integer
    k_mu and r_mu in [-1/2, 1/2); a winding transform by -k_mu removes the
    integer part exactly. The report records k. Winding transforms add a
    constant to a, so the Coulomb residual is preserved.
    """
    lat = cfg.lattice
    a = cfg.gauge.a
    k = tuple(
        _round_ties_toward_zero(float(a[..., mu].mean()) * lat.lengths[mu] / (2.0 * np.pi))
        for mu in range(4)
    )
    undo = GaugeTransform(np.zeros(lat.shape), tuple(-ki for ki in k))
    fixed = apply_gauge(undo, cfg)
    return fixed, _report(fixed, np.zeros(lat.shape), k)


def full_gauge_fix(cfg: Configuration) -> tuple[Configuration, GaugeFixReport]:
    """Coulomb fix followed by component fix.

    The result satisfies codiff1(a) ~ 0 (to solver accuracy) with the
    harmonic part in the fundamental domain, and obeys the Sobolev bound
    ||a||_{1,2} <= C ||d1 a|| + C' with constants from hodge_constants.
    """
    fixed, coulomb = coulomb_fix(cfg)
    fixed, component = component_fix(fixed)
    report = GaugeFixReport(
        zeta=coulomb.zeta,
        winding=component.winding,
        residual=component.residual,
        harmonic=component.harmonic,
    )
    return fixed, report


@dataclass(frozen=True)
class HodgeConstants:
    """Per-lattice constants for the normalized Sobolev bound.

    spectral_gap: smallest nonzero eigenvalue of the Hodge Laplacian
        d0 codiff1 + codiff2 d1 on 1-forms. curl_factor C and
        harmonic_radius C' give ||a||_{1,2} <= C ||d1 a|| + C' for every a
        with codiff1(a) = 0 and mean(a_mu) in [-pi/L_mu, pi/L_mu).
    """

    spectral_gap: float
    curl_factor: float
    harmonic_radius: float


def _hodge1_matrix(lat: Lattice) -> np.ndarray:
    n = 4 * lat.nsites
    mat = np.empty((n, n))
    basis = np.zeros(lat.shape + (4,))
    for j in range(n):
        basis.flat[j] = 1.0
        image = d0(lat, codiff1(lat, basis)) + codiff2(lat, d1(lat, basis))
        mat[:, j] = image.ravel()
        basis.flat[j] = 0.0
    return mat


@lru_cache(maxsize=None)
def hodge_constants(lat: Lattice) -> HodgeConstants:
    """Eigen-decomposition oracle for the 1-form Hodge Laplacian.

    Dense and O((4 V)^3), intended for desk-scale lattices; results are
    cached per lattice. Derivation of the bound: split a into its constant
    part abar and fluctuation at. For codiff1(a) = 0 the identity
    sum_mu ||d0 a_mu||^2 = ||d1 a||^2 + ||codiff1 a||^2 gives
    ||grad at|| = ||d1 a||, the spectral gap gives
    ||at||^2 <= ||d1 a||^2 / lambda_1, and the fundamental domain bounds
    ||abar|| by sqrt(V sum_mu (pi/L_mu)^2).
    """
    evals = np.linalg.eigvalsh(_hodge1_matrix(lat))
    tol = 1e-8 * max(float(evals[-1]), 1.0)
    gap = float(evals[evals > tol][0])
    curl_factor = math.sqrt(1.0 + 1.0 / gap)
    harmonic_radius = math.sqrt(
        lat.volume * sum((np.pi / length) ** 2 for length in lat.lengths)
    )
    return HodgeConstants(gap, curl_factor, harmonic_radius)


def gauge_distance(cfg1: Configuration, cfg2: Configuration) -> float:
    """L^{1,2} distance between gauge orbits.

    Both configurations are brought to normal form, the leftover constant
    phase of phi2 is aligned to maximize Re<phi1, phi2>, and the distance is
    ||a1 - a2||_{1,2} + ||phi1 - phi2||_{1,2}. Vanishes (to solver accuracy)
    on gauge orbits; symmetric; satisfies the triangle inequality up to the
    same accuracy.
    """
    if cfg1.lattice != cfg2.lattice:
        raise ValueError("gauge_distance needs configurations on the same lattice")
    if not np.array_equal(cfg1.gauge.flux, cfg2.gauge.flux):
        raise ValueError("gauge_distance needs configurations with the same flux")
    lat = cfg1.lattice
    fixed1, _ = full_gauge_fix(cfg1)
    fixed2, _ = full_gauge_fix(cfg2)
    overlap = l2_inner(lat, fixed1.phi, fixed2.phi)
    phase = np.exp(1j * np.angle(overlap)) if abs(overlap) > 0.0 else 1.0
    da = fixed1.gauge.a - fixed2.gauge.a
    dphi = fixed1.phi - phase * fixed2.phi
    return sobolev12_norm(lat, da) + sobolev12_norm(lat, dphi)
