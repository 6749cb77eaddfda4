"""Energy minimization: Armijo backtracking descent with optional conjugate
directions, periodic gauge re-fixing, and trajectory diagnostics.

Directions live in the same (da, dphi) cotangent shape as the gradient, and
descent is measured by the pairing <g, d> = <g.da, d.da> + 2 Re<g.dphi, d.dphi>
under which the gradient is exact. The recorded trajectory carries the
per-iterate quantities the convergence theory is about: energy, gradient
norm, sup|phi|, the excess diagnostics of the maximum principle, and the
gauge distance between successive recorded iterates (whose decay is the
Cauchy signature of a convergent minimizing sequence).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Configuration
from .functional import Gradient, energy_weitzenbock, excess_report, gradient
from .gaugefix import full_gauge_fix, gauge_distance
from .lattice import l2_inner, linf_norm

MAX_BACKTRACKS = 60


class NonDescentDirectionError(ValueError):
    """Raised when a search direction does not pair negatively with the gradient."""


class LineSearchFailure(RuntimeError):
    """Raised when Armijo backtracking exhausts its budget without acceptance."""


@dataclass(frozen=True)
class MinimizeParams:
    max_iters: int = 200
    grad_tol: float = 1e-6
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    initial_step: float = 1.0
    method: str = "descent"
    gaugefix_every: int = 10
    record_every: int = 1

    def __post_init__(self):
        if self.max_iters < 0:
            raise ValueError("max_iters must be nonnegative")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError("armijo_c must lie in (0, 1)")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError("backtrack must lie in (0, 1)")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")
        if self.method not in ("descent", "conjugate"):
            raise ValueError(f"method must be descent or conjugate, got {self.method!r}")
        if self.gaugefix_every < 0:
            raise ValueError("gaugefix_every must be nonnegative (0 disables)")
        if self.record_every < 1:
            raise ValueError("record_every must be at least 1")


@dataclass(frozen=True)
class TrajectoryRecord:
    iter: int
    energy: float
    grad_norm: float
    phi_linf: float
    threshold: float
    excess_measure: float
    radial_excess: float
    eta_norm: float
    gauge_step_distance: float


@dataclass(frozen=True)
class Trajectory:
    """Recorded iterates, the final configuration, and why the run stopped.

    reason is one of "converged" (gradient norm <= grad_tol), "max_iters",
    or "line_search_failure". Energies along records are non-increasing.
    """

    records: tuple[TrajectoryRecord, ...]
    final: Configuration
    reason: str


def descent_pairing(g: Gradient, direction: Gradient) -> float:
    """Directional derivative of the energy along direction, at gradient g."""
    lat = g.lattice
    pair_a = l2_inner(lat, g.da, direction.da)
    pair_phi = l2_inner(lat, g.dphi, direction.dphi)
    return float(np.real(pair_a) + 2.0 * np.real(pair_phi))


def _step(cfg: Configuration, direction: Gradient, t: float) -> Configuration:
    return cfg.replace(a=cfg.gauge.a + t * direction.da, phi=cfg.phi + t * direction.dphi)


def line_search(
    cfg: Configuration, direction: Gradient, params: MinimizeParams
) -> tuple[float, Configuration]:
    """Backtrack from initial_step until the Armijo inequality holds.

    Accepts the first t with energy(cfg + t d) <= energy(cfg) + armijo_c t <g, d>.
    Raises NonDescentDirectionError if <g, d> >= 0 (zero direction included)
    and LineSearchFailure after MAX_BACKTRACKS rejected shrinkages.
    """
    pair = descent_pairing(gradient(cfg), direction)
    if not pair < 0.0:
        raise NonDescentDirectionError(f"direction pairing {pair:.3e} is not negative")
    e0 = energy_weitzenbock(cfg)
    t = params.initial_step
    for _ in range(MAX_BACKTRACKS + 1):
        trial = _step(cfg, direction, t)
        # wild trial steps may overflow the quartic term; the Armijo
        # comparison is False for nan/inf energies, so the step backtracks
        with np.errstate(over="ignore", invalid="ignore"):
            e_trial = energy_weitzenbock(trial)
        if e_trial <= e0 + params.armijo_c * t * pair:
            return t, trial
        t *= params.backtrack
    raise LineSearchFailure(f"no Armijo step after {MAX_BACKTRACKS} backtracks")


def _record(it: int, cfg: Configuration, grad_norm: float, prev: Configuration | None):
    rep = excess_report(cfg)
    dist = 0.0 if prev is None else gauge_distance(prev, cfg)
    return TrajectoryRecord(
        iter=it,
        energy=energy_weitzenbock(cfg),
        grad_norm=grad_norm,
        phi_linf=linf_norm(cfg.lattice, cfg.phi),
        threshold=rep.threshold,
        excess_measure=rep.excess_measure,
        radial_excess=rep.radial_excess,
        eta_norm=rep.eta_norm,
        gauge_step_distance=dist,
    )


def _refix_gauge(cfg: Configuration) -> Configuration:
    before = energy_weitzenbock(cfg)
    fixed, _ = full_gauge_fix(cfg)
    after = energy_weitzenbock(fixed)
    if abs(after - before) > 1e-10 * max(abs(before), 1.0):
        raise RuntimeError(
            f"gauge fixing drifted the energy from {before!r} to {after!r}"
        )
    return fixed


def minimize(cfg0: Configuration, params: MinimizeParams) -> Trajectory:
    """Descend the energy from cfg0 until the gradient norm meets grad_tol.

    method "descent" follows the negative gradient; "conjugate" uses
    Polak-Ribiere directions (beta clipped at zero) with a restart to steepest
    descent whenever the update loses descent or the iterate was re-fixed.
    Gauge re-fixing every gaugefix_every iterations (0 = never) keeps the run
    inside the normal-form slice without touching the energy. Deterministic.
    Iterate 0 and the final iterate are always recorded.
    """
    cfg = cfg0
    g = gradient(cfg)
    grad_norm = g.norm()
    records = [_record(0, cfg, grad_norm, None)]
    prev_recorded = cfg
    last_recorded_iter = 0
    reason = "converged" if grad_norm <= params.grad_tol else "max_iters"
    it = 0
    direction: Gradient | None = None
    prev_g: Gradient | None = None

    while grad_norm > params.grad_tol and it < params.max_iters:
        restarted = direction is None
        if params.method == "conjugate" and not restarted:
            denom = prev_g.norm() ** 2
            beta = max(0.0, descent_pairing(g, Gradient(
                g.lattice, g.da - prev_g.da, g.dphi - prev_g.dphi)) / denom)
            candidate = Gradient(
                g.lattice, -g.da + beta * direction.da, -g.dphi + beta * direction.dphi
            )
            if descent_pairing(g, candidate) < 0.0:
                direction = candidate
            else:
                direction = g.scaled(-1.0)
        else:
            direction = g.scaled(-1.0)

        try:
            _, cfg = line_search(cfg, direction, params)
        except LineSearchFailure:
            reason = "line_search_failure"
            break
        it += 1

        if params.gaugefix_every > 0 and it % params.gaugefix_every == 0:
            cfg = _refix_gauge(cfg)
            direction = None  # conjugate memory is stale off the old slice

        prev_g = g
        g = gradient(cfg)
        grad_norm = g.norm()
        if it % params.record_every == 0:
            records.append(_record(it, cfg, grad_norm, prev_recorded))
            prev_recorded = cfg
            last_recorded_iter = it
        if grad_norm <= params.grad_tol:
            reason = "converged"
            break

    if last_recorded_iter != it:
        records.append(_record(it, cfg, grad_norm, prev_recorded))
    return Trajectory(tuple(records), cfg, reason)


@dataclass(frozen=True)
class PSDiagnostics:
    """Cauchy-style summary of a recorded minimizing sequence.

    quartile_sums: sums of the successive gauge step distances over four
    contiguous blocks. summable: True when the block sums are non-increasing,
    the discrete signature of a summable (Cauchy) step sequence.
    contraction_ratio: first block sum over last (inf when the last is zero).
    radial excess values are the first and last recorded ones.
    """

    quartile_sums: tuple[float, float, float, float]
    summable: bool
    contraction_ratio: float
    radial_excess_initial: float
    radial_excess_final: float


def ps_diagnostics(traj: Trajectory) -> PSDiagnostics:
    """Summarize step-distance decay along a trajectory (>= 3 records)."""
    if len(traj.records) < 3:
        raise ValueError("need at least 3 recorded iterates to diagnose")
    dists = np.array([r.gauge_step_distance for r in traj.records[1:]])
    sums = tuple(float(block.sum()) for block in np.array_split(dists, 4))
    summable = all(b <= a for a, b in zip(sums, sums[1:]))
    ratio = sums[0] / sums[-1] if sums[-1] > 0.0 else np.inf
    return PSDiagnostics(
        quartile_sums=sums,
        summable=summable,
        contraction_ratio=float(ratio),
        radial_excess_initial=traj.records[0].radial_excess,
        radial_excess_final=traj.records[-1].radial_excess,
    )
