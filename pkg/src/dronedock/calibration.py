"""Fit the behavioural module parameters to a measured series-connection peak.

Output power does not depend on ``eta_link``, so the fit is triangular: the
droop resistance is found by a bracketed root search on the grid peak
power, then ``eta_link`` follows in closed form from the input power at that
peak.  When a series/parallel peak ratio is requested the shared wiring
resistance is solved for in an outer bracketed search.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from scipy.optimize import brentq

from .errors import CalibrationInfeasible
from .model import DiodeSpec, ModuleSpec, TopologyKind, default_network
from .solver import DEFAULT_CONFIG, SolverConfig
from .sweep import SweepConfig, default_sweep_config, max_power_point, run_sweep

__all__ = [
    "CalibrationTarget",
    "CalibrationResult",
    "default_calibration_target",
    "calibrate",
    "R_DROOP_BOUNDS",
    "ETA_LINK_BOUNDS",
]

R_DROOP_BOUNDS = (0.0, 5.0)
ETA_LINK_BOUNDS = (0.2, 1.0)  # lower bound exclusive
POWER_RTOL = 0.005
ETA_ATOL = 0.005
_XTOL = 1e-12


@dataclass(frozen=True)
class CalibrationTarget:
    """Measured series peak to reproduce.

    ``sc_pc_ratio``, when set, also fixes the shared wiring resistance so the
    series peak is that many times the parallel (no diode) peak measured
    over ``parallel_sweep``.
    """

    p_out_peak: float = 96.5
    eta_at_peak: float = 0.566
    sweep: SweepConfig = field(default_factory=lambda: default_sweep_config(TopologyKind.SERIES))
    sc_pc_ratio: float | None = None
    parallel_sweep: SweepConfig = field(default_factory=lambda: default_sweep_config(TopologyKind.PARALLEL))

    def __post_init__(self):
        if not self.p_out_peak > 0:
            raise ValueError("p_out_peak must be > 0")
        if not 0 < self.eta_at_peak <= 1:
            raise ValueError("eta_at_peak must be in (0,1]")
        if self.sweep.topology is not TopologyKind.SERIES:
            raise ValueError("calibration sweep must use the series topology")
        if self.sc_pc_ratio is not None and not self.sc_pc_ratio > 0:
            raise ValueError("sc_pc_ratio must be > 0")


def default_calibration_target() -> CalibrationTarget:
    """96.5 W at 56.6 % in series, roughly twice the parallel peak."""
    return CalibrationTarget(sc_pc_ratio=1.9)


@dataclass(frozen=True)
class CalibrationResult:
    module: ModuleSpec
    r_wiring: float
    p_out_peak: float
    eta_at_peak: float
    r_load_at_peak: float
    sc_pc_ratio: float | None

    def network(self, topology, n_modules: int = 3, gaps=None, diode: DiodeSpec | None = None):
        return default_network(topology, self.module, n_modules, gaps, diode, self.r_wiring)

    def report(self) -> dict:
        return {
            "r_droop": self.module.r_droop,
            "eta_link": self.module.eta_link,
            "p_idle": self.module.p_idle,
            "r_wiring": self.r_wiring,
            "p_out_peak_w": self.p_out_peak,
            "eta_at_peak": self.eta_at_peak,
            "r_load_at_peak_ohm": self.r_load_at_peak,
            "sc_pc_ratio": self.sc_pc_ratio,
        }


class _Model:
    """Peak power of the series (and parallel) sweep as a function of the fit parameters."""

    def __init__(self, target, base, n_modules, diode, solver_config):
        self.target = target
        self.base = base
        self.n = n_modules
        self.diode = diode
        self.cfg = solver_config

    def series(self, r_droop, r_wiring):
        module = replace(self.base, r_droop=r_droop)
        net = default_network(TopologyKind.SERIES, module, self.n, None, self.diode, r_wiring)
        return max_power_point(run_sweep(net, self.target.sweep, self.cfg))

    def parallel_peak(self, r_droop, r_wiring):
        module = replace(self.base, r_droop=r_droop)
        net = default_network(TopologyKind.PARALLEL, module, self.n, None, self.diode, r_wiring)
        return max_power_point(run_sweep(net, self.target.parallel_sweep, self.cfg))[2]

    def droop_for(self, r_wiring):
        """Droop resistance giving the target series peak, or None."""
        p_target = self.target.p_out_peak
        lo, hi = R_DROOP_BOUNDS
        f_lo = self.series(lo, r_wiring)[2] - p_target
        if f_lo < 0:
            return None
        if f_lo == 0:
            return lo
        f_hi = self.series(hi, r_wiring)[2] - p_target
        if f_hi > 0:
            return None
        return brentq(lambda r: self.series(r, r_wiring)[2] - p_target, lo, hi, xtol=_XTOL)


def _infeasible(message, **best):
    raise CalibrationInfeasible(message, best=best)


def calibrate(
    target: CalibrationTarget,
    base: ModuleSpec,
    n_modules: int = 3,
    diode: DiodeSpec | None = None,
    r_wiring: float = 0.0,
    solver_config: SolverConfig = DEFAULT_CONFIG,
) -> CalibrationResult:
    """Adjust ``r_droop`` and ``eta_link`` of ``base`` to hit ``target``.

    ``p_idle`` is held fixed.  ``r_wiring`` is kept as given unless the
    target carries a series/parallel ratio, in which case it is fitted too.
    Raises :class:`CalibrationInfeasible` with the closest parameters found
    when a target lies outside the bounds.
    """
    diode = diode or DiodeSpec()
    model = _Model(target, base, n_modules, diode, solver_config)
    p_target = target.p_out_peak

    if target.sc_pc_ratio is not None:
        r_wiring = _fit_wiring(model, target)
    r_droop = model.droop_for(r_wiring)
    if r_droop is None:
        best = min(R_DROOP_BOUNDS, key=lambda r: abs(model.series(r, r_wiring)[2] - p_target))
        _infeasible(
            f"peak power {p_target:g} W unreachable with r_droop in {list(R_DROOP_BOUNDS)} ohm",
            r_droop=best,
            r_wiring=r_wiring,
            p_out_peak=model.series(best, r_wiring)[2],
        )

    _, op, p_peak, _ = model.series(r_droop, r_wiring)
    delivered = sum(max(v * i, 0.0) for v, i in zip(op.per_module_v, op.per_module_i))
    idle = base.p_idle * n_modules
    headroom = p_peak / target.eta_at_peak - idle
    eta_link = delivered / headroom if headroom > 0 else float("inf")
    lo, hi = ETA_LINK_BOUNDS
    if not lo < eta_link <= hi:
        best_eta = min(max(eta_link, lo), hi) if headroom > 0 else hi
        _infeasible(
            f"efficiency {target.eta_at_peak:g} at the peak needs eta_link={eta_link:.6g}, "
            f"outside ({lo:g}, {hi:g}]",
            r_droop=r_droop,
            r_wiring=r_wiring,
            eta_link=best_eta,
            eta_at_peak=p_peak / (delivered / best_eta + idle),
        )

    module = replace(base, r_droop=r_droop, eta_link=eta_link)
    net = default_network(TopologyKind.SERIES, module, n_modules, None, diode, r_wiring)
    _, op, p_check, eta_check = max_power_point(run_sweep(net, target.sweep, solver_config))
    if abs(p_check - p_target) > POWER_RTOL * p_target or abs(eta_check - target.eta_at_peak) > ETA_ATOL:
        _infeasible(
            "calibrated parameters do not reproduce the target within tolerance",
            r_droop=r_droop,
            eta_link=eta_link,
            r_wiring=r_wiring,
            p_out_peak=p_check,
            eta_at_peak=eta_check,
        )
    ratio = None
    if target.sc_pc_ratio is not None:
        ratio = p_check / model.parallel_peak(r_droop, r_wiring)
    return CalibrationResult(module, r_wiring, p_check, eta_check, op.r_load, ratio)


def _fit_wiring(model: _Model, target: CalibrationTarget) -> float:
    """Wiring resistance giving the requested series/parallel peak ratio.

    Raising the wiring resistance (and lowering the droop to keep the series
    peak) costs the parallel topology nine times as much, so the ratio grows
    monotonically along the feasible curve.
    """
    p_target = target.p_out_peak

    def ratio_gap(b):
        r = model.droop_for(b)
        if r is None:  # only at b_max, where the zero-droop peak meets the target
            r = 0.0
        return p_target / model.parallel_peak(r, b) - target.sc_pc_ratio

    # largest wiring resistance that still leaves the series peak reachable
    def zero_droop_gap(b):
        return model.series(0.0, b)[2] - p_target

    if zero_droop_gap(0.0) < 0:
        _infeasible(f"peak power {p_target:g} W unreachable even without losses", r_droop=0.0, r_wiring=0.0)
    b_hi = 1.0
    while zero_droop_gap(b_hi) > 0:
        b_hi *= 2
        if b_hi > 1e3:
            _infeasible("wiring resistance search diverged", r_wiring=b_hi)
    b_max = brentq(zero_droop_gap, 0.0, b_hi, xtol=_XTOL)

    g0 = ratio_gap(0.0)
    if g0 >= 0:
        return 0.0
    g1 = ratio_gap(b_max)
    if g1 < 0:
        _infeasible(
            f"series/parallel ratio {target.sc_pc_ratio:g} unreachable",
            r_wiring=b_max,
            sc_pc_ratio=g1 + target.sc_pc_ratio,
        )
    return brentq(ratio_gap, 0.0, b_max, xtol=_XTOL)
