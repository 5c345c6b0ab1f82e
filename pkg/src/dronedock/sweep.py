"""Load sweeps over a resistor range and the comparison built on them."""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInput, EmptySweep, NonConvergence
from .model import OperatingPoint, ReceiverNetwork, TopologyKind
from .solver import DEFAULT_CONFIG, SolverConfig, solve_operating_point

__all__ = [
    "Spacing",
    "SweepConfig",
    "SweepPoint",
    "SweepResult",
    "default_sweep_config",
    "compute_metrics",
    "run_sweep",
    "max_power_point",
    "compare_topologies",
    "sweep_to_csv",
    "CSV_HEADER",
]

CSV_HEADER = "r_load_ohm,u_out_v,i_out_a,i_in_a,p_out_w,p_in_w,eta,current_limited"


class Spacing(str, enum.Enum):
    LINEAR = "linear"
    LOGARITHMIC = "logarithmic"


@dataclass(frozen=True)
class SweepConfig:
    topology: TopologyKind
    r_min: float
    r_max: float
    n_points: int = 100
    spacing: Spacing = Spacing.LOGARITHMIC

    def __post_init__(self):
        object.__setattr__(self, "topology", TopologyKind(self.topology))
        object.__setattr__(self, "spacing", Spacing(self.spacing))
        if not self.r_min > 0:
            raise ValueError("r_min must be > 0")
        if not self.r_min < self.r_max:
            raise ValueError("r_min must be < r_max")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError("n_points must be an integer >= 2")

    def grid(self) -> np.ndarray:
        """Load resistances, ascending, endpoints included."""
        if self.spacing is Spacing.LINEAR:
            return np.linspace(self.r_min, self.r_max, int(self.n_points))
        return np.geomspace(self.r_min, self.r_max, int(self.n_points))


def default_sweep_config(topology: TopologyKind | str, n_points: int = 100) -> SweepConfig:
    """Bench ranges: 10-100 ohm for series, 1-10 ohm for the parallel variants."""
    topology = TopologyKind(topology)
    r_min, r_max = (10.0, 100.0) if topology is TopologyKind.SERIES else (1.0, 10.0)
    return SweepConfig(topology, r_min, r_max, n_points, Spacing.LOGARITHMIC)


@dataclass(frozen=True)
class SweepPoint:
    point: OperatingPoint
    p_out: float
    p_in: float
    eta: float


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...]

    def __len__(self):
        return len(self.points)

    def column(self, name: str) -> np.ndarray:
        """Array of a metric (``p_out``, ``eta``...) or OperatingPoint field."""
        if name in ("p_out", "p_in", "eta"):
            return np.array([getattr(p, name) for p in self.points])
        return np.array([getattr(p.point, name) for p in self.points])


def compute_metrics(point: OperatingPoint, network: ReceiverNetwork | None = None) -> tuple[float, float, float]:
    """Power balance and transfer efficiency of a solved point.

    ``eta`` is reported as 0 when nothing reaches the load.
    """
    p_out = point.u_out * point.i_out
    p_in = point.u_in * point.i_in
    if p_in == 0:
        if p_out > 0:
            raise DegenerateInput("input power is zero while output power is positive")
        return p_out, p_in, 0.0
    return p_out, p_in, p_out / p_in


def run_sweep(
    network: ReceiverNetwork, config: SweepConfig, solver_config: SolverConfig = DEFAULT_CONFIG
) -> SweepResult:
    if network.topology is not config.topology:
        raise ValueError(
            f"sweep topology {config.topology.value} does not match network {network.topology.value}"
        )
    points = []
    for r in config.grid():
        r = float(r)
        try:
            op = solve_operating_point(network, r, solver_config)
        except NonConvergence as exc:
            raise NonConvergence(f"{exc} (r_load={r:g} ohm)", r_load=r, residual=exc.residual) from exc
        points.append(SweepPoint(op, *compute_metrics(op, network)))
    return SweepResult(config, tuple(points))


def max_power_point(result: SweepResult) -> tuple[int, OperatingPoint, float, float]:
    """Grid point of greatest output power (ties: higher eta, then lower load)."""
    if not result.points:
        raise EmptySweep("sweep result has no points")
    best = max(
        range(len(result.points)),
        key=lambda k: (result.points[k].p_out, result.points[k].eta, -result.points[k].point.r_load),
    )
    p = result.points[best]
    return best, p.point, p.p_out, p.eta


def _droop_ratio(result: SweepResult) -> float:
    u_low = result.points[0].point.u_out
    u_high = result.points[-1].point.u_out
    return (u_high - u_low) / u_high if u_high > 0 else 0.0


def compare_topologies(
    networks: Sequence[ReceiverNetwork],
    configs: Sequence[SweepConfig],
    solver_config: SolverConfig = DEFAULT_CONFIG,
) -> dict:
    """Sweep each network and summarise its peak and voltage droop.

    ``sc_pc_peak_ratio`` is the smallest series-to-parallel peak power ratio
    over the parallel variants present; ratios are omitted unless both a
    series and a parallel network were compared.
    """
    if not networks or len(networks) != len(configs):
        raise ValueError("networks and configs must be non-empty and aligned")
    entries = []
    for net, cfg in zip(networks, configs):
        result = run_sweep(net, cfg, solver_config)
        _, op, p_peak, eta_peak = max_power_point(result)
        entries.append(
            {
                "topology": net.topology.value,
                "r_min_ohm": cfg.r_min,
                "r_max_ohm": cfg.r_max,
                "peak_p_out_w": p_peak,
                "eta_at_peak_power": eta_peak,
                "peak_r_load_ohm": op.r_load,
                "peak_eta": float(result.column("eta").max()),
                "peak_u_out_v": float(result.column("u_out").max()),
                "voltage_droop_ratio": _droop_ratio(result),
            }
        )
    report = {"topologies": entries}
    series = [e for e in entries if e["topology"] == TopologyKind.SERIES.value]
    parallel = [e for e in entries if e["topology"] != TopologyKind.SERIES.value]
    if series and parallel:
        sc_peak = series[0]["peak_p_out_w"]
        ratios = {
            e["topology"]: (sc_peak / e["peak_p_out_w"] if e["peak_p_out_w"] > 0 else float("inf"))
            for e in parallel
        }
        report["sc_peak_ratios"] = ratios
        report["sc_pc_peak_ratio"] = min(ratios.values())
    return report


def _g6(x) -> str:
    return f"{float(x):.6g}"


def sweep_to_csv(result: SweepResult) -> str:
    """CSV text, one row per grid point, six significant digits."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for p in result.points:
        op = p.point
        row = [op.r_load, op.u_out, op.i_out, op.i_in, p.p_out, p.p_in, p.eta]
        buf.write(",".join(_g6(x) for x in row) + "," + ("true" if op.current_limited else "false") + "\n")
    return buf.getvalue()
