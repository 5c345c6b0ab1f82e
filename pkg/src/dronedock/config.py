"""JSON experiment configuration.

A config is one JSON object with the optional sections ``module``,
``network``, ``sweep``, ``calibration``, ``frustum``, ``seating`` and
``battery``.  Unknown sections or keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

from .battery import BatterySpec
from .calibration import CalibrationTarget, default_calibration_target
from .model import (
    DiodeSpec,
    FrustumSpec,
    ModuleSpec,
    ReceiverNetwork,
    TopologyKind,
    default_network,
    validate,
)
from .sweep import SweepConfig, default_sweep_config

__all__ = ["ConfigError", "Config", "load_config", "parse_config"]

SECTIONS = ("module", "network", "sweep", "calibration", "frustum", "seating", "battery")
NETWORK_KEYS = ("topology", "n_modules", "gaps", "diode", "r_wiring")
SWEEP_KEYS = ("r_min", "r_max", "n_points", "spacing")
CALIBRATION_KEYS = ("p_out_peak", "eta_at_peak", "sc_pc_ratio")
SEATING_KEYS = ("dx", "dy", "yaw")


class ConfigError(ValueError):
    """Config file missing or malformed."""


@dataclass(frozen=True)
class Config:
    module: ModuleSpec
    topologies: tuple[TopologyKind, ...]
    n_modules: int
    gaps: tuple[float, ...]
    diode: DiodeSpec
    r_wiring: float
    sweep_overrides: dict = field(default_factory=dict)
    calibration: CalibrationTarget = field(default_factory=default_calibration_target)
    frustum: FrustumSpec | None = None
    seating: tuple[float, float, float] = (0.0, 0.0, 0.0)
    battery: BatterySpec | None = None

    def network(self, topology: TopologyKind | None = None) -> ReceiverNetwork:
        topology = topology or self.topologies[0]
        return default_network(topology, self.module, self.n_modules, self.gaps, self.diode, self.r_wiring)

    def networks(self) -> list[ReceiverNetwork]:
        return [self.network(t) for t in self.topologies]

    def sweep_config(self, topology: TopologyKind | None = None) -> SweepConfig:
        topology = topology or self.topologies[0]
        base = default_sweep_config(topology)
        params = {f.name: getattr(base, f.name) for f in fields(base)}
        params.update(self.sweep_overrides)
        try:
            return SweepConfig(**params)
        except ValueError as exc:
            raise ConfigError(f"sweep: {exc}") from None


def _check_keys(section: str, data: Any, allowed) -> dict:
    if not isinstance(data, dict):
        raise ConfigError(f"{section}: expected a JSON object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"{section}: unknown key(s) {', '.join(unknown)}")
    return data


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}: expected a number, got {value!r}")
    return float(value)


def _build(cls, section: str, data: dict):
    _check_keys(section, data, [f.name for f in fields(cls)])
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}: {exc}") from None


def parse_config(doc: Any) -> Config:
    """Turn a decoded JSON document into a :class:`Config`."""
    doc = _check_keys("config", doc, SECTIONS)

    mod = _check_keys("module", doc.get("module", {}), [f.name for f in fields(ModuleSpec)])
    module = ModuleSpec(**{k: _number("module", k, v) for k, v in mod.items()})

    net = _check_keys("network", doc.get("network", {}), NETWORK_KEYS)
    raw_topo = net.get("topology", "SC")
    raw_topo = raw_topo if isinstance(raw_topo, list) else [raw_topo]
    if not raw_topo:
        raise ConfigError("network.topology: at least one topology required")
    try:
        topologies = tuple(TopologyKind(t) for t in raw_topo)
    except ValueError:
        raise ConfigError(f"network.topology: expected SC, PC or PCD, got {raw_topo!r}") from None
    n_modules = net.get("n_modules", 3)
    if isinstance(n_modules, bool) or not isinstance(n_modules, int) or n_modules < 1:
        raise ConfigError("network.n_modules: expected an integer >= 1")
    gaps = tuple(_number("network", "gaps", g) for g in net.get("gaps", [0.0] * n_modules))
    diode = _build(DiodeSpec, "network.diode", net.get("diode", {}))
    r_wiring = _number("network", "r_wiring", net.get("r_wiring", 0.0))

    config = Config(module, topologies, n_modules, gaps, diode, r_wiring)
    for topology in topologies:
        violations = validate(config.network(topology))
        if violations:
            raise ConfigError("network: " + "; ".join(violations))

    sweep = dict(_check_keys("sweep", doc.get("sweep", {}), SWEEP_KEYS))
    for key in ("r_min", "r_max"):
        if key in sweep:
            sweep[key] = _number("sweep", key, sweep[key])
    if "n_points" in sweep and (isinstance(sweep["n_points"], bool) or not isinstance(sweep["n_points"], int)):
        raise ConfigError("sweep.n_points: expected an integer")

    cal = _check_keys("calibration", doc.get("calibration", {}), CALIBRATION_KEYS)
    default_target = default_calibration_target()
    ratio = cal.get("sc_pc_ratio", default_target.sc_pc_ratio)
    try:
        target = CalibrationTarget(
            p_out_peak=_number("calibration", "p_out_peak", cal.get("p_out_peak", default_target.p_out_peak)),
            eta_at_peak=_number("calibration", "eta_at_peak", cal.get("eta_at_peak", default_target.eta_at_peak)),
            sc_pc_ratio=None if ratio is None else _number("calibration", "sc_pc_ratio", ratio),
        )
    except ValueError as exc:
        raise ConfigError(f"calibration: {exc}") from None

    frustum = _build(FrustumSpec, "frustum", doc["frustum"]) if "frustum" in doc else None
    seat = _check_keys("seating", doc.get("seating", {}), SEATING_KEYS)
    seating = tuple(_number("seating", k, seat.get(k, 0.0)) for k in SEATING_KEYS)
    battery = _build(BatterySpec, "battery", doc["battery"]) if "battery" in doc else None

    config = Config(
        module, topologies, n_modules, gaps, diode, r_wiring, sweep, target, frustum, seating, battery
    )
    for topology in topologies:
        config.sweep_config(topology)  # surfaces range errors at parse time
    return config


def load_config(path: str | Path) -> Config:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_config(doc)
