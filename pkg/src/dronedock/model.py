"""Domain types for the three-module docking station and their validation.

All types are frozen dataclasses; lengths are in millimetres and
electrical quantities in SI units.  Serialisation goes through plain dicts so
the same field names appear in JSON config files.
"""

from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any

__all__ = [
    "TopologyKind",
    "ModuleSpec",
    "DiodeSpec",
    "ReceiverNetwork",
    "OperatingPoint",
    "FrustumSpec",
    "default_module_spec",
    "default_network",
    "validate",
    "frustum_violations",
    "module_to_dict",
    "module_from_dict",
    "network_to_dict",
    "network_from_dict",
    "frustum_to_dict",
    "frustum_from_dict",
    "dumps",
]


class TopologyKind(str, enum.Enum):
    """Receiver-side wiring of the modules."""

    SERIES = "SC"
    PARALLEL = "PC"
    PARALLEL_DIODES = "PCD"

    @property
    def is_parallel(self) -> bool:
        return self is not TopologyKind.SERIES


@dataclass(frozen=True)
class ModuleSpec:
    """Behavioural parameters of one off-the-shelf transmitter/receiver pair.

    The receiver is a regulated source ``u_out_nominal`` behind ``r_droop``
    with a hard current limit ``i_out_max``.  The transmitter draws
    ``P_out / eta_link + p_idle`` from the DC supply.
    """

    u_in_nominal: float = 24.0
    u_out_nominal: float = 12.0
    i_out_max: float = 3.0
    eta_link: float = 0.95
    r_droop: float = 0.5
    p_idle: float = 2.0
    gap_max: float = 10.0
    coil_inner_d: float = 30.0
    coil_outer_d: float = 82.0
    coil_h: float = 2.0


@dataclass(frozen=True)
class DiodeSpec:
    """Constant-drop isolation diode; ``ideal_blocking`` means no leakage."""

    v_forward: float = 0.7
    ideal_blocking: bool = True


@dataclass(frozen=True)
class ReceiverNetwork:
    """Topology plus per-module specs and coil gaps.

    ``r_wiring`` is the resistance of the shared output path (connection
    board and leads) between the combined receivers and the load.
    """

    topology: TopologyKind
    modules: tuple[ModuleSpec, ...]
    gaps: tuple[float, ...]
    diode: DiodeSpec = field(default_factory=DiodeSpec)
    r_wiring: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "topology", TopologyKind(self.topology))
        object.__setattr__(self, "modules", tuple(self.modules))
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))

    @property
    def n_modules(self) -> int:
        return len(self.modules)

    def alive(self) -> tuple[bool, ...]:
        """Per-module flag: coil gap within the module's permissible gap."""
        return tuple(g <= m.gap_max for m, g in zip(self.modules, self.gaps))

    def with_module(self, module: ModuleSpec) -> "ReceiverNetwork":
        """Copy with every module replaced by ``module``."""
        return replace(self, modules=(module,) * self.n_modules)


@dataclass(frozen=True)
class OperatingPoint:
    """Solved DC state of a network driving ``r_load``.

    ``per_module_v`` holds module terminal voltages (before any diode);
    ``diode_states`` is empty for topologies without diodes.
    """

    r_load: float
    u_out: float
    i_out: float
    i_in: float
    u_in: float
    per_module_i: tuple[float, ...]
    diode_states: tuple[bool, ...]
    current_limited: bool
    per_module_v: tuple[float, ...] = ()

    @property
    def p_out(self) -> float:
        return self.u_out * self.i_out

    @property
    def p_in(self) -> float:
        return self.u_in * self.i_in


@dataclass(frozen=True)
class FrustumSpec:
    """Three-sided pyramidal frustum of the docking station.

    ``slope_angle_deg`` is the inclination of each side from the vertical
    axis; ``mu`` is always caller supplied (0.2 is an assumed default).
    """

    slope_angle_deg: float = 12.7
    mu: float = 0.2
    face_count: int = 3
    base_size: float = 178.0
    height: float = 155.0
    m_etu: float = 700.0
    m_eru: float = 700.0


def default_module_spec() -> ModuleSpec:
    """Module as sold: 24 V in, 12 V / 3 A out, 10 mm gap, 95 % link.

    ``r_droop`` (0.5 ohm) and ``p_idle`` (2 W) are uncalibrated placeholders.
    """
    return ModuleSpec()


def default_network(
    topology: TopologyKind | str,
    module: ModuleSpec | None = None,
    n_modules: int = 3,
    gaps: tuple[float, ...] | None = None,
    diode: DiodeSpec | None = None,
    r_wiring: float = 0.0,
) -> ReceiverNetwork:
    """Network of ``n_modules`` identical modules, all seated at 0 mm gap."""
    module = module or default_module_spec()
    return ReceiverNetwork(
        topology=TopologyKind(topology),
        modules=(module,) * n_modules,
        gaps=tuple(gaps) if gaps is not None else (0.0,) * n_modules,
        diode=diode or DiodeSpec(),
        r_wiring=r_wiring,
    )


def _module_violations(m: ModuleSpec, prefix: str) -> list[str]:
    out = []
    for name in ("u_in_nominal", "u_out_nominal", "i_out_max", "gap_max"):
        if not getattr(m, name) > 0:
            out.append(f"{prefix}{name} must be > 0")
    if not 0 < m.eta_link <= 1:
        out.append(f"{prefix}eta_link out of (0,1]")
    for name in ("r_droop", "p_idle"):
        if not getattr(m, name) >= 0:
            out.append(f"{prefix}{name} must be >= 0")
    if not m.coil_inner_d < m.coil_outer_d:
        out.append(f"{prefix}coil_inner_d must be < coil_outer_d")
    return out


def validate(network: ReceiverNetwork) -> list[str]:
    """Return every violated invariant of ``network``; empty when valid."""
    report = []
    if len(network.modules) < 1:
        report.append("modules must contain at least one module")
    if len(network.modules) != len(network.gaps):
        report.append("gaps/modules length mismatch")
    for k, g in enumerate(network.gaps):
        if not g >= 0:
            report.append(f"gaps[{k}] must be >= 0")
    for k, m in enumerate(network.modules):
        report.extend(_module_violations(m, f"modules[{k}]."))
    if not network.diode.v_forward >= 0:
        report.append("diode.v_forward must be >= 0")
    if not network.r_wiring >= 0:
        report.append("r_wiring must be >= 0")
    return report


def frustum_violations(frustum: FrustumSpec) -> list[str]:
    report = []
    if not 0 < frustum.slope_angle_deg < 90:
        report.append("slope_angle_deg out of (0,90)")
    if not frustum.mu >= 0:
        report.append("mu must be >= 0")
    if frustum.face_count < 3:
        report.append("face_count must be >= 3")
    if not (frustum.base_size > 0 and frustum.height > 0):
        report.append("base_size and height must be > 0")
    return report


# -- serialisation -----------------------------------------------------------


def _from_dict(cls, data: dict[str, Any], where: str):
    names = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ValueError(f"{where}: unknown key(s) {', '.join(unknown)}")
    return cls(**data)


def module_to_dict(module: ModuleSpec) -> dict[str, float]:
    return asdict(module)


def module_from_dict(data: dict[str, Any]) -> ModuleSpec:
    return _from_dict(ModuleSpec, {k: float(v) for k, v in data.items()}, "module")


def network_to_dict(network: ReceiverNetwork) -> dict[str, Any]:
    return {
        "topology": network.topology.value,
        "modules": [module_to_dict(m) for m in network.modules],
        "gaps": list(network.gaps),
        "diode": asdict(network.diode),
        "r_wiring": network.r_wiring,
    }


def network_from_dict(data: dict[str, Any]) -> ReceiverNetwork:
    data = dict(data)
    unknown = sorted(set(data) - {"topology", "modules", "gaps", "diode", "r_wiring"})
    if unknown:
        raise ValueError(f"network: unknown key(s) {', '.join(unknown)}")
    return ReceiverNetwork(
        topology=TopologyKind(data["topology"]),
        modules=tuple(module_from_dict(m) for m in data["modules"]),
        gaps=tuple(data["gaps"]),
        diode=_from_dict(DiodeSpec, data.get("diode", {}), "diode"),
        r_wiring=float(data.get("r_wiring", 0.0)),
    )


def frustum_to_dict(frustum: FrustumSpec) -> dict[str, Any]:
    return asdict(frustum)


def frustum_from_dict(data: dict[str, Any]) -> FrustumSpec:
    return _from_dict(FrustumSpec, data, "frustum")


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
