"""DC operating point of a receiver network driving a resistive load.

Every element is piecewise linear (droop source with a hard current limit,
constant-drop diode), so the solver iterates over discrete regimes only:
each pass fixes a regime per branch, solves the resulting linear network in
closed form, then flips the branch whose regime is most inconsistent with
the solution.  :func:`diode_state_oracle` solves the same problem by exhaustive
enumeration and is kept as an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidNetwork, NoConsistentState, NonConvergence
from .model import ModuleSpec, OperatingPoint, ReceiverNetwork, TopologyKind, validate

__all__ = [
    "SolverConfig",
    "solve_operating_point",
    "diode_state_oracle",
    "module_terminal_voltage",
    "input_power",
]

REG, LIM, OFF = "reg", "lim", "off"


@dataclass(frozen=True)
class SolverConfig:
    residual_tol: float = 1e-9
    max_iterations: int = 50

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_CONFIG = SolverConfig()


def module_terminal_voltage(spec: ModuleSpec, i: float, gap: float) -> float:
    """Regulated-mode output voltage of one module at output current ``i``."""
    if i < 0:
        raise ValueError("module current must be >= 0")
    if gap > spec.gap_max:
        return 0.0
    return max(spec.u_out_nominal - spec.r_droop * i, 0.0)


def input_power(network: ReceiverNetwork, point: OperatingPoint) -> tuple[float, float]:
    """Supply power and supply current for a solved point.

    Each transmitter draws its receiver's output over ``eta_link`` plus its
    idle power.  A module sinking current (parallel, no diodes) draws idle
    power only.  The total is floored at the load power to absorb rounding
    in the lossless case.
    """
    p_in = 0.0
    for m, v, i in zip(network.modules, point.per_module_v, point.per_module_i):
        p_in += max(v * i, 0.0) / m.eta_link + m.p_idle
    p_in = max(p_in, point.u_out * point.i_out)
    return p_in, p_in / point.u_in


def solve_operating_point(
    network: ReceiverNetwork, r_load: float, config: SolverConfig = DEFAULT_CONFIG
) -> OperatingPoint:
    """Solve ``network`` loaded by ``r_load`` ohms.

    Raises :class:`InvalidNetwork` for networks failing validation and
    :class:`NonConvergence` when the regime iteration does not settle.
    """
    if not r_load > 0:
        raise ValueError("r_load must be > 0")
    violations = validate(network)
    if violations:
        raise InvalidNetwork(violations)
    if network.topology is TopologyKind.SERIES:
        point = _solve_series(network, r_load, config)
    else:
        point = _solve_parallel(network, r_load, config)
    return _with_input(network, point)


def _with_input(network: ReceiverNetwork, point: OperatingPoint) -> OperatingPoint:
    _, i_in = input_power(network, point)
    return replace(point, i_in=i_in)


def _u_in(network: ReceiverNetwork) -> float:
    return network.modules[0].u_in_nominal


# -- series ------------------------------------------------------------------


def _solve_series(net: ReceiverNetwork, r_load: float, cfg: SolverConfig) -> OperatingPoint:
    alive = net.alive()
    emf = [m.u_out_nominal if a else 0.0 for m, a in zip(net.modules, alive)]
    res = [m.r_droop if a else 0.0 for m, a in zip(net.modules, alive)]
    r_ext = r_load + net.r_wiring

    # a module whose droop would push its terminal voltage below zero is
    # clamped at 0 V and drops out of the chain
    clamped = [False] * len(emf)
    for _ in range(cfg.max_iterations):
        e_sum = sum(e for e, c in zip(emf, clamped) if not c)
        r_sum = sum(r for r, c in zip(res, clamped) if not c)
        current = e_sum / (r_ext + r_sum)
        new = [e - r * current < 0 for e, r in zip(emf, res)]
        if new == clamped:
            break
        clamped = new
    else:
        raise NonConvergence("series clamp iteration did not settle", r_load=r_load)

    limits = [m.i_out_max for m, a in zip(net.modules, alive) if a]
    limit = min(limits) if limits else 0.0
    limited = current > limit
    if limited:
        current = limit
        u_out = current * r_load
    else:
        u_out = e_sum - current * (r_sum + net.r_wiring)

    v_reg = [0.0 if c else max(e - r * current, 0.0) for e, r, c in zip(emf, res, clamped)]
    v_total = sum(v_reg)
    if limited and v_total > 0:
        # constant-current mode: the chain only sustains what the load needs
        scale = current * r_ext / v_total
        v_mod = [v * scale for v in v_reg]
    else:
        v_mod = v_reg

    residual = abs(sum(v_mod) - current * r_ext)
    if residual > cfg.residual_tol * max(1.0, abs(current * r_ext)):
        raise NonConvergence(
            f"series residual {residual:.3g} above tolerance", r_load=r_load, residual=residual
        )
    return OperatingPoint(
        r_load=r_load,
        u_out=u_out,
        i_out=current,
        i_in=0.0,
        u_in=_u_in(net),
        per_module_i=(current,) * net.n_modules,
        diode_states=(),
        current_limited=limited,
        per_module_v=tuple(v_mod),
    )


# -- parallel ----------------------------------------------------------------


@dataclass(frozen=True)
class _Branch:
    index: int
    emf: float  # module source voltage, 0 for a dead module
    drop: float  # series diode drop
    r: float
    i_max: float
    alive: bool
    diode: bool

    @property
    def e_eff(self) -> float:
        return self.emf - self.drop

    @property
    def ideal(self) -> bool:
        return self.r == 0.0

    @property
    def blocked(self) -> bool:
        # diode currents are non-negative, so the bus is too
        return self.diode and self.e_eff < 0.0


def _branches(net: ReceiverNetwork) -> list[_Branch]:
    diode = net.topology is TopologyKind.PARALLEL_DIODES
    out = []
    for k, (m, a) in enumerate(zip(net.modules, net.alive())):
        if not a and not diode:
            continue  # open branch
        out.append(
            _Branch(
                index=k,
                emf=m.u_out_nominal if a else 0.0,
                drop=net.diode.v_forward if diode else 0.0,
                r=m.r_droop,
                i_max=m.i_out_max,
                alive=a,
                diode=diode,
            )
        )
    return out


def _regime_solve(branches, states, g_load):
    """Bus voltage and branch currents for a fixed regime assignment.

    Ideal (zero-droop) regulated branches pin the bus at the lowest of their
    voltages and split the remaining load current equally.
    """
    ideal = [b for b, s in zip(branches, states) if s == REG and b.ideal]
    fixed = sum(b.i_max for b, s in zip(branches, states) if s == LIM)
    if ideal:
        v_bus = min(b.e_eff for b in ideal)
    else:
        g = g_load + sum(1.0 / b.r for b, s in zip(branches, states) if s == REG)
        v_bus = (fixed + sum(b.e_eff / b.r for b, s in zip(branches, states) if s == REG)) / g
    currents = []
    for b, s in zip(branches, states):
        if s == LIM:
            currents.append(b.i_max)
        elif s == OFF or (s == REG and b.ideal):
            currents.append(0.0)
        else:
            currents.append((b.e_eff - v_bus) / b.r)
    pinned = [k for k, (b, s) in enumerate(zip(branches, states)) if s == REG and b.ideal and b.e_eff == v_bus]
    if pinned:
        share = (v_bus * g_load - sum(currents)) / len(pinned)
        for k in pinned:
            currents[k] = share
    return v_bus, currents


def _next_states(branches, states, v_bus, currents, tol):
    """Flip the single most inconsistent branch; unchanged states mean done.

    Severity is measured in amps; an ideal branch off its pinned voltage
    implies unbounded current and goes first.
    """
    worst, pick = 0.0, None
    for k, (b, s, i) in enumerate(zip(branches, states, currents)):
        want = np.inf if b.e_eff >= v_bus - tol else -np.inf
        if not b.ideal:
            want = (b.e_eff - v_bus) / b.r
        severity, target = 0.0, s
        if s == REG:
            if b.alive and (b.ideal and b.e_eff > v_bus):
                severity, target = np.inf, LIM
            elif b.alive and i > b.i_max + tol:
                severity, target = i - b.i_max, LIM
            elif b.diode and i < -tol:
                severity, target = -i, OFF
        elif s == LIM:
            if want < b.i_max - tol:
                severity, target = b.i_max - want, REG
        elif b.e_eff - v_bus > tol:
            severity, target = want, REG
        if severity > worst:
            worst, pick = severity, (k, target)
    new = list(states)
    if pick is not None:
        new[pick[0]] = pick[1]
    return new


def _parallel_point(net, branches, states, v_bus, currents, r_load, tol) -> OperatingPoint:
    n = net.n_modules
    per_i = [0.0] * n
    per_v = [0.0] * n
    conducting = [False] * n
    for b, s, i in zip(branches, states, currents):
        per_i[b.index] = i
        conducting[b.index] = s != OFF
        if s == LIM:
            per_v[b.index] = v_bus + b.drop
        elif s == OFF:
            per_v[b.index] = b.emf
        else:
            per_v[b.index] = b.emf - b.r * i
    for k, (m, a) in enumerate(zip(net.modules, net.alive())):
        if not a:
            per_v[k] = 0.0
    i_bus = v_bus / (r_load + net.r_wiring)
    return OperatingPoint(
        r_load=r_load,
        u_out=v_bus - i_bus * net.r_wiring,
        i_out=i_bus,
        i_in=0.0,
        u_in=_u_in(net),
        per_module_i=tuple(per_i),
        diode_states=tuple(conducting) if net.topology is TopologyKind.PARALLEL_DIODES else (),
        current_limited=any(
            b.alive and s != OFF and i >= b.i_max - tol for b, s, i in zip(branches, states, currents)
        ),
        per_module_v=tuple(per_v),
    )


def _kcl_residual(v_bus, currents, g_load):
    i_bus = v_bus * g_load
    return abs(sum(currents) - i_bus), max(1.0, abs(i_bus))


def _solve_parallel(net: ReceiverNetwork, r_load: float, cfg: SolverConfig) -> OperatingPoint:
    branches = _branches(net)
    g_load = 1.0 / (r_load + net.r_wiring)
    tol = cfg.residual_tol * max([1.0] + [b.i_max for b in branches])
    states = [OFF if b.blocked else REG for b in branches]
    for _ in range(cfg.max_iterations):
        v_bus, currents = _regime_solve(branches, states, g_load)
        new = _next_states(branches, states, v_bus, currents, tol)
        if new == states:
            break
        states = new
    else:
        raise NonConvergence(
            f"regime iteration did not settle after {cfg.max_iterations} passes", r_load=r_load
        )
    states, currents = _split_pinned(branches, states, v_bus, currents, g_load, tol)
    # a diode at exactly zero forward bias is reported as conducting
    for k, b in enumerate(branches):
        if states[k] == OFF and b.alive and not b.ideal and abs(b.e_eff - v_bus) <= tol * max(1.0, abs(v_bus)):
            states[k] = REG
    residual, scale = _kcl_residual(v_bus, currents, g_load)
    if residual > cfg.residual_tol * scale:
        raise NonConvergence(
            f"KCL residual {residual:.3g} above tolerance", r_load=r_load, residual=residual
        )
    return _parallel_point(net, branches, states, v_bus, currents, r_load, tol)


def _split_pinned(branches, states, v_bus, currents, g_load, tol):
    """Canonical current split between ideal branches sitting at the bus voltage.

    Such branches can share their group current in any proportion.  The
    split used is water-filling: equal shares, with branches whose limit is
    below the level held at their limit.  Every member conducts.
    """
    group = [
        k
        for k, b in enumerate(branches)
        if b.alive and b.ideal and abs(b.e_eff - v_bus) <= tol * max(1.0, abs(v_bus))
    ]
    if not group:
        return states, currents
    states, currents = list(states), list(currents)
    total = v_bus * g_load - sum(i for k, i in enumerate(currents) if k not in group)
    if branches[group[0]].diode:
        total = max(total, 0.0)
    remaining = sorted(group, key=lambda k: branches[k].i_max)
    while remaining:
        level = total / len(remaining)
        k = remaining[0]
        if branches[k].i_max < level:
            currents[k] = branches[k].i_max
            total -= currents[k]
            remaining.pop(0)
            continue
        for k in remaining:
            currents[k] = level
        break
    for k in group:
        states[k] = LIM if currents[k] >= branches[k].i_max - tol else REG
    return states, currents


# -- oracle ------------------------------------------------------------------


def _linear_subnetwork(branches, states, g_load):
    """Nodal solve for unknowns [v_bus, i_0..i_n-1] by least squares.

    The minimum-norm solution splits current equally between ideal branches
    pinned at the same voltage.
    """
    n = len(branches)
    rows, rhs = [], []
    for k, (b, s) in enumerate(zip(branches, states)):
        row = np.zeros(n + 1)
        row[1 + k] = 1.0
        if s == REG:
            row[0] = 1.0
            row[1 + k] = b.r
            rhs.append(b.e_eff)
        elif s == LIM:
            rhs.append(b.i_max)
        else:
            rhs.append(0.0)
        rows.append(row)
    kcl = np.ones(n + 1)
    kcl[0] = -g_load
    rows.append(kcl)
    rhs.append(0.0)
    a = np.array(rows)
    y = np.array(rhs)
    x, *_ = np.linalg.lstsq(a, y, rcond=None)
    currents = [0.0 if s == OFF else float(i) for s, i in zip(states, x[1:])]
    return float(x[0]), currents, float(np.max(np.abs(a @ x - y)))


def diode_state_oracle(
    network: ReceiverNetwork, r_load: float, config: SolverConfig = DEFAULT_CONFIG
) -> OperatingPoint:
    """Solve a parallel-with-diodes network by enumerating conduction states.

    All ``2**N`` diode assignments are visited, most conducting first; inside
    each, every limit assignment of the conducting branches is tried.  Among
    the assignments satisfying complementarity with the most conducting
    diodes, the one with the smallest sum of squared branch currents wins.
    """
    if network.topology is not TopologyKind.PARALLEL_DIODES:
        raise ValueError("diode_state_oracle requires a parallel-with-diodes network")
    if network.n_modules > 10:
        raise ValueError("diode_state_oracle supports at most 10 modules")
    violations = validate(network)
    if violations:
        raise InvalidNetwork(violations)
    branches = _branches(network)
    n = len(branches)
    g_load = 1.0 / (r_load + network.r_wiring)
    tol = 10 * config.residual_tol * max([1.0] + [b.e_eff for b in branches] + [b.i_max for b in branches])

    for count in range(n, -1, -1):
        candidates = []
        for on in itertools.product((True, False), repeat=n):
            if sum(on) != count or any(o and b.blocked for o, b in zip(on, branches)):
                continue
            idx = [k for k in range(n) if on[k] and branches[k].alive]
            for lim in itertools.product((False, True), repeat=len(idx)):
                states = [REG if on[k] else OFF for k in range(n)]
                for k, flag in zip(idx, lim):
                    if flag:
                        states[k] = LIM
                v_bus, currents, err = _linear_subnetwork(branches, states, g_load)
                if err <= tol and _complementary(branches, states, v_bus, currents, tol):
                    candidates.append((sum(i * i for i in currents), states, v_bus, currents))
        if candidates:
            # ideal branches pinned at one voltage admit many splits; take the
            # minimum-norm one
            _, states, v_bus, currents = min(candidates, key=lambda c: c[0])
            return _with_input(
                network, _parallel_point(network, branches, states, v_bus, currents, r_load, tol)
            )
    raise NoConsistentState(f"no consistent diode state at r_load={r_load}")


def _complementary(branches, states, v_bus, currents, tol) -> bool:
    for b, s, i in zip(branches, states, currents):
        if s == REG:
            if i < -tol or (b.alive and i > b.i_max + tol):
                return False
        elif s == LIM:
            headroom = b.e_eff - v_bus - b.r * b.i_max
            if headroom < -tol:
                return False
        elif b.e_eff - v_bus > tol:
            return False
    return True
