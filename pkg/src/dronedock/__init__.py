"""Behavioural simulator of a three-module wireless drone docking station."""

from .align import min_slope_angle, misalignment_to_gaps, self_locking_check, snap_yaw
from .battery import BatterySpec, estimate_charge_time
from .calibration import CalibrationResult, CalibrationTarget, calibrate, default_calibration_target
from .errors import (
    CalibrationInfeasible,
    DegenerateInput,
    DockError,
    EmptySweep,
    InvalidNetwork,
    NoConsistentState,
    NonConvergence,
)
from .model import (
    DiodeSpec,
    FrustumSpec,
    ModuleSpec,
    OperatingPoint,
    ReceiverNetwork,
    TopologyKind,
    default_module_spec,
    default_network,
    validate,
)
from .solver import SolverConfig, diode_state_oracle, input_power, module_terminal_voltage, solve_operating_point
from .sweep import (
    SweepConfig,
    SweepResult,
    compare_topologies,
    compute_metrics,
    default_sweep_config,
    max_power_point,
    run_sweep,
)

__version__ = "0.1.0"
