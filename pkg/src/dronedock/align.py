"""Passive alignment geometry of the three-sided frustum.

The receiving cap slides over the transmitting frustum.  Sides are inclined
by ``slope_angle_deg`` from the vertical axis; a coil sits at mid-height on
each side.  Residual gaps for imperfect seating come from a rigid-body model:
the inner frustum is translated and yawed, and the cap settles on it by
rising until nothing interpenetrates.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateInput
from .model import FrustumSpec, frustum_violations

__all__ = [
    "min_slope_angle",
    "self_locking_check",
    "snap_yaw",
    "misalignment_to_gaps",
    "face_normals",
    "inradius",
    "align_report",
]

SYMMETRY_DEG = 120.0
_BOUNDARY_TOL_DEG = 1e-10


def min_slope_angle(mu: float) -> float:
    """Smallest side inclination (degrees) that avoids self-locking."""
    if not mu >= 0:
        raise DegenerateInput(f"friction coefficient must be >= 0, got {mu}")
    return math.degrees(math.atan(mu))


def self_locking_check(frustum: FrustumSpec) -> bool:
    """True when landing and take-off are unobstructed (alpha >= arctan(mu)).

    The boundary is inclusive; a 1e-10 degree allowance absorbs the rounding
    of ``atan(tan(alpha))``.
    """
    violations = frustum_violations(frustum)
    if violations:
        raise DegenerateInput("; ".join(violations))
    return frustum.slope_angle_deg >= min_slope_angle(frustum.mu) - _BOUNDARY_TOL_DEG


def snap_yaw(approach_yaw: float) -> float:
    """Residual yaw in [-60, 60) after the 3-fold symmetry of the frustum."""
    half = SYMMETRY_DEG / 2
    return (approach_yaw + half) % SYMMETRY_DEG - half


def face_normals(face_count: int = 3) -> np.ndarray:
    """Horizontal outward unit normals, first face facing +x."""
    phi = 2 * np.pi * np.arange(face_count) / face_count
    return np.column_stack([np.cos(phi), np.sin(phi)])


def inradius(frustum: FrustumSpec, z: float) -> float:
    """Inradius of the cross-section at height ``z`` above the base (mm)."""
    n = frustum.face_count
    r_base = frustum.base_size / (2 * math.tan(math.pi / n))
    return r_base - z * math.tan(math.radians(frustum.slope_angle_deg))


def misalignment_to_gaps(frustum: FrustumSpec, lateral_offset, yaw: float) -> np.ndarray:
    """Normal distance (mm) between facing coil planes on each side.

    ``lateral_offset`` is the (dx, dy) displacement of the inner frustum in
    mm and ``yaw`` its rotation in degrees, both relative to perfect seating.
    """
    if frustum.face_count != 3:
        raise DegenerateInput("gap model supports three-sided frustums only")
    if abs(yaw) > SYMMETRY_DEG / 2:
        raise DegenerateInput("yaw must lie within [-60, 60] degrees; apply snap_yaw first")
    d = np.asarray(lateral_offset, dtype=float)
    if np.hypot(*d) > frustum.base_size / 2:
        raise DegenerateInput("lateral offset exceeds half the base size")

    alpha = math.radians(frustum.slope_angle_deg)
    psi = math.radians(abs(yaw))
    a_base = inradius(frustum, 0.0)
    a_coil = inradius(frustum, frustum.height / 2)

    push = face_normals(3) @ d
    # a yawed triangle reaches 2*a*cos(60deg - |yaw|) along each side normal;
    # the bottom edge protrudes most.  Expanded so yaw 0 gives exactly 0.
    corner = a_base * (math.cos(psi) - 1 + math.sqrt(3) * math.sin(psi))
    lift = max(0.0, push.max() + corner)  # horizontal clearance the rise buys
    clearance = lift - push + a_coil * (1 - math.cos(psi))
    return clearance * math.cos(alpha)


def align_report(frustum: FrustumSpec, lateral_offset=(0.0, 0.0), yaw: float = 0.0, gap_max: float = 10.0) -> dict:
    """Summary consumed by the ``align`` command.

    The rotational adapter takes up the residual yaw, so gaps are computed
    for the lateral offset alone; the residual itself is reported.
    """
    gaps = misalignment_to_gaps(frustum, lateral_offset, 0.0)
    return {
        "alpha_deg": frustum.slope_angle_deg,
        "mu": frustum.mu,
        "alpha_min_deg": min_slope_angle(frustum.mu),
        "self_locking_ok": self_locking_check(frustum),
        "gaps_mm": [float(g) for g in gaps],
        "charge_feasible": bool(np.all(gaps <= gap_max)),
        "residual_yaw_deg": snap_yaw(yaw),
    }
