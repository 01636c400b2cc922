"""Cylinder geometry."""

from lueroth.core.cylinder.geometry import (
    Cylinder,
    Parity,
    ball_containment_check,
    cylinder_interval,
    cylinder_measure,
    log_cylinder_measure,
    numeric_slack,
    resolving,
)

__all__ = [
    "Cylinder",
    "Parity",
    "ball_containment_check",
    "cylinder_interval",
    "cylinder_measure",
    "log_cylinder_measure",
    "numeric_slack",
    "resolving",
]
