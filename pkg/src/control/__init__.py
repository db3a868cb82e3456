from src.control.controller import (
    ControlOutput,
    Controller,
    SaturationFlags,
    Setpoint,
    TrackerConfig,
    control_step,
    hover_input,
    tracking_error,
)

__all__ = [
    "ControlOutput",
    "Controller",
    "SaturationFlags",
    "Setpoint",
    "TrackerConfig",
    "control_step",
    "hover_input",
    "tracking_error",
]
