from src.vehicle.dynamics import (
    BodyDisturbance,
    RigidState,
    RotorSpeeds,
    linearized_ab,
    nonlinear_deriv,
    rotor_aggregates,
    state_derivative,
)
from src.vehicle.kinematics import euler_rates, rotation_inertial_to_body, wrap_angle
from src.vehicle.mixer import aggregates_from_inputs, inputs_from_aggregates, mixer
from src.vehicle.params import VehicleParams, hover_rotor_speed

__all__ = [
    "BodyDisturbance",
    "RigidState",
    "RotorSpeeds",
    "VehicleParams",
    "aggregates_from_inputs",
    "euler_rates",
    "hover_rotor_speed",
    "inputs_from_aggregates",
    "linearized_ab",
    "mixer",
    "nonlinear_deriv",
    "rotation_inertial_to_body",
    "rotor_aggregates",
    "state_derivative",
    "wrap_angle",
]
