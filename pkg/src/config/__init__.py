import os
from dotenv import load_dotenv

# Load environment variables from a .env file
load_dotenv()

# Simulation timing
DT_CONTROL = float(os.getenv("QUAD_DT_CONTROL", "0.01"))  # Control update period, s
DT_PHYSICS = float(os.getenv("QUAD_DT_PHYSICS", "0.001"))  # RK4 step, s

# Numerics
RANK_TOLERANCE = float(os.getenv("QUAD_RANK_TOLERANCE", "1e-9"))  # Relative pivot threshold
GIMBAL_LIMIT_DEG = float(os.getenv("QUAD_GIMBAL_LIMIT_DEG", "85"))  # Pitch guard

# Output
OUTPUT_DIRECTORY = os.getenv("QUAD_OUTPUT_DIRECTORY", "output")
CSV_SIGNIFICANT_DIGITS = int(os.getenv("QUAD_CSV_SIGNIFICANT_DIGITS", "9"))

# App Settings
LOG_LEVEL = os.getenv("QUAD_LOG_LEVEL", "INFO").upper()

# Vehicle defaults for the reference airframe
DEFAULT_VEHICLE = {
    "L": 0.27,
    "m": 1.4,
    "k": 11e-6,
    "b": 1.1e-6,
    "Ix": 8.1e-3,
    "Iy": 8.1e-3,
    "Iz": 14.2e-3,
    "omega_max": 637.75,
    "g": 9.81,
}

# Tracking law defaults
TRACKER_K1 = 1.0  # 1/s
TRACKER_K2 = 1.0  # 1/s
SPEED_ERROR_LIMIT = 1.0  # m/s
RATE_ERROR_LIMIT = 3.14  # rad/s

# Pole region defaults
POLE_REAL_MIN = -30.0
POLE_REAL_MAX = -6.0
