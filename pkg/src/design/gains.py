import math
import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.numerics.linalg import Mat
from src.utils.errors import GainFileError

GAIN_COUNT = 12

# (input row, state column) of g1..g12 in the 4x12 gain matrix.
GAIN_SLOTS: Tuple[Tuple[int, int], ...] = (
    (0, 2), (0, 5),  # u1: z', z
    (1, 1), (1, 4), (1, 6), (1, 9),  # u2: y', y, wx, phi
    (2, 0), (2, 3), (2, 7), (2, 10),  # u3: x', x, wy, theta
    (3, 8), (3, 11),  # u4: wz, psi
)

# Gains whose sign is negative in every stabilising solution (pitch x', x).
NEGATIVE_GAINS = (6, 7)


@dataclass(frozen=True)
class GainVector:
    """The twelve scalar gains g1..g12 (stored 0-based)."""

    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != GAIN_COUNT:
            raise ValueError(f"Expected {GAIN_COUNT} gains, got {len(values)}")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("Gains must be finite")
        object.__setattr__(self, "values", values)

    def __getitem__(self, index: int) -> float:
        return self.values[index]

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return GAIN_COUNT

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def has_expected_signs(self) -> bool:
        """g7, g8 negative and every other gain positive."""
        return all(
            (v < 0) if i in NEGATIVE_GAINS else (v > 0)
            for i, v in enumerate(self.values)
        )

    def save(self, path) -> None:
        """Write one gain per line, g1 first, exact to 17 significant digits."""
        directory = os.path.dirname(os.fspath(path))
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w") as file:
            for value in self.values:
                file.write(f"{value:.17g}\n")

    @classmethod
    def load(cls, path) -> "GainVector":
        if not os.path.exists(path):
            raise GainFileError(f"Gain file not found: {path}")
        try:
            with open(path, "r") as file:
                lines = [line.strip() for line in file if line.strip()]
            return cls(tuple(float(line) for line in lines))
        except (OSError, ValueError) as e:
            raise GainFileError(f"Could not read gain file {path}: {e}")


def assemble_gain_matrix(gains: GainVector) -> Mat:
    """Embed g1..g12 into the structured 4x12 gain matrix; every other entry is zero."""
    matrix = np.zeros((4, 12))
    for value, (row, col) in zip(gains, GAIN_SLOTS):
        matrix[row, col] = value
    return matrix


PAPER_GAINS = GainVector((
    32.8, 608.0,
    394.5, 862.9, 47.1, 657.9,
    -397.8, -1124.2, 39.4, 552.7,
    30.1, 623.4,
))

PAPER_POLES: Tuple[complex, ...] = (
    complex(-28.32, 0.0),
    complex(-20.36, 0.0),
    complex(-6.47, 0.0),
    complex(-6.28, 0.0),
    complex(-16.40, 18.41),
    complex(-16.40, -18.41),
    complex(-15.05, 19.92),
    complex(-15.05, -19.92),
    complex(-6.29, 6.65),
    complex(-6.29, -6.65),
    complex(-6.25, 2.92),
    complex(-6.25, -2.92),
)
