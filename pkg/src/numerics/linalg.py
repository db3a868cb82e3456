from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from src.config import RANK_TOLERANCE
from src.utils.errors import DimensionError

# Dense real matrix, float64, always two-dimensional.
Mat = np.ndarray


def as_mat(values) -> Mat:
    """Coerce nested sequences or arrays into a 2-D float64 matrix."""
    mat = np.array(values, dtype=float)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise DimensionError(f"Expected a non-empty 2-D matrix, got shape {mat.shape}")
    return mat


def mat_mul(a: Mat, b: Mat) -> Mat:
    """Matrix product with an explicit shape check."""
    a = as_mat(a)
    b = as_mat(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"Cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def rank(m: Mat, tol: Optional[float] = None) -> int:
    """Numerical rank by row elimination with partial pivoting.

    A pivot counts when its magnitude exceeds tol times the largest absolute
    entry of m (or tol itself for the zero matrix).

    Args:
        m: Matrix to inspect. Not modified.
        tol: Relative pivot threshold. Defaults to RANK_TOLERANCE.
    """
    tol = RANK_TOLERANCE if tol is None else tol
    if tol <= 0:
        raise ValueError("Rank tolerance must be positive")

    work = as_mat(m).copy()
    rows, cols = work.shape
    scale = np.max(np.abs(work))
    threshold = tol * (scale if scale > 0 else 1.0)

    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        best = pivot_row + int(np.argmax(np.abs(work[pivot_row:, col])))
        if abs(work[best, col]) <= threshold:
            continue
        if best != pivot_row:
            work[[pivot_row, best]] = work[[best, pivot_row]]
        factors = work[pivot_row + 1:, col] / work[pivot_row, col]
        work[pivot_row + 1:, col:] -= np.outer(factors, work[pivot_row, col:])
        pivot_row += 1

    return pivot_row


def characteristic_poly(m: Mat) -> Polynomial:
    """det(sI - m) by the Leverrier-Faddeev recursion, ascending coefficients."""
    a = as_mat(m)
    n = a.shape[0]
    if a.shape[1] != n:
        raise DimensionError(f"Characteristic polynomial needs a square matrix, got {a.shape}")

    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    identity = np.eye(n)
    aux = np.zeros((n, n))
    for k in range(1, n + 1):
        aux = a @ aux + coeffs[n - k + 1] * identity
        coeffs[n - k] = -np.trace(a @ aux) / k

    return Polynomial(coeffs)
